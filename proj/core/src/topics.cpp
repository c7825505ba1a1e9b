#include "ctimine/topics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <unordered_map>

#include "ctimine/common.hpp"
#include "ctimine/hashing.hpp"
#include "ctimine/jsonl.hpp"
#include "ctimine/parallel.hpp"

namespace ctimine::topics {

namespace {

std::string join_ids(const std::vector<std::string>& ids, std::size_t limit = 20) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > limit) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// EmbeddingSet

EmbeddingSet::EmbeddingSet(std::size_t dim) : dim_(dim) {}

std::optional<std::size_t> EmbeddingSet::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

void EmbeddingSet::add(std::string id, std::span<const double> values) {
  if (ids_.empty() && dim_ == 0) dim_ = values.size();
  if (values.size() != dim_ || dim_ == 0) {
    throw DataError("embedding \"" + id + "\" has dimension " + std::to_string(values.size()) +
                    ", expected " + std::to_string(dim_));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("embedding \"" + id + "\" has a non-finite component");
  }
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), values.begin(), values.end());
}

void EmbeddingSet::finalize() {
  std::vector<std::size_t> order(ids_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids_[a] < ids_[b]; });
  std::vector<std::string> ids;
  std::vector<double> data;
  ids.reserve(ids_.size());
  data.reserve(data_.size());
  for (auto row : order) {
    if (!ids.empty() && ids.back() == ids_[row]) throw DataError("duplicate embedding id \"" + ids.back() + "\"");
    ids.push_back(std::move(ids_[row]));
    data.insert(data.end(), data_.begin() + row * dim_, data_.begin() + (row + 1) * dim_);
  }
  ids_ = std::move(ids);
  data_ = std::move(data);
}

EmbeddingSet EmbeddingSet::select(const std::vector<std::string>& ids) const {
  EmbeddingSet out(dim_);
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    auto row = find(id);
    if (!row) {
      missing.push_back(id);
      continue;
    }
    out.ids_.push_back(id);
    auto v = vector(*row);
    out.data_.insert(out.data_.end(), v.begin(), v.end());
  }
  if (!missing.empty()) throw DataError("no embedding for ids: " + join_ids(missing));
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// Embedding

std::vector<double> embed_hashing(std::span<const std::string> tokens, std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw ConfigError("embedding dimension must be at least 2");
  std::vector<double> v(dim, 0.0);
  for (const auto& token : tokens) {
    const auto h = hashing::seeded_hash(token, seed);
    const auto bucket = h % dim;
    const bool negative = (hashing::splitmix64(h ^ seed) >> 63) != 0;
    v[bucket] += negative ? -1.0 : 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

EmbeddingSet embed_items(const std::vector<preprocess::PreprocessedItem>& items, std::size_t dim,
                         std::uint64_t seed, unsigned threads) {
  std::vector<std::vector<double>> rows(items.size());
  parallel_for_chunks(items.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = embed_hashing(items[i].tokens, dim, seed);
  });
  EmbeddingSet set(dim);
  for (std::size_t i = 0; i < items.size(); ++i) set.add(items[i].id, rows[i]);
  set.finalize();
  return set;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) {
  EmbeddingSet set;
  std::vector<double> values;
  jsonl::for_each_record(path, [&](std::size_t number, const nlohmann::json& record) {
    const auto& vec = record.at("vec");
    if (!vec.is_array()) throw DataError(path.string() + ":" + std::to_string(number) + ": \"vec\" is not an array");
    values.clear();
    for (const auto& x : vec) {
      if (!x.is_number()) throw DataError(path.string() + ":" + std::to_string(number) + ": non-numeric component");
      values.push_back(x.get<double>());
    }
    try {
      set.add(record.at("id").get<std::string>(), values);
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  });
  set.finalize();
  return set;
}

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  for (std::size_t r = 0; r < set.size(); ++r) {
    auto v = set.vector(r);
    nlohmann::json record = {{"id", set.ids()[r]}, {"vec", std::vector<double>(v.begin(), v.end())}};
    out << jsonl::dump(record) << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// Random projection

namespace {

// Box-Muller over mt19937_64 so the matrix is identical on every platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

EmbeddingSet reduce(const EmbeddingSet& set, std::size_t target_dim, std::uint64_t seed) {
  if (target_dim == 0 || target_dim >= set.dim()) {
    throw ConfigError("target dimension " + std::to_string(target_dim) +
                      " must be positive and below " + std::to_string(set.dim()));
  }
  const std::size_t dim = set.dim();
  std::vector<double> matrix(target_dim * dim);
  GaussianStream gauss(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(target_dim));
  for (double& m : matrix) m = gauss.next() * scale;

  EmbeddingSet out(target_dim);
  std::vector<double> row(target_dim);
  for (std::size_t r = 0; r < set.size(); ++r) {
    auto v = set.vector(r);
    for (std::size_t k = 0; k < target_dim; ++k) {
      double acc = 0.0;
      const double* m = matrix.data() + k * dim;
      for (std::size_t j = 0; j < dim; ++j) acc += m[j] * v[j];
      row[k] = acc;
    }
    out.add(set.ids()[r], row);
  }
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// Density clustering

int TopicAssignment::topic_count() const noexcept {
  int max = -1;
  for (int t : topics) max = std::max(max, t);
  return max + 1;
}

std::optional<int> TopicAssignment::topic_of(std::string_view id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return topics[static_cast<std::size_t>(it - ids.begin())];
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // root is always the lowest index
  }

 private:
  std::vector<std::size_t> parent_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    d += diff * diff;
  }
  return d;
}

}  // namespace

TopicAssignment cluster_density(const EmbeddingSet& set, const DensityParams& params, unsigned threads) {
  if (!(params.eps > 0.0)) throw ConfigError("eps must be positive");
  if (params.min_samples < 1) throw ConfigError("min_samples must be at least 1");

  TopicAssignment result;
  const std::size_t n = set.size();
  result.ids = set.ids();
  result.topics.assign(n, kOutlier);
  if (n == 0) return result;

  const double eps2 = params.eps * params.eps;
  std::vector<char> core(n, 0);
  parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t count = 0;
      for (std::size_t j = 0; j < n && count < params.min_samples; ++j) {
        if (squared_distance(set.vector(i), set.vector(j)) <= eps2) ++count;
      }
      core[i] = count >= params.min_samples;
    }
  });

  DisjointSets components(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (core[j] && squared_distance(set.vector(i), set.vector(j)) <= eps2) components.unite(i, j);
    }
  }

  // Component root (lowest core index) for every clustered point.
  std::vector<std::size_t> root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) root[i] = components.find(i);
  }
  parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (core[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (core[j] && squared_distance(set.vector(i), set.vector(j)) <= eps2) {
          root[i] = root[j];
          break;
        }
      }
    }
  });

  std::unordered_map<std::size_t, std::size_t> sizes;
  std::unordered_map<std::size_t, std::size_t> lowest;
  for (std::size_t i = 0; i < n; ++i) {
    if (root[i] == n) continue;
    ++sizes[root[i]];
    auto [it, inserted] = lowest.try_emplace(root[i], i);
    if (!inserted) it->second = std::min(it->second, i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> clusters;  // (lowest member, root)
  for (const auto& [r, size] : sizes) {
    if (size >= params.min_cluster_size) clusters.push_back({lowest[r], r});
  }
  std::sort(clusters.begin(), clusters.end());
  std::unordered_map<std::size_t, int> topic_of_root;
  for (std::size_t t = 0; t < clusters.size(); ++t) topic_of_root[clusters[t].second] = static_cast<int>(t);
  for (std::size_t i = 0; i < n; ++i) {
    if (root[i] == n) continue;
    if (auto it = topic_of_root.find(root[i]); it != topic_of_root.end()) result.topics[i] = it->second;
  }
  return result;
}

void write_assignments(const TopicAssignment& assignment, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out << jsonl::dump({{"id", assignment.ids[i]}, {"topic", assignment.topics[i]}}) << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

TopicAssignment load_assignments(const std::filesystem::path& path) {
  std::vector<std::pair<std::string, int>> rows;
  jsonl::for_each_record(path, [&](std::size_t, const nlohmann::json& record) {
    rows.emplace_back(record.at("id").get<std::string>(), record.at("topic").get<int>());
  });
  std::sort(rows.begin(), rows.end());
  TopicAssignment out;
  std::vector<char> seen;
  for (auto& [id, topic] : rows) {
    if (!out.ids.empty() && out.ids.back() == id) throw DataError("duplicate assignment for \"" + id + "\"");
    if (topic < kOutlier) throw DataError("invalid topic " + std::to_string(topic) + " for \"" + id + "\"");
    if (topic >= 0) {
      if (static_cast<std::size_t>(topic) >= seen.size()) seen.resize(static_cast<std::size_t>(topic) + 1, 0);
      seen[static_cast<std::size_t>(topic)] = 1;
    }
    out.ids.push_back(std::move(id));
    out.topics.push_back(topic);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw DataError(path.string() + ": topic ids are not contiguous");
  }
  return out;
}

// ---------------------------------------------------------------------------
// c-TF-IDF

WeightTable ctfidf(const TopicAssignment& assignment, const std::vector<preprocess::PreprocessedItem>& items) {
  std::unordered_map<std::string_view, const preprocess::PreprocessedItem*> by_id;
  for (const auto& item : items) by_id.emplace(item.id, &item);

  const int topic_count = assignment.topic_count();
  WeightTable table;
  if (topic_count <= 0) return table;

  std::vector<std::map<std::string, double>> tf(static_cast<std::size_t>(topic_count));
  std::vector<std::size_t> sizes(static_cast<std::size_t>(topic_count), 0);
  std::map<std::string, double> total;
  double tokens = 0.0;
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int topic = assignment.topics[i];
    if (topic == kOutlier) continue;
    auto it = by_id.find(assignment.ids[i]);
    if (it == by_id.end()) {
      missing.push_back(assignment.ids[i]);
      continue;
    }
    ++sizes[static_cast<std::size_t>(topic)];
    for (const auto& token : it->second->tokens) {
      tf[static_cast<std::size_t>(topic)][token] += 1.0;
      total[token] += 1.0;
      tokens += 1.0;
    }
  }
  if (!missing.empty()) throw DataError("assigned ids without items: " + join_ids(missing));

  const double average = tokens / static_cast<double>(topic_count);
  for (int t = 0; t < topic_count; ++t) {
    std::map<std::string, double> row;
    for (const auto& [term, count] : tf[static_cast<std::size_t>(t)]) {
      row.emplace(term, count * std::log(1.0 + average / total.at(term)));
    }
    table.topics.push_back(t);
    table.sizes.push_back(sizes[static_cast<std::size_t>(t)]);
    table.weights.push_back(std::move(row));
  }
  return table;
}

std::vector<TopicRepresentation> top_terms(const WeightTable& table, std::size_t n) {
  if (n < 1) throw ConfigError("top-terms count must be at least 1");
  std::vector<TopicRepresentation> reps;
  for (std::size_t t = 0; t < table.topics.size(); ++t) {
    TopicRepresentation rep;
    rep.topic = table.topics[t];
    rep.size = table.sizes[t];
    rep.label = default_label(rep.topic);
    rep.terms.assign(table.weights[t].begin(), table.weights[t].end());
    std::sort(rep.terms.begin(), rep.terms.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (rep.terms.size() > n) rep.terms.resize(n);
    reps.push_back(std::move(rep));
  }
  return reps;
}

std::string default_label(int topic) { return "topic-" + std::to_string(topic); }

std::map<int, std::string> load_label_map(const std::filesystem::path& path) {
  auto in = jsonl::open_input(path);
  nlohmann::json object;
  try {
    object = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!object.is_object()) throw DataError(path.string() + ": label map must be a JSON object");
  std::map<int, std::string> map;
  for (const auto& [key, value] : object.items()) {
    std::size_t consumed = 0;
    int topic = 0;
    try {
      topic = std::stoi(key, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != key.size() || !value.is_string()) {
      throw DataError(path.string() + ": invalid label map entry \"" + key + "\"");
    }
    map[topic] = value.get<std::string>();
  }
  return map;
}

std::vector<std::string> apply_labels(std::vector<TopicRepresentation>& reps,
                                      const std::map<int, std::string>& label_map) {
  std::vector<std::string> warnings;
  for (auto& rep : reps) rep.label = default_label(rep.topic);
  for (const auto& [topic, label] : label_map) {
    auto it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) { return r.topic == topic; });
    if (it == reps.end()) {
      warnings.push_back("label for unknown topic " + std::to_string(topic) + " ignored");
      continue;
    }
    it->label = label;
  }
  return warnings;
}

void write_topics(const std::vector<TopicRepresentation>& reps, const std::filesystem::path& path) {
  // One topic object per line inside a JSON array.
  auto out = jsonl::open_output(path);
  out << '[';
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& rep = reps[i];
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [word, weight] : rep.terms) terms.push_back({word, weight});
    nlohmann::json entry = {{"topic", rep.topic}, {"size", rep.size}, {"label", rep.label}, {"terms", std::move(terms)}};
    out << (i ? ",\n " : "\n ") << jsonl::dump(entry);
  }
  out << (reps.empty() ? "]\n" : "\n]\n");
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<TopicRepresentation> load_topics(const std::filesystem::path& path) {
  auto in = jsonl::open_input(path);
  std::vector<TopicRepresentation> reps;
  try {
    for (const auto& entry : nlohmann::json::parse(in)) {
      TopicRepresentation rep;
      rep.topic = entry.at("topic").get<int>();
      rep.size = entry.at("size").get<std::size_t>();
      rep.label = entry.value("label", default_label(rep.topic));
      for (const auto& pair : entry.at("terms")) {
        rep.terms.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<double>());
      }
      reps.push_back(std::move(rep));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return reps;
}

}  // namespace ctimine::topics
