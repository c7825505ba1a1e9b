#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctimine/preprocess.hpp"

namespace ctimine::topics {

// Row-major set of equal-length vectors keyed by id, sorted by id.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  explicit EmbeddingSet(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::span<const double> vector(std::size_t row) const {
    return {data_.data() + row * dim_, dim_};
  }
  std::optional<std::size_t> find(std::string_view id) const;

  // Throws DataError on a duplicate id, wrong length or non-finite value.
  // Rows may arrive in any order; call finalize() before reading.
  void add(std::string id, std::span<const double> values);
  void finalize();

  // Rows restricted to `ids` (sorted). Throws DataError listing absent ids.
  EmbeddingSet select(const std::vector<std::string>& ids) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> data_;
};

std::vector<double> embed_hashing(std::span<const std::string> tokens, std::size_t dim,
                                  std::uint64_t seed);

EmbeddingSet embed_items(const std::vector<preprocess::PreprocessedItem>& items, std::size_t dim,
                         std::uint64_t seed, unsigned threads = 1);

EmbeddingSet load_embeddings(const std::filesystem::path& path);
void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path);

// Seeded Gaussian random projection scaled by 1/sqrt(target_dim).
EmbeddingSet reduce(const EmbeddingSet& set, std::size_t target_dim, std::uint64_t seed);

inline constexpr int kOutlier = -1;

// id -> topic, sorted by id. Topics are 0..T-1 plus kOutlier.
struct TopicAssignment {
  std::vector<std::string> ids;
  std::vector<int> topics;

  std::size_t size() const noexcept { return ids.size(); }
  int topic_count() const noexcept;
  std::optional<int> topic_of(std::string_view id) const;
};

struct DensityParams {
  double eps = 0.5;
  std::size_t min_samples = 100;
  // Clusters with fewer members become outliers.
  std::size_t min_cluster_size = 1;
};

// DBSCAN with Euclidean distance; a point's neighbourhood includes itself.
// Core components form clusters; a border point joins the cluster of its
// lowest-index core neighbour. Clusters are numbered by lowest member id.
TopicAssignment cluster_density(const EmbeddingSet& set, const DensityParams& params,
                                unsigned threads = 1);

void write_assignments(const TopicAssignment& assignment, const std::filesystem::path& path);
TopicAssignment load_assignments(const std::filesystem::path& path);

// topic -> term -> weight, sparse, terms sorted.
struct WeightTable {
  std::vector<int> topics;
  std::vector<std::size_t> sizes;  // items per topic
  std::vector<std::map<std::string, double>> weights;
  bool empty() const noexcept { return topics.empty(); }
};

// Class-based TF-IDF: W(t,c) = tf(t,c) * ln(1 + A / f(t)) where A is the mean
// token count per class and f(t) the total count of t over all classes.
// Outliers never contribute.
WeightTable ctfidf(const TopicAssignment& assignment,
                   const std::vector<preprocess::PreprocessedItem>& items);

struct TopicRepresentation {
  int topic = 0;
  std::size_t size = 0;
  std::vector<std::pair<std::string, double>> terms;
  std::string label;
};

inline constexpr std::size_t kDefaultTopTerms = 15;

std::vector<TopicRepresentation> top_terms(const WeightTable& table,
                                           std::size_t n = kDefaultTopTerms);

std::string default_label(int topic);

// JSON object {"<topic>": "label", ...}. Unknown topic ids produce warnings.
std::map<int, std::string> load_label_map(const std::filesystem::path& path);
std::vector<std::string> apply_labels(std::vector<TopicRepresentation>& reps,
                                      const std::map<int, std::string>& label_map);

void write_topics(const std::vector<TopicRepresentation>& reps, const std::filesystem::path& path);
std::vector<TopicRepresentation> load_topics(const std::filesystem::path& path);

}  // namespace ctimine::topics
