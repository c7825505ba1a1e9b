#include "ctimine/aho_corasick.hpp"

#include <algorithm>
#include <queue>

namespace ctimine::lexicon {

AhoCorasick::AhoCorasick(const std::vector<std::string>& patterns) {
  // Byte classes: 0 for bytes absent from every pattern.
  bool used[256] = {};
  for (const auto& p : patterns) {
    for (unsigned char c : p) used[c] = true;
  }
  classes_ = 1;
  for (int c = 0; c < 256; ++c) byte_class_[c] = used[c] ? static_cast<std::uint16_t>(classes_++) : 0;

  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> trie(classes_, kNone);
  std::vector<std::vector<std::uint32_t>> out(1);
  for (std::uint32_t id = 0; id < patterns.size(); ++id) {
    std::uint32_t state = 0;
    for (unsigned char c : patterns[id]) {
      auto& next = trie[state * classes_ + byte_class_[c]];
      if (next == kNone) {
        next = static_cast<std::uint32_t>(out.size());
        out.emplace_back();
        trie.resize(trie.size() + classes_, kNone);
      }
      state = trie[state * classes_ + byte_class_[c]];
    }
    out[state].push_back(id);
    lengths_.push_back(patterns[id].size());
  }

  // Breadth-first failure links, folded into a complete transition table.
  const std::size_t states = out.size();
  std::vector<std::uint32_t> fail(states, 0);
  delta_.assign(states * classes_, 0);
  std::queue<std::uint32_t> queue;
  for (std::uint32_t c = 0; c < classes_; ++c) {
    const auto next = trie[c];
    if (next != kNone) {
      delta_[c] = next;
      queue.push(next);
    }
  }
  while (!queue.empty()) {
    const auto state = queue.front();
    queue.pop();
    auto& own = out[state];
    const auto& inherited = out[fail[state]];
    own.insert(own.end(), inherited.begin(), inherited.end());
    for (std::uint32_t c = 0; c < classes_; ++c) {
      const auto next = trie[state * classes_ + c];
      if (next != kNone) {
        fail[next] = delta_[fail[state] * classes_ + c];
        delta_[state * classes_ + c] = next;
        queue.push(next);
      } else {
        delta_[state * classes_ + c] = delta_[fail[state] * classes_ + c];
      }
    }
  }

  out_begin_.reserve(states + 1);
  for (auto& list : out) {
    out_begin_.push_back(static_cast<std::uint32_t>(outputs_.size()));
    std::sort(list.begin(), list.end());
    outputs_.insert(outputs_.end(), list.begin(), list.end());
  }
  out_begin_.push_back(static_cast<std::uint32_t>(outputs_.size()));
}

std::vector<AhoCorasick::Match> AhoCorasick::find_all(std::string_view text) const {
  std::vector<Match> matches;
  scan(text, [&](const Match& m) { matches.push_back(m); });
  return matches;
}

}  // namespace ctimine::lexicon
