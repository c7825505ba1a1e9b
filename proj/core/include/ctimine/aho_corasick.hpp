#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ctimine::lexicon {

// Byte-level Aho-Corasick automaton with a dense transition table over the
// bytes that occur in patterns; every other byte maps to a shared class.
class AhoCorasick {
 public:
  struct Match {
    std::uint32_t pattern = 0;
    std::size_t end = 0;  // one past the last matched byte
  };

  AhoCorasick() = default;
  explicit AhoCorasick(const std::vector<std::string>& patterns);

  std::size_t pattern_count() const noexcept { return lengths_.size(); }
  std::size_t pattern_length(std::uint32_t id) const { return lengths_[id]; }

  // Reports every (possibly overlapping) occurrence in text order.
  template <typename Fn>
  void scan(std::string_view text, Fn&& on_match) const {
    if (lengths_.empty()) return;
    std::uint32_t state = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      state = delta_[state * classes_ + byte_class_[static_cast<unsigned char>(text[i])]];
      for (std::uint32_t o = out_begin_[state]; o < out_begin_[state + 1]; ++o) {
        on_match(Match{outputs_[o], i + 1});
      }
    }
  }

  std::vector<Match> find_all(std::string_view text) const;

 private:
  std::uint32_t classes_ = 1;
  std::uint16_t byte_class_[256] = {};
  std::vector<std::uint32_t> delta_;
  std::vector<std::uint32_t> out_begin_;
  std::vector<std::uint32_t> outputs_;
  std::vector<std::size_t> lengths_;
};

}  // namespace ctimine::lexicon
