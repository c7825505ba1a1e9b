#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ctimine::testing {

// Random keyword of length 3..15 and a copy with 0..4 random edits. The
// alphabet is small so substitutions often land on the original letter and
// edit distance is frequently below the edit count.
inline std::vector<std::pair<std::string, std::string>> fuzz_pairs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> letter(0, 5);
  std::uniform_int_distribution<std::size_t> length(3, 15);
  std::uniform_int_distribution<int> edits(0, 4);
  std::uniform_int_distribution<int> op(0, 2);

  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::string keyword;
    const std::size_t len = length(rng);
    for (std::size_t i = 0; i < len; ++i) keyword += static_cast<char>('a' + letter(rng));
    std::string token = keyword;
    for (int e = edits(rng); e > 0; --e) {
      const int kind = token.empty() ? 0 : op(rng);
      if (kind == 0) {
        std::uniform_int_distribution<std::size_t> at(0, token.size());
        token.insert(token.begin() + static_cast<std::ptrdiff_t>(at(rng)), static_cast<char>('a' + letter(rng)));
      } else {
        std::uniform_int_distribution<std::size_t> at(0, token.size() - 1);
        const std::size_t i = at(rng);
        if (kind == 1) token.erase(i, 1);
        else token[i] = static_cast<char>('a' + letter(rng));
      }
    }
    pairs.emplace_back(std::move(keyword), std::move(token));
  }
  return pairs;
}

}  // namespace ctimine::testing
