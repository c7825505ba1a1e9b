#pragma once

#include <random>
#include <string>
#include <vector>

namespace ctimine::bench {

inline const std::vector<std::string>& words() {
  static const std::vector<std::string> w = {
      "garden", "river", "morning", "coffee", "window", "market", "yellow", "people", "table", "winter",
      "summer", "music", "little", "bright", "forest", "bridge", "letter", "pencil", "orange", "travel",
      "friend", "family", "simple", "happy", "yesterday", "tomorrow", "evening", "silver", "planet", "garage"};
  return w;
}

// ~50-word texts; roughly one in twenty words is a keyword variant and one
// text in ten carries an IOC.
inline std::vector<std::string> texts(std::size_t n, std::uint64_t seed = 1) {
  static const std::vector<std::string> extras = {"passwords", "exploits", "phishing", "ransomware", "mimikatz",
                                                  "botnets", "carding", "leaked"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> word(0, words().size() - 1), extra(0, extras.size() - 1);
  std::uniform_int_distribution<int> roll(0, 99);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string t;
    for (int k = 0; k < 50; ++k) t += (roll(rng) < 5 ? extras[extra(rng)] : words()[word(rng)]) + ' ';
    if (i % 10 == 0) t += "5d41402abc4b2a76b9719d911017c592";
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace ctimine::bench
