#include "ctimine/levenshtein.hpp"

#include <algorithm>
#include <vector>

namespace ctimine::lexicon {

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein_bounded(a, b, std::max(a.size(), b.size()));
}

std::size_t levenshtein_bounded(std::string_view a, std::string_view b, std::size_t k) {
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n - m > k) return k + 1;
  if (m == 0) return n;

  const std::size_t inf = k + 1;
  // Rows indexed by position in b; cells outside the band stay at inf.
  std::vector<std::size_t> prev(m + 1, inf), cur(m + 1, inf);
  for (std::size_t j = 0; j <= std::min(m, k); ++j) prev[j] = j;

  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > k ? i - k : 0;
    const std::size_t hi = std::min(m, i + k);
    std::fill(cur.begin(), cur.end(), inf);
    if (lo == 0) cur[0] = i <= k ? i : inf;
    std::size_t row_min = cur[0];
    for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const std::size_t del = prev[j] + 1;
      const std::size_t ins = cur[j - 1] + 1;
      cur[j] = std::min({sub, del, ins, inf});
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min > k) return inf;
    std::swap(prev, cur);
  }
  return std::min(prev[m], inf);
}

}  // namespace ctimine::lexicon
