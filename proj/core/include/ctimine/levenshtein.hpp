#pragma once

#include <cstddef>
#include <string_view>

namespace ctimine::lexicon {

// Uniform-cost edit distance.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Edit distance if it is <= max_distance, otherwise any value > max_distance.
// Only a diagonal band of width 2*max_distance+1 is evaluated.
std::size_t levenshtein_bounded(std::string_view a, std::string_view b, std::size_t max_distance);

}  // namespace ctimine::lexicon
