#pragma once

#include <string_view>

// Fixture files from core/data compiled into the library.
namespace ctimine::bundled {

std::string_view keywords();
std::string_view regexes();
std::string_view software();
std::string_view stopwords();
std::string_view contractions();

}  // namespace ctimine::bundled
