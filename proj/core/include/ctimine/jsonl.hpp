#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace ctimine::jsonl {

using Json = nlohmann::json;

// Opens a file for reading; throws MissingInputError when it cannot be opened.
std::ifstream open_input(const std::filesystem::path& path);

// Opens a file for writing, creating parent directories; throws Error on failure.
std::ofstream open_output(const std::filesystem::path& path);

// Calls `fn(line_number, line)` for every line (1-based). A trailing "\r" is removed.
void for_each_line(std::istream& in,
                   const std::function<void(std::size_t, std::string_view)>& fn);

// Reads every non-blank line as a JSON object; throws DataError naming the
// file and line on malformed input.
void for_each_record(const std::filesystem::path& path,
                     const std::function<void(std::size_t, const Json&)>& fn);

// Compact single-line dump used for every record file.
std::string dump(const Json& value);

}  // namespace ctimine::jsonl
