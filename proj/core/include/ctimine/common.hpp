#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ctimine {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A required input file is absent or unreadable.
class MissingInputError : public Error {
 public:
  explicit MissingInputError(std::string path)
      : Error("missing input: " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Configuration file or command line could not be parsed or is inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data violates a format or validation rule in a way that is fatal.
class DataError : public Error {
 public:
  using Error::Error;
};

enum class Source : std::uint8_t { forum, chat, darknet };

inline constexpr Source kAllSources[] = {Source::forum, Source::chat, Source::darknet};

std::string_view to_string(Source source) noexcept;
std::optional<Source> parse_source(std::string_view text) noexcept;

}  // namespace ctimine
