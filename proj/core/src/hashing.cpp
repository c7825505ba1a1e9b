#include "ctimine/hashing.hpp"

#include <cstdio>
#include <fstream>

#include "ctimine/common.hpp"

namespace ctimine::hashing {

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError(path.string());
  std::uint64_t state = kFnvOffset;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    state = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), state);
  }
  return "fnv1a64:" + to_hex(state);
}

}  // namespace ctimine::hashing
