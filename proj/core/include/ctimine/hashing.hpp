#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace ctimine::hashing {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t state = kFnvOffset) noexcept {
  for (unsigned char c : data) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded 64-bit string hash, stable across platforms and runs.
constexpr std::uint64_t seeded_hash(std::string_view data, std::uint64_t seed) noexcept {
  return splitmix64(fnv1a64(data, kFnvOffset ^ splitmix64(seed)));
}

std::string to_hex(std::uint64_t value);

// FNV-1a digest of a file's bytes, hex encoded. Throws MissingInputError.
std::string file_digest(const std::filesystem::path& path);

}  // namespace ctimine::hashing
