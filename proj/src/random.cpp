#include "cayley/random.hpp"

#include <string>

namespace cayley {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view key) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

SeedTree SeedTree::child(std::string_view key) const {
  return SeedTree(splitmix64(seed_ ^ splitmix64(fnv1a(key))));
}

SeedTree SeedTree::child(std::string_view prefix, std::uint64_t index) const {
  std::string key(prefix);
  key += ':';
  key += std::to_string(index);
  return child(key);
}

}  // namespace cayley
