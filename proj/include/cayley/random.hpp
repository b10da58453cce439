#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cayley {

using Rng = std::mt19937_64;

/// Deterministic keyed seed splitting.
///
/// A master seed fans out into named sub-streams ("cluster:3", "trial:17"),
/// so the stream a piece of work draws from depends only on its key and not
/// on how many other streams were consumed before it.
class SeedTree {
 public:
  explicit SeedTree(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  SeedTree child(std::string_view key) const;
  SeedTree child(std::string_view prefix, std::uint64_t index) const;

  Rng engine() const { return Rng(seed_); }

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace cayley
