#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace reprorl {

// A reproducible random stream keyed by (master_seed, purpose_tag, index).
//
// The generator state is a pure function of the triple, so streams can be
// derived in any order, on any thread, and always replay the same draws.
// Copying a stream forks it: the copy replays exactly what the original
// would have produced next.
//
// Generator: xoshiro256**. Seeding: splitmix64 absorbing master_seed, the
// FNV-1a hash of the tag and the index, in that order. Gaussians: Box-Muller,
// both variates used (the second one is cached).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view purpose_tag, std::uint64_t index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  const std::string& purpose_tag() const noexcept { return purpose_tag_; }
  std::uint64_t index() const noexcept { return index_; }

  std::uint64_t next_u64() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;
  double uniform(double lo, double hi) noexcept;
  // Standard normal.
  double gaussian() noexcept;
  void fill_gaussian(std::span<double> out) noexcept;

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t master_seed_;
  std::string purpose_tag_;
  std::uint64_t index_;
  std::array<std::uint64_t, 4> state_{};
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

RngStream derive_stream(std::uint64_t master_seed, std::string_view purpose_tag, std::uint64_t index);

// Derives a fresh 64-bit seed; used to hand a child experiment its own master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view purpose_tag, std::uint64_t index);

}  // namespace reprorl
