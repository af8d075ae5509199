#include "reprorl/rng.hpp"

#include <cmath>
#include <numbers>

namespace reprorl {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::uint64_t absorb(std::uint64_t master_seed, std::string_view tag, std::uint64_t index) noexcept {
  std::uint64_t x = 0;
  x ^= master_seed;
  x = splitmix64(x);
  x ^= fnv1a64(tag);
  x = splitmix64(x);
  x ^= index;
  return splitmix64(x);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::string_view purpose_tag, std::uint64_t index)
    : master_seed_(master_seed), purpose_tag_(purpose_tag), index_(index) {
  std::uint64_t key = absorb(master_seed, purpose_tag, index);
  for (auto& word : state_) word = splitmix64(key);
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

double RngStream::gaussian() noexcept {
  if (has_cached_) {
    has_cached_ = false;
    return cached_gaussian_;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

void RngStream::fill_gaussian(std::span<double> out) noexcept {
  for (double& v : out) v = gaussian();
}

RngStream derive_stream(std::uint64_t master_seed, std::string_view purpose_tag, std::uint64_t index) {
  return RngStream(master_seed, purpose_tag, index);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view purpose_tag, std::uint64_t index) {
  return RngStream(master_seed, purpose_tag, index).next_u64();
}

}  // namespace reprorl
