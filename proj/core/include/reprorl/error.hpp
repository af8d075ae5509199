#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reprorl {

enum class Errc {
  invalid_architecture,
  shape,
  numeric,
  episode_complete,
  incomplete_trajectory,
  empty_input,
  insufficient_data,
  invalid_config,
  misuse,
  io,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library. The code is stable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// A non-finite value showed up mid-episode. rollout_index is filled in by evaluate().
class NumericFailure : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  NumericFailure(const std::string& what, std::size_t step, std::size_t rollout_index = npos)
      : Error(Errc::numeric, what), step_(step), rollout_index_(rollout_index) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t rollout_index() const noexcept { return rollout_index_; }

 private:
  std::size_t step_;
  std::size_t rollout_index_;
};

}  // namespace reprorl
