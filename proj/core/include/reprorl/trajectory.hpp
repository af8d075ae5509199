#pragma once

#include <cstddef>
#include <vector>

#include "reprorl/matrix.hpp"

namespace reprorl {

// One episode. Row t of `observations` is what the policy acted on at step t,
// row t of `actions` is the action the environment executed, and row t of
// `states` is the true state after that step (so the last row is the final state).
struct Trajectory {
  Matrix states;
  Matrix observations;
  Matrix actions;
  std::vector<double> rewards;
  double episode_return = 0.0;

  std::size_t length() const noexcept { return rewards.size(); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

}  // namespace reprorl
