#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "reprorl/rng.hpp"

namespace reprorl {

enum class Activation { tanh, relu };

std::string_view to_string(Activation a) noexcept;
Activation activation_from_string(std::string_view name);

// Closed interval every action coordinate is squashed into.
struct ActionBox {
  double low = -1.0;
  double high = 1.0;

  double clip(double a) const noexcept { return a < low ? low : (a > high ? high : a); }
  friend bool operator==(const ActionBox&, const ActionBox&) = default;
};

// Layer sizes (input, hidden..., output); e.g. {4, 16, 16, 2}.
using Architecture = std::vector<std::size_t>;

// Number of weights plus biases of a fully connected net. Throws
// Errc::invalid_architecture for fewer than two layers or a zero-width layer.
std::size_t param_count(std::span<const std::size_t> arch);

// Flat parameters of a feed-forward policy.
//
// Layout, layer by layer: the out x in weight matrix (row-major, one row per
// output unit) followed by the out biases. Hidden layers use `activation`; the
// output layer is always tanh, rescaled onto the action box.
struct PolicyParams {
  std::vector<double> theta;
  Architecture arch;
  Activation activation = Activation::tanh;

  std::size_t input_dim() const noexcept { return arch.empty() ? 0 : arch.front(); }
  std::size_t output_dim() const noexcept { return arch.empty() ? 0 : arch.back(); }

  // Throws unless theta matches param_count(arch) and every entry is finite.
  void validate() const;

  friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

// Deterministic forward pass. Shape mismatch -> Errc::shape, non-finite input -> Errc::numeric.
std::vector<double> policy_forward(const PolicyParams& params, std::span<const double> obs,
                                   ActionBox box = {});

// Weights ~ N(0, 1/fan_in), biases zero.
PolicyParams init_policy(Architecture arch, Activation activation, RngStream& stream);

// A one-layer policy whose output ignores the observation and sits at `action`
// (clamped into the box). Exact at the box ends and the box centre.
PolicyParams constant_action_policy(std::size_t obs_dim, std::span<const double> action,
                                    ActionBox box = {});

}  // namespace reprorl
