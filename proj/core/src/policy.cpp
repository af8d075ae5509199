#include "reprorl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reprorl/error.hpp"

namespace reprorl {

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::tanh: return "tanh";
    case Activation::relu: return "relu";
  }
  return "tanh";
}

Activation activation_from_string(std::string_view name) {
  if (name == "tanh") return Activation::tanh;
  if (name == "relu") return Activation::relu;
  throw Error(Errc::invalid_config,
              "unknown activation '" + std::string(name) + "' (valid: tanh, relu)");
}

std::size_t param_count(std::span<const std::size_t> arch) {
  if (arch.size() < 2) {
    throw Error(Errc::invalid_architecture, "architecture needs at least input and output sizes");
  }
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < arch.size(); ++l) {
    if (arch[l] == 0 || arch[l + 1] == 0) {
      throw Error(Errc::invalid_architecture, "architecture has a zero-width layer");
    }
    total += arch[l] * arch[l + 1] + arch[l + 1];
  }
  return total;
}

void PolicyParams::validate() const {
  const std::size_t expected = param_count(arch);
  if (theta.size() != expected) {
    throw Error(Errc::shape, "policy has " + std::to_string(theta.size()) +
                                 " parameters but its architecture implies " +
                                 std::to_string(expected));
  }
  if (!std::all_of(theta.begin(), theta.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(Errc::numeric, "policy parameters contain a non-finite value");
  }
}

std::vector<double> policy_forward(const PolicyParams& params, std::span<const double> obs,
                                   ActionBox box) {
  const std::size_t expected = param_count(params.arch);
  if (params.theta.size() != expected) {
    throw Error(Errc::shape, "policy parameter vector does not match its architecture");
  }
  if (obs.size() != params.input_dim()) {
    throw Error(Errc::shape, "observation has " + std::to_string(obs.size()) +
                                 " entries, policy expects " + std::to_string(params.input_dim()));
  }
  if (!std::all_of(obs.begin(), obs.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(Errc::numeric, "observation contains a non-finite value");
  }

  std::vector<double> in(obs.begin(), obs.end());
  std::vector<double> out;
  const double* w = params.theta.data();
  const std::size_t n_layers = params.arch.size() - 1;

  for (std::size_t l = 0; l < n_layers; ++l) {
    const std::size_t n_in = params.arch[l];
    const std::size_t n_out = params.arch[l + 1];
    const double* bias = w + n_in * n_out;
    const bool last = l + 1 == n_layers;
    out.assign(n_out, 0.0);
    for (std::size_t o = 0; o < n_out; ++o) {
      double z = bias[o];
      const double* row = w + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) z += row[i] * in[i];
      if (last || params.activation == Activation::tanh) {
        out[o] = std::tanh(z);
      } else {
        out[o] = z > 0.0 ? z : 0.0;
      }
    }
    w = bias + n_out;
    in.swap(out);
  }

  // tanh output in [-1, 1] mapped affinely onto the box.
  const double half_width = 0.5 * (box.high - box.low);
  for (double& a : in) a = box.clip(box.low + half_width * (a + 1.0));
  return in;
}

PolicyParams init_policy(Architecture arch, Activation activation, RngStream& stream) {
  PolicyParams p;
  p.theta.assign(param_count(arch), 0.0);
  p.arch = std::move(arch);
  p.activation = activation;

  double* w = p.theta.data();
  for (std::size_t l = 0; l + 1 < p.arch.size(); ++l) {
    const std::size_t n_in = p.arch[l];
    const std::size_t n_out = p.arch[l + 1];
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_in));
    for (std::size_t k = 0; k < n_in * n_out; ++k) w[k] = scale * stream.gaussian();
    w += n_in * n_out + n_out;
  }
  return p;
}

PolicyParams constant_action_policy(std::size_t obs_dim, std::span<const double> action,
                                    ActionBox box) {
  // tanh(20) rounds to exactly 1.0 in double precision.
  constexpr double saturate = 20.0;

  PolicyParams p;
  p.arch = {obs_dim, action.size()};
  p.theta.assign(param_count(p.arch), 0.0);
  double* bias = p.theta.data() + obs_dim * action.size();
  for (std::size_t k = 0; k < action.size(); ++k) {
    const double a = box.clip(action[k]);
    const double unit = 2.0 * (a - box.low) / (box.high - box.low) - 1.0;
    double z;
    if (unit <= -1.0) {
      z = -saturate;
    } else if (unit >= 1.0) {
      z = saturate;
    } else {
      z = std::atanh(unit);
    }
    bias[k] = z;
  }
  return p;
}

}  // namespace reprorl
