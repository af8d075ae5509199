#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "reprorl/envs.hpp"
#include "reprorl/metrics.hpp"
#include "reprorl/rollout.hpp"
#include "reprorl/stats.hpp"

using namespace reprorl;
using namespace reprorl::metrics;
using testing::throws_code;

namespace {

LcbConfig cfg(double alpha, PerfEstimator p = PerfEstimator::mean, DispEstimator d = DispEstimator::mad) {
  return LcbConfig{alpha, p, d};
}

const std::vector<PerfEstimator> perfs{PerfEstimator::mean, PerfEstimator::median};
const std::vector<DispEstimator> disps{DispEstimator::mad, DispEstimator::iqr, DispEstimator::std};

EvalRecord record_with_marginals(const Matrix& marginals) {
  EvalRecord r;
  r.policy_id = "m";
  r.env = EnvConfig::flat_mean_spread();
  r.n_evals = marginals.rows();
  r.returns.assign(r.n_evals, 60.0);
  r.descriptors = Matrix(r.n_evals, 1, 0.0);
  r.state_marginals = marginals;
  return r;
}

Matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) m.append_row(oracle::random_vector(gen, cols, -5.0, 5.0));
  return m;
}

}  // namespace

TEST_CASE("lcb examples") {
  const std::vector<double> five{5, 5, 5};
  for (auto p : perfs) {
    for (auto d : disps) CHECK(lcb(five, cfg(7, p, d)) == 5);
  }
  const std::vector<double> xs{1, 2, 3, 4, 100};
  CHECK(lcb(xs, cfg(2)) == 20);
  for (auto p : perfs) {
    for (auto d : disps) CHECK(lcb(xs, cfg(0, p, d)) == performance(xs, p));
  }
  CHECK(lcb(xs, cfg(1, PerfEstimator::median, DispEstimator::iqr)) == 1);
  CHECK(throws_code([] { lcb(std::vector<double>{}, cfg(0)); }, Errc::empty_input));
  CHECK(throws_code([] { cfg(-1).validate(); }, Errc::invalid_config));
}

TEST_CASE("lcb on an EvalRecord") {
  const std::vector<double> act{1.0};
  const EvalRecord r = evaluate(constant_action_policy(1, act, ActionBox{0, 1}), EnvConfig::flat_mean_spread(),
                                NoiseConfig{}, EvalConfig{64, false, 0});
  CHECK(lcb(r, cfg(0.5)) == stats::mean(r.returns) - 0.5 * stats::mad(r.returns));
  EvalRecord empty;
  CHECK(throws_code([&] { lcb(empty, cfg(0)); }, Errc::empty_input));
}

TEST_CASE("lcb_sweep") {
  const std::vector<double> xs{1, 2, 3, 4, 100};
  const std::vector<double> zero{0.0};
  const ReproSummary one = lcb_sweep(xs, zero, cfg(0));
  CHECK(one.lcb_by_alpha.size() == 1);
  CHECK(one.lcb_by_alpha.at(0.0) == one.perf);
  CHECK(one.perf == 22);
  CHECK(one.dispersion == 1);
  CHECK(one.n_evals == 5);

  const std::vector<double> grid{0, 1, 2};
  const ReproSummary s = lcb_sweep(xs, grid, cfg(0));
  CHECK(s.lcb_by_alpha.at(0.0) > s.lcb_by_alpha.at(1.0));
  CHECK(s.lcb_by_alpha.at(1.0) > s.lcb_by_alpha.at(2.0));

  const std::vector<double> big{0, 2000};
  const ReproSummary b = lcb_sweep(xs, big, cfg(0));
  CHECK(b.lcb_by_alpha.at(0.0) == 22);
  CHECK(b.lcb_by_alpha.at(2000.0) == 22 - 2000);

  const std::vector<double> negative{0, -1};
  CHECK(throws_code([&] { lcb_sweep(xs, negative, cfg(0)); }, Errc::invalid_config));
}

TEST_CASE("lcb ranking is invariant to a common shift") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_vector(gen, 30);
    const auto b = oracle::random_vector(gen, 30);
    std::vector<double> a2;
    std::vector<double> b2;
    for (double x : a) a2.push_back(x + 1000.0);
    for (double x : b) b2.push_back(x + 1000.0);
    for (auto p : perfs) {
      for (auto d : disps) {
        const LcbConfig c = cfg(0.7, p, d);
        CHECK(lcb(a2, c) == doctest::Approx(lcb(a, c) + 1000.0).epsilon(1e-12));
        CHECK((lcb(a, c) < lcb(b, c)) == (lcb(a2, c) < lcb(b2, c)));
      }
    }
  }
}

TEST_CASE("pairwise distances") {
  CHECK(pairwise_distances(Matrix::from_rows({{1, 2}, {1, 2}})) == std::vector<double>{0});
  CHECK(pairwise_distances(Matrix::from_rows({{0, 0}, {3, 4}})) == std::vector<double>{5});
  CHECK(pairwise_distances(Matrix::from_rows({{0}, {1}, {3}})) == std::vector<double>{1, 3, 2});
  CHECK(throws_code([] { pairwise_distances(Matrix::from_rows({{1, 2}})); }, Errc::insufficient_data));

  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(gen, 2 + trial % 9, 1 + trial % 4);
    const auto d = pairwise_distances(m);
    const auto o = oracle::pairwise(m.to_rows());
    REQUIRE(d.size() == m.rows() * (m.rows() - 1) / 2);
    for (std::size_t i = 0; i < d.size(); ++i) REQUIRE(std::abs(d[i] - o[i]) <= 1e-12);
  }
}

TEST_CASE("behavioural mad and iqr") {
  CHECK(behavioural_mad(Matrix::from_rows({{2, 2}, {2, 2}, {2, 2}})) == 0);
  CHECK(behavioural_iqr(Matrix::from_rows({{2, 2}, {2, 2}, {2, 2}})) == 0);
  CHECK(behavioural_mad(Matrix::from_rows({{0}, {1}, {3}})) == 1);
  CHECK(behavioural_mad(Matrix::from_rows({{0, 0}, {0, 1}, {0, 2}})) == 0);
  CHECK(behavioural_iqr(Matrix::from_rows({{0}, {1}, {3}})) == 1);
  CHECK(throws_code([] { behavioural_mad(Matrix::from_rows({{1}})); }, Errc::insufficient_data));
}

TEST_CASE("behavioural mad is invariant to rigid motions") {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(gen, 12, 2);
    const double th = 0.1 * trial;
    Matrix moved;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double x = m(i, 0);
      const double y = m(i, 1);
      moved.append_row(std::vector<double>{std::cos(th) * x - std::sin(th) * y + 7.0,
                                           std::sin(th) * x + std::cos(th) * y - 3.0});
    }
    CHECK(behavioural_mad(moved) == doctest::Approx(behavioural_mad(m)).epsilon(1e-9));
  }
}

TEST_CASE("state marginal reproducibility") {
  const EnvConfig nav = EnvConfig::point_mass_nav();
  const EvalRecord det = evaluate(goal_seeking_policy(nav), nav, NoiseConfig{}, EvalConfig{16, true, 0});
  const Dispersion zero = state_marginal_repro(det);
  CHECK(zero.mad == 0);
  CHECK(zero.iqr == 0);

  const Matrix twice = Matrix::from_rows({{0, 0, 0}, {0, 0, 0}, {1, 2, 2}, {1, 2, 2}});
  const Dispersion pairs = state_marginal_repro(record_with_marginals(twice));
  CHECK(pairs.mad == oracle::mad(oracle::pairwise(twice.to_rows())));
  CHECK(pairs.mad == 0);

  std::mt19937_64 gen(9);
  const Matrix m = random_matrix(gen, 4, 8);
  const Dispersion d = state_marginal_repro(record_with_marginals(m));
  const auto o = oracle::pairwise(m.to_rows());
  CHECK(std::abs(d.mad - oracle::mad(o)) <= 1e-12);
  CHECK(std::abs(d.iqr - oracle::iqr(o)) <= 1e-12);

  const EvalRecord bare = evaluate(goal_seeking_policy(nav), nav, NoiseConfig{}, EvalConfig{4, false, 0});
  CHECK(throws_code([&] { state_marginal_repro(bare); }, Errc::misuse));
}

TEST_CASE("pareto examples") {
  const std::vector<ParetoPoint> one{{"a", 1, -1}};
  CHECK(pareto_front(one) == one);

  const std::vector<ParetoPoint> three{{"a", 5, -1}, {"b", 4, -0.5}, {"c", 3, -2}};
  CHECK(pareto_mask(three) == std::vector<bool>{true, true, false});
  CHECK(pareto_front(three) == std::vector<ParetoPoint>{three[0], three[1]});
  CHECK(dominates(three[0], three[2]));
  CHECK(dominates(three[1], three[2]));
  CHECK_FALSE(dominates(three[0], three[1]));

  const std::vector<ParetoPoint> dup{{"a", 2, -1}, {"b", 2, -1}};
  CHECK(pareto_front(dup).size() == 2);
  CHECK_FALSE(dominates(dup[0], dup[1]));
}

TEST_CASE("pareto front matches exhaustive dominance") {
  std::mt19937_64 gen(10);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_int_distribution<int> grid(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ParetoPoint> pts;
    std::vector<oracle::Point2> raw;
    const std::size_t n = size(gen);
    for (std::size_t i = 0; i < n; ++i) {
      // a coarse grid produces ties and exact duplicates
      const double perf = static_cast<double>(grid(gen));
      const double repro = -static_cast<double>(grid(gen));
      pts.push_back({"p" + std::to_string(i), perf, repro});
      raw.push_back({perf, repro});
    }
    const auto mask = pareto_mask(pts);
    REQUIRE(mask == oracle::pareto_mask(raw));
    const auto front = pareto_front(pts);
    for (const auto& f : front) {
      for (const auto& q : pts) REQUIRE_FALSE(dominates(q, f));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) continue;
      bool covered = false;
      for (const auto& f : front) covered = covered || dominates(f, pts[i]);
      REQUIRE(covered);
    }
  }
}

TEST_CASE("the lcb preference switches near alpha 0.4 on the trade-off bandit") {
  const EnvConfig env = EnvConfig::tradeoff_spread();
  const std::vector<double> quiet{0.0};
  const std::vector<double> loud{1.0};
  int in_band = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const EvalConfig eval{256, false, trial};
    const auto r0 = evaluate(constant_action_policy(1, quiet, ActionBox{0, 1}), env, NoiseConfig{}, eval).returns;
    const auto r1 = evaluate(constant_action_policy(1, loud, ActionBox{0, 1}), env, NoiseConfig{}, eval).returns;
    // LCB(a=1) - LCB(a=0) is linear in alpha; find where it crosses zero
    const double alpha_star = (stats::mean(r1) - stats::mean(r0)) / (stats::mad(r1) - stats::mad(r0));
    in_band += alpha_star >= 0.3 && alpha_star <= 0.5;
  }
  CHECK(in_band >= 19);
}
