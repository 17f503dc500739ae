#include "catch_amalgamated.hpp"

#include "azcoh/coherence.hpp"
#include "oracles.hpp"

using namespace azcoh;
using Catch::Approx;

namespace {

OptimizerConfig cold(std::uint64_t seed = 0) {
  OptimizerConfig cfg;
  cfg.warm_start = false;
  cfg.seed = seed;
  return cfg;
}

RealVector projected(RealVector g) { return g.array() - g.mean(); }

}  // namespace

TEST_CASE("analytic gradient matches finite differences", "[simplex_opt]") {
  Rng rng(41);
  const std::pair<double, double> cases[] = {{0.5, 1.0}, {0.5, 2.0}, {0.3, 0.8}, {1.5, 1.0}, {1.6, 0.8}, {2.0, 2.0}};
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 2 + trial % 3;
    const DensityMatrix rho = random_state(d, rng);
    RealVector q = random_simplex_point(d, rng);
    q = (q.array() + 0.05).matrix();
    q /= q.sum();
    for (auto [a, z] : cases) {
      const AlphaZ p(a, z);
      const DiagonalObjective obj(rho, p);
      RealVector g;
      obj.value_active(q, &g);
      const RealVector fd = gradient(rho, p, DiagonalState(q));
      CHECK((projected(g) - fd).norm() <= 1e-5 * std::max(1.0, fd.norm()));
    }
  }
}

TEST_CASE("gradient vanishes at known optima", "[simplex_opt]") {
  Rng rng(43);
  SECTION("closed-form optimum at z = 1") {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_state(2 + trial % 3, rng);
      for (double a : {0.5, 1.5}) {
        const auto r = coherence_closed_z1(rho, a);
        CHECK(gradient(rho, AlphaZ(a, 1.0), r.optimal_sigma).norm() < 1e-5);
      }
    }
  }
  SECTION("diagonal rho at q = diag(rho)") {
    for (int trial = 0; trial < 10; ++trial) {
      const RealVector r = random_simplex_point(3, rng);
      const DensityMatrix rho{DiagonalState(r)};
      for (auto [a, z] : {std::pair{0.5, 2.0}, {2.0, 2.0}, {0.4, 0.7}})
        CHECK(gradient(rho, AlphaZ(a, z), DiagonalState(r)).norm() < 1e-7);
    }
  }
}

TEST_CASE("minimize reproduces worked values", "[simplex_opt]") {
  const DensityMatrix psi = pure_qubit(0.6);
  const auto r2 = minimize(psi, AlphaZ(0.5, 2.0), cold());
  CHECK(r2.converged);
  CHECK(r2.value == Approx(0.7295960530767156).margin(1e-9));
  CHECK(r2.method == Method::Numeric);
  CHECK(minimize(psi, AlphaZ(0.5, 0.5), cold()).value == Approx(0.4).margin(1e-9));
  CHECK(minimize(psi, AlphaZ(0.5, 1.0), cold()).value == Approx(0.64).margin(1e-9));
  // diag(rho) is the minimizer for an incoherent rho
  RealVector p(3);
  p << 0.6, 0.3, 0.1;
  const auto r0 = minimize(DensityMatrix(DiagonalState(p)), AlphaZ(2.0, 2.0), cold());
  CHECK(r0.value == Approx(0.0).margin(1e-10));
  CHECK((r0.optimal_sigma.probs() - p).norm() < 1e-5);
}

TEST_CASE("indices outside the diagonal support get no weight", "[simplex_opt]") {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(3);
  psi(0) = std::sqrt(0.7);
  psi(2) = std::sqrt(0.3);
  const DensityMatrix rho = validate_state(psi * psi.adjoint());
  for (auto [a, z] : {std::pair{0.5, 2.0}, {2.0, 2.0}}) {
    const auto r = minimize(rho, AlphaZ(a, z), cold());
    CHECK(r.optimal_sigma.probs()(1) == 0.0);
    CHECK(std::isfinite(r.value));
  }
  const auto one = minimize(DensityMatrix(DiagonalState(RealVector::Unit(3, 1))), AlphaZ(2.0, 2.0));
  CHECK(one.value == 0.0);
  CHECK(one.optimal_sigma.probs()(1) == 1.0);
}

TEST_CASE("minimize agrees with the grid oracle", "[simplex_opt][oracle]") {
  Rng rng(47);
  const std::pair<double, double> cases[] = {{0.4, 0.8}, {0.5, 2.0}, {1.6, 0.8}, {2.0, 2.0}, {3.0, 3.0}};
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 2 + trial % 2;
    const DensityMatrix rho = random_state(d, rng, 1 + trial % d);
    for (auto [a, z] : cases) {
      const AlphaZ p(a, z);
      const auto num = minimize(rho, p, cold());
      const auto grid = grid_oracle(rho, p, GridOracleConfig::for_dim(d));
      CHECK(grid.method == Method::Grid);
      CHECK(num.value <= grid.value + 1e-9);
      CHECK(num.value == Approx(grid.value).margin(1e-6));
    }
  }
}

TEST_CASE("qubit optimum against the hand-written evaluator", "[simplex_opt][oracle]") {
  Rng rng(53);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityMatrix rho = random_state(2, rng);
    const oracle::Herm2 h{rho.matrix()(0, 0).real(), rho.matrix()(0, 1), rho.matrix()(1, 1).real()};
    for (auto [a, z] : {std::pair{0.5, 2.0}, {1.5, 0.75}})
      CHECK(minimize(rho, AlphaZ(a, z), cold()).value ==
            Approx(oracle::qubit_coherence_grid(h, a, z, 200000)).margin(1e-8));
  }
}

TEST_CASE("optimizer bookkeeping", "[simplex_opt]") {
  Rng rng(59);
  const DensityMatrix rho = random_state(4, rng);
  const AlphaZ p(0.5, 2.0);
  SECTION("deterministic for a fixed seed") {
    const auto a = minimize(rho, p, cold(7));
    const auto b = minimize(rho, p, cold(7));
    CHECK(a.value == b.value);
    CHECK(a.optimal_sigma.probs() == b.optimal_sigma.probs());
    CHECK(a.iterations == b.iterations);
  }
  SECTION("incumbent never increases within a restart") {
    OptimizerConfig cfg = cold(3);
    std::vector<std::vector<double>> trace(static_cast<std::size_t>(cfg.restarts));
    cfg.observer = [&](int r, int, double v) { trace[static_cast<std::size_t>(r)].push_back(v); };
    minimize(rho, p, cfg);
    for (const auto& t : trace) {
      REQUIRE_FALSE(t.empty());
      for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] <= t[i - 1]);
    }
  }
  SECTION("an iteration cap that is too small is reported") {
    OptimizerConfig cfg = cold();
    cfg.max_iters = 1;
    cfg.restarts = 1;
    const auto r = minimize(rho, p, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.warning.has_value());
  }
  SECTION("invalid configurations") {
    OptimizerConfig cfg;
    cfg.restarts = 0;
    CHECK_THROWS_AS(minimize(rho, p, cfg), Error);
    cfg = OptimizerConfig{};
    cfg.floor = 0.5;
    CHECK_THROWS_AS(minimize(rho, p, cfg), Error);
  }
}

TEST_CASE("grid oracle limits", "[simplex_opt]") {
  Rng rng(61);
  const DensityMatrix rho4 = random_state(4, rng);
  try {
    grid_oracle(rho4, AlphaZ(0.5, 1.0), GridOracleConfig{4, 1e-2, 0});
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooLarge);
  }
  CHECK_THROWS_AS(grid_oracle(random_state(2, rng), AlphaZ(0.5, 1.0), GridOracleConfig::for_dim(3)), Error);
  const auto g = grid_oracle(pure_qubit(0.6), AlphaZ(0.5, 1.0), GridOracleConfig::for_dim(2));
  CHECK(g.value == Approx(0.64).margin(1e-9));
  const auto g2 = grid_oracle(pure_qubit(0.6), AlphaZ(0.5, 2.0), GridOracleConfig::for_dim(2));
  CHECK(g2.value == Approx(0.7295960530767156).margin(1e-5));
}
