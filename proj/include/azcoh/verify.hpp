#pragma once

// Randomized verification suites. Each returns a JSON report with the worst
// case of every check (offending state included) and a pass flag.

#include <cmath>
#include <cstdint>
#include <string>

#include "azcoh/channels.hpp"
#include "azcoh/io.hpp"

namespace azcoh {

enum class Suite { Lemma1, Dpi, Axioms, Theorem2, Oracle };

inline Suite parse_suite(const std::string& s) {
  if (s == "lemma1") return Suite::Lemma1;
  if (s == "dpi") return Suite::Dpi;
  if (s == "axioms") return Suite::Axioms;
  if (s == "theorem2") return Suite::Theorem2;
  if (s == "oracle") return Suite::Oracle;
  throw Error(ErrorKind::InvalidParams, "unknown suite '" + s + "'");
}

inline const char* to_string(Suite s) {
  switch (s) {
    case Suite::Lemma1: return "lemma1";
    case Suite::Dpi: return "dpi";
    case Suite::Axioms: return "axioms";
    case Suite::Theorem2: return "theorem2";
    case Suite::Oracle: return "oracle";
  }
  return "?";
}

struct VerifyOptions {
  double alpha = 0.5;
  double z = 1.0;
  int trials = 100;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer{};
};

struct VerifyReport {
  json body;
  bool passed = false;
  double max_violation = 0.0;
  double tolerance = 0.0;
};

namespace detail {

inline json worst_entry(const std::string& check, const AxiomViolation& v) {
  json j{{"check", check}, {"violation", v.max_violation}, {"trial", v.worst_trial}, {"checks", v.checks}};
  if (v.worst_state) j["state"] = matrix_to_json(*v.worst_state);
  return j;
}

inline VerifyReport finish(Suite s, const VerifyOptions& o, double tolerance, const json& worst) {
  VerifyReport r;
  r.tolerance = tolerance;
  r.max_violation = 0.0;
  for (const auto& w : worst) r.max_violation = std::max(r.max_violation, w["violation"].get<double>());
  r.passed = r.max_violation <= tolerance;
  r.body = json{{"suite", to_string(s)}, {"alpha", o.alpha},        {"z", o.z},
                {"trials", o.trials},    {"seed", o.seed},          {"tolerance", tolerance},
                {"max_violation", r.max_violation}, {"passed", r.passed}, {"worst", worst}};
  return r;
}

}  // namespace detail

/// f <= 1 (alpha < 1) or f >= 1 (alpha > 1), and f = 1 only for equal states.
/// Pairs use a full-rank sigma so supp(rho) lies in supp(sigma); every tenth
/// pair has sigma = rho.
inline VerifyReport verify_lemma1(const VerifyOptions& o) {
  const AlphaZ p(o.alpha, o.z);
  Rng rng(o.seed);
  std::uniform_int_distribution<int> pick_dim(2, 4);
  AxiomViolation bound, equality;
  for (int t = 0; t < o.trials; ++t) {
    const int d = pick_dim(rng);
    const DensityMatrix sigma = random_state(d, rng);
    const DensityMatrix rho = (t % 10 == 0) ? sigma : random_state(d, rng, 1 + t % d);
    const Lemma1Report r = lemma1_check(rho, sigma, p);
    const double excess = p.alpha() < 1.0 ? r.f - 1.0 : 1.0 - r.f;
    bound.record(excess, t, rho.matrix());
    const bool inconsistent = (r.unit_value && r.distance >= 1e-6) || (!r.unit_value && r.distance < 1e-8);
    equality.record(inconsistent ? 1.0 : 0.0, t, rho.matrix());
  }
  return detail::finish(Suite::Lemma1, o, 1e-9,
                        json::array({detail::worst_entry("bound", bound), detail::worst_entry("equality", equality)}));
}

/// gen_div(Lambda rho, Lambda sigma) - gen_div(rho, sigma) for random CPTP Lambda.
inline VerifyReport verify_dpi(const VerifyOptions& o) {
  const AlphaZ p(o.alpha, o.z);
  Rng rng(o.seed);
  std::uniform_int_distribution<int> pick_dim(2, 4), pick_m(1, 3);
  std::uniform_int_distribution<std::uint64_t> seeds;
  AxiomViolation dpi;
  for (int t = 0; t < o.trials; ++t) {
    const int d = pick_dim(rng);
    const DensityMatrix rho = random_state(d, rng, 1 + t % d);
    const DensityMatrix sigma = random_state(d, rng);
    const KrausChannel ch = sample_cptp(d, pick_m(rng), seeds(rng));
    const double before = gen_div(rho, sigma, p);
    const double after = gen_div(apply(ch, rho), apply(ch, sigma), p);
    if (std::isinf(before)) continue;
    dpi.record(after - before, t, rho.matrix());
  }
  return detail::finish(Suite::Dpi, o, 1e-7, json::array({detail::worst_entry("dpi", dpi)}));
}

/// Violation tolerance for axiom checks: 1e-9 on the closed-form path, 1e-7
/// when the optimizer is involved.
inline double axiom_tolerance(const AlphaZ& p) { return is_z_one(p) && p.alpha() <= 2.0 ? 1e-9 : 1e-7; }

inline VerifyReport verify_axioms(const VerifyOptions& o) {
  const AlphaZ p(o.alpha, o.z);
  const OptimizerConfig cfg = o.optimizer;
  const AxiomReport rep = axiom_suite([&](const DensityMatrix& rho) { return coherence_value(rho, p, cfg); },
                                      AxiomSuiteConfig{o.trials, o.seed, 4, 4});
  return detail::finish(Suite::Axioms, o, axiom_tolerance(p),
                        json::array({detail::worst_entry("C1", rep.faithfulness),
                                     detail::worst_entry("C2", rep.monotonicity),
                                     detail::worst_entry("C3", rep.convexity),
                                     detail::worst_entry("C4", rep.strong_monotonicity),
                                     detail::worst_entry("additivity", rep.additivity)}));
}

/// Ordering parameters derived from (alpha, z): alpha in (0,1) drives the
/// first chain with z1 = max(alpha, 1-alpha) and z2 = max(z, 1); alpha in
/// (1,2] is used as beta; alpha > 1 as gamma. Unused slots take 0.5, 2, 1.5, 1.5.
inline OrderingParams ordering_params_for(double alpha, double z) {
  OrderingParams op;
  if (alpha > 0.0 && alpha < 1.0) {
    op.alpha = alpha;
    op.z1 = std::max(alpha, 1.0 - alpha);
    op.z2 = std::max(z, 1.0);
  }
  if (alpha > 1.0 && alpha <= 2.0) op.beta = alpha;
  if (alpha > 1.0) op.gamma = alpha;
  return op;
}

inline VerifyReport verify_theorem2(const VerifyOptions& o) {
  const OrderingParams op = ordering_params_for(o.alpha, o.z);
  Rng rng(o.seed);
  std::uniform_int_distribution<int> pick_dim(2, 3);
  AxiomViolation chain21, chain22, chain23;
  for (int t = 0; t < o.trials; ++t) {
    const DensityMatrix rho = random_state(pick_dim(rng), rng);
    const OrderingReport r = theorem2_check(rho, op, o.optimizer);
    chain21.record(-r.alpha_chain.min_slack(), t, rho.matrix());
    chain22.record(-r.beta_chain.min_slack(), t, rho.matrix());
    chain23.record(-r.gamma_slack(), t, rho.matrix());
  }
  json body = json::array({detail::worst_entry("alpha_chain", chain21), detail::worst_entry("beta_chain", chain22),
                           detail::worst_entry("gamma_bound", chain23)});
  VerifyReport rep = detail::finish(Suite::Theorem2, o, 1e-6, body);
  rep.body["params"] = json{{"alpha", op.alpha}, {"z1", op.z1}, {"z2", op.z2}, {"beta", op.beta}, {"gamma", op.gamma}};
  return rep;
}

/// |minimize - grid_oracle| on `trials` random qubits and ceil(0.3 trials) qutrits.
inline VerifyReport verify_oracle(const VerifyOptions& o) {
  const AlphaZ p(o.alpha, o.z);
  Rng rng(o.seed);
  AxiomViolation qubit, qutrit;
  const int qutrits = (3 * o.trials + 9) / 10;
  for (int t = 0; t < o.trials + qutrits; ++t) {
    const int d = t < o.trials ? 2 : 3;
    const DensityMatrix rho = random_state(d, rng);
    const double num = minimize(rho, p, o.optimizer).value;
    const double grid = grid_oracle(rho, p, GridOracleConfig::for_dim(d)).value;
    (d == 2 ? qubit : qutrit).record(std::abs(num - grid), t, rho.matrix());
  }
  return detail::finish(Suite::Oracle, o, 1e-4,
                        json::array({detail::worst_entry("qubit", qubit), detail::worst_entry("qutrit", qutrit)}));
}

inline VerifyReport run_suite(Suite s, const VerifyOptions& o) {
  switch (s) {
    case Suite::Lemma1: return verify_lemma1(o);
    case Suite::Dpi: return verify_dpi(o);
    case Suite::Axioms: return verify_axioms(o);
    case Suite::Theorem2: return verify_theorem2(o);
    case Suite::Oracle: return verify_oracle(o);
  }
  throw Error(ErrorKind::InvalidParams, "unknown suite");
}

}  // namespace azcoh
