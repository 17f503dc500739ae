#pragma once

// Command implementations behind the azcoh executable. Each command writes
// its JSON/CSV result to `out`, diagnostics to `err`, and returns the exit
// code:
//   0 ok, 1 verification violation, 2 bad input file or unwritable output,
//   3 invalid parameters, 4 unproven regime without --allow-unproven,
//   5 numeric failure.

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "azcoh/verify.hpp"

namespace azcoh::cli {

enum Exit : int {
  kOk = 0,
  kViolation = 1,
  kBadInput = 2,
  kInvalidParams = 3,
  kUnproven = 4,
  kNumericFailure = 5,
};

inline int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::BadInput:
    case ErrorKind::NotSquare:
    case ErrorKind::NonHermitian:
    case ErrorKind::NotPSD:
    case ErrorKind::TraceNotOne:
      return kBadInput;
    case ErrorKind::NumericFailure:
      return kNumericFailure;
    default:
      return kInvalidParams;
  }
}

inline MethodChoice parse_method(const std::string& m) {
  if (m == "auto") return MethodChoice::Auto;
  if (m == "closed") return MethodChoice::Closed;
  if (m == "numeric") return MethodChoice::Numeric;
  if (m == "grid") return MethodChoice::Grid;
  throw Error(ErrorKind::InvalidParams, "unknown method '" + m + "'");
}

inline json result_to_json(const CoherenceResult& r) {
  const RealVector& q = r.optimal_sigma.probs();
  json j{{"value", r.value},
         {"optimal_sigma", std::vector<double>(q.data(), q.data() + q.size())},
         {"method", to_string(r.method)},
         {"regime", r.regime.label()},
         {"converged", r.converged}};
  if (r.warning) j["warning"] = *r.warning;
  return j;
}

struct CoherenceArgs {
  std::filesystem::path input;
  double alpha = 0.5;
  double z = 1.0;
  std::string method = "auto";
  bool allow_unproven = false;
  std::uint64_t seed = 0;
};

inline int cmd_coherence(const CoherenceArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const DensityMatrix rho = load_state(a.input);
    const AlphaZ p(a.alpha, a.z);
    const MethodChoice m = parse_method(a.method);
    if (!classify_regime(p).proven() && !a.allow_unproven) {
      err << "(alpha=" << a.alpha << ", z=" << a.z
          << ") is not a proven coherence measure; pass --allow-unproven to compute it anyway\n";
      return kUnproven;
    }
    OptimizerConfig cfg;
    cfg.seed = a.seed;
    const CoherenceResult r = coherence(rho, p, m, cfg);
    out << result_to_json(r).dump(2) << '\n';
    return r.converged ? kOk : kNumericFailure;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

struct SweepArgs {
  int points = 201;
  std::filesystem::path output;
  std::uint64_t seed = 0;
};

inline int cmd_sweep_qubit(const SweepArgs& a, std::ostream& err) {
  if (a.points < 2) {
    err << "--points must be at least 2\n";
    return kInvalidParams;
  }
  std::ofstream out(a.output, std::ios::binary);
  if (!out) {
    err << "cannot write " << a.output.string() << '\n';
    return kBadInput;
  }
  OptimizerConfig cfg;
  cfg.seed = a.seed;
  write_sweep_csv(out, sweep_qubit(a.points, cfg));
  if (!out) {
    err << "write failed for " << a.output.string() << '\n';
    return kBadInput;
  }
  return kOk;
}

struct VerifyArgs {
  std::string suite;
  double alpha = 0.5;
  double z = 1.0;
  int trials = 100;
  std::uint64_t seed = 0;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const Suite s = parse_suite(a.suite);
    if (a.trials < 1) throw Error(ErrorKind::InvalidParams, "--trials must be positive");
    VerifyOptions o;
    o.alpha = a.alpha;
    o.z = a.z;
    o.trials = a.trials;
    o.seed = a.seed;
    o.optimizer.seed = a.seed;
    const VerifyReport r = run_suite(s, o);
    out << r.body.dump(2) << '\n';
    return r.passed ? kOk : kViolation;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

struct DivergenceArgs {
  std::filesystem::path rho;
  std::filesystem::path sigma;
  double alpha = 0.5;
  double z = 1.0;
  std::string kind = "generalized";
};

inline int cmd_divergence(const DivergenceArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const DensityMatrix rho = load_state(a.rho);
    const DensityMatrix sigma = load_state(a.sigma);
    const AlphaZ p(a.alpha, a.z);
    if (a.kind == "tsallis") {
      require_tsallis_alpha(a.alpha);
      if (!is_z_one(p)) throw Error(ErrorKind::InvalidParams, "tsallis divergence uses z = 1");
    } else if (a.kind != "renyi" && a.kind != "generalized" && a.kind != "f") {
      throw Error(ErrorKind::InvalidParams, "unknown kind '" + a.kind + "'");
    }
    const double f = f_az(rho, sigma, p);
    double value = f;
    if (a.kind == "renyi") value = renyi_from_f(f, p);
    if (a.kind == "generalized") value = gen_div_from_f(f, p);
    if (a.kind == "tsallis") value = tsallis_from_f(f, a.alpha);
    json j{{"kind", a.kind}, {"alpha", a.alpha}, {"z", a.z}, {"infinite", std::isinf(value)}};
    j["value"] = std::isinf(value) ? json(nullptr) : json(value);
    j["f"] = std::isinf(f) ? json(nullptr) : json(f);
    out << j.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace azcoh::cli
