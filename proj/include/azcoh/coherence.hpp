#pragma once

// C_{alpha,z}(rho) = min over incoherent sigma of gen_div(rho, sigma), with
// method dispatch, and the orderings between members of the family.

#include <cmath>
#include <sstream>

#include "azcoh/simplex_opt.hpp"

namespace azcoh {

enum class MethodChoice { Auto, Closed, Numeric, Grid };

inline bool is_z_one(const AlphaZ& p) { return std::abs(p.z() - 1.0) <= 1e-12; }

/// Computes C_{alpha,z}(rho). Auto uses the closed form when z = 1 and
/// alpha <= 2, the optimizer otherwise. A warning is attached (not thrown)
/// when (alpha, z) lies outside the proven monotonicity cases.
inline CoherenceResult coherence(const DensityMatrix& rho, const AlphaZ& p, MethodChoice method = MethodChoice::Auto,
                                 const OptimizerConfig& cfg = {}) {
  CoherenceResult res = [&] {
    switch (method) {
      case MethodChoice::Closed:
        if (!is_z_one(p)) throw Error(ErrorKind::InvalidParams, "closed form requires z = 1");
        return coherence_closed_z1(rho, p.alpha());
      case MethodChoice::Grid:
        return grid_oracle(rho, p, GridOracleConfig::for_dim(static_cast<int>(rho.dim())));
      case MethodChoice::Numeric:
        return minimize(rho, p, cfg);
      case MethodChoice::Auto:
        break;
    }
    if (is_z_one(p) && p.alpha() <= 2.0) return coherence_closed_z1(rho, p.alpha());
    return minimize(rho, p, cfg);
  }();
  res.regime = classify_regime(p);
  if (!res.regime.proven() && !res.warning) {
    std::ostringstream os;
    os << "(alpha=" << p.alpha() << ", z=" << p.z() << ") is outside the proven monotonicity cases";
    res.warning = os.str();
  }
  return res;
}

inline double coherence_value(const DensityMatrix& rho, const AlphaZ& p, const OptimizerConfig& cfg = {}) {
  return coherence(rho, p, MethodChoice::Auto, cfg).value;
}

/// Parameters of the three ordering chains:
///   C_{a,z1} <= C_{a,1} <= C_{a,z2}            a in (0,1), max(a,1-a) <= z1 <= 1 <= z2
///   C_{b,b}  <= C_{b,1} <= C_{b,b/2}           b in (1,2]
///   C_{g,g}  <= (sum_k <k|rho^g|k>^{1/g} - 1)/(g - 1)   g > 1
struct OrderingParams {
  double alpha = 0.5;
  double z1 = 0.5;
  double z2 = 2.0;
  double beta = 1.5;
  double gamma = 1.5;

  void validate() const {
    const bool ok = alpha > 0.0 && alpha < 1.0 && z1 >= std::max(alpha, 1.0 - alpha) - 1e-12 && z1 <= 1.0 &&
                    z2 >= 1.0 && beta > 1.0 && beta <= 2.0 && gamma > 1.0;
    if (!ok) throw Error(ErrorKind::InvalidParams, "ordering parameters outside their admissible ranges");
  }
};

struct OrderingChain {
  double low = 0.0, mid = 0.0, high = 0.0;
  double slack_low_mid() const { return mid - low; }
  double slack_mid_high() const { return high - mid; }
  double min_slack() const { return std::min(slack_low_mid(), slack_mid_high()); }
};

struct OrderingReport {
  OrderingChain alpha_chain;  // C_{a,z1}, C_{a,1}, C_{a,z2}
  OrderingChain beta_chain;   // C_{b,b}, C_{b,1}, C_{b,b/2}
  double gamma_value = 0.0;   // C_{g,g}
  double gamma_bound = 0.0;
  double gamma_slack() const { return gamma_bound - gamma_value; }
  double min_slack() const { return std::min({alpha_chain.min_slack(), beta_chain.min_slack(), gamma_slack()}); }
  bool holds(double tolerance = 1e-6) const { return min_slack() >= -tolerance; }
};

inline OrderingReport theorem2_check(const DensityMatrix& rho, const OrderingParams& op, const OptimizerConfig& cfg = {}) {
  op.validate();
  auto c = [&](double a, double z) { return coherence(rho, AlphaZ(a, z), MethodChoice::Auto, cfg).value; };
  OrderingReport r;
  r.alpha_chain = {c(op.alpha, op.z1), c(op.alpha, 1.0), c(op.alpha, op.z2)};
  r.beta_chain = {c(op.beta, op.beta), c(op.beta, 1.0), c(op.beta, op.beta / 2.0)};
  r.gamma_value = c(op.gamma, op.gamma);
  const RealVector w = diagonal_of_power(rho, op.gamma);
  r.gamma_bound = (w.array().pow(1.0 / op.gamma).sum() - 1.0) / (op.gamma - 1.0);
  return r;
}

}  // namespace azcoh
