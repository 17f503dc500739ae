#pragma once

// Minimization of q -> gen_div(rho, diag(q)) over the probability simplex.
//
// minimize() runs exponentiated-gradient (mirror descent) steps with a
// backtracking step size from several starting points. grid_oracle() is an
// exhaustive search for d <= 3 that shares no code with the optimizer beyond
// f_az itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "azcoh/closed_form.hpp"
#include "azcoh/random.hpp"

namespace azcoh {

struct OptimizerConfig {
  int max_iters = 10000;
  double grad_tol = 1e-8;
  double step_init = 0.1;
  int restarts = 10;
  double floor = 1e-12;
  std::uint64_t seed = 0;
  /// Seed restart 0 with the z = 1 optimum; otherwise every start is random.
  bool warm_start = true;
  /// Called after every iteration with (restart, iteration, incumbent value).
  std::function<void(int, int, double)> observer;
};

struct GridOracleConfig {
  int dim = 2;
  double step = 1e-3;
  int refine_rounds = 2;

  static GridOracleConfig for_dim(int d) { return GridOracleConfig{d, d == 2 ? 1e-3 : 5e-3, 2}; }
};

/// Diagonal entries of rho below this are treated as outside its support.
inline constexpr double kInactiveDiagonal = 1e-14;

/// The objective q -> gen_div(rho, diag(q)) with a factor of rho^{alpha/z} cached.
///
/// Indices k with <k|rho|k> = 0 are inactive: rho's row and column k vanish,
/// so q_k does not enter f and the minimizer puts no weight there.
class DiagonalObjective {
 public:
  DiagonalObjective(const DensityMatrix& rho, const AlphaZ& p) : p_(p), dim_(rho.dim()) {
    const RealVector diag = rho.diagonal();
    for (Eigen::Index k = 0; k < dim_; ++k)
      if (diag(k) > kInactiveDiagonal) active_.push_back(k);
    const auto n = static_cast<Eigen::Index>(active_.size());
    Matrix sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = rho.matrix()(active_[i], active_[j]);
    if (n > 0) rho_factor_ = power_factor(spectral(sub), p.rho_power() / 2.0);
  }

  const AlphaZ& params() const noexcept { return p_; }
  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<Eigen::Index>& active() const noexcept { return active_; }
  Eigen::Index active_dim() const noexcept { return static_cast<Eigen::Index>(active_.size()); }

  RealVector restrict(const RealVector& q) const {
    RealVector r(active_dim());
    for (Eigen::Index i = 0; i < active_dim(); ++i) r(i) = q(active_[i]);
    return r;
  }

  RealVector expand(const RealVector& qa) const {
    RealVector q = RealVector::Zero(dim_);
    for (Eigen::Index i = 0; i < active_dim(); ++i) q(active_[i]) = qa(i);
    return q;
  }

  /// f_{alpha,z}(rho, diag(q)) for a nonnegative (not necessarily normalized) q.
  double f(const RealVector& q) const { return f_active(restrict(q), nullptr); }

  double value(const RealVector& q) const { return gen_div_from_f(f(q), p_); }

  /// Objective on the active coordinates. When grad is given it receives
  /// d gen_div / d q_k = f^{1/alpha - 1} (1 - alpha) (M^z)_kk / (alpha (alpha - 1) q_k)
  /// with M = diag(q)^b rho^a diag(q)^b.
  double value_active(const RealVector& qa, RealVector* grad) const {
    const double fv = f_active(qa, grad);
    const double a = p_.alpha();
    if (grad && std::isfinite(fv)) *grad *= std::pow(fv, 1.0 / a - 1.0) / (a * (a - 1.0));
    return gen_div_from_f(fv, p_);
  }

 private:
  double f_active(const RealVector& qa, RealVector* df) const {
    const Eigen::Index n = active_dim();
    const double a = p_.alpha();
    if ((qa.array() <= 0.0).any()) {
      if (a > 1.0) return kInfinity;
      if (df) throw Error(ErrorKind::InvalidParams, "gradient needs a strictly positive point");
    }
    const RealVector s = qa.array().pow(p_.sigma_power()).matrix();
    const SandwichSpectrum sp = sandwich_spectrum(s.cast<cplx>().asDiagonal() * rho_factor_, p_.z(), df != nullptr);
    if (df) {
      // (M^z)_kk = sum_i |U_ki|^2 mu_i^z
      df->resize(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        const double mz_kk = sp.left.cols() ? (sp.left.row(k).cwiseAbs2() * sp.mu_z)(0) : 0.0;
        (*df)(k) = (1.0 - a) * mz_kk / qa(k);
      }
    }
    return sp.trace();
  }

  AlphaZ p_;
  Eigen::Index dim_;
  std::vector<Eigen::Index> active_;
  Matrix rho_factor_;
};

/// Central finite-difference gradient of q -> gen_div(rho, diag(q)) with
/// step 1e-6 (shrunk near the boundary), projected to sum zero.
inline RealVector gradient(const DensityMatrix& rho, const AlphaZ& p, const DiagonalState& q) {
  constexpr double h = 1e-6;
  const DiagonalObjective obj(rho, p);
  const RealVector& x = q.probs();
  if ((x.array() <= 0.0).any())
    throw Error(ErrorKind::InvalidParams, "gradient needs a strictly positive point");
  RealVector g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double hk = std::min(h, x(k) / 2.0);
    RealVector up = x, down = x;
    up(k) += hk;
    down(k) -= hk;
    g(k) = (obj.value(up) - obj.value(down)) / (2.0 * hk);
  }
  if (!g.allFinite()) throw Error(ErrorKind::InvalidParams, "objective is infinite near q");
  return g.array() - g.mean();
}

namespace detail {

/// Weights proportional to <k|rho^alpha|k>^{1/alpha}: the z = 1 optimum,
/// used as a starting point for any (alpha, z).
inline RealVector z1_start(const DensityMatrix& rho, double alpha) {
  const RealVector w = diagonal_of_power(rho, alpha).array().pow(1.0 / alpha).matrix();
  return w / w.sum();
}

inline RealVector apply_floor(RealVector q, double floor) {
  q = q.cwiseMax(floor);
  return q / q.sum();
}

/// First-order stationarity on the simplex, || q .* (g - <q,g>) ||_2.
/// Vanishes at interior stationary points and at boundary KKT points.
inline double stationarity(const RealVector& q, const RealVector& g) {
  return (q.array() * (g.array() - q.dot(g))).matrix().norm();
}

struct DescentRun {
  RealVector q;
  double value;
  double residual;
  int iterations;
  bool converged;
};

inline DescentRun exponentiated_descent(const DiagonalObjective& obj, RealVector q, const OptimizerConfig& cfg,
                                        int restart) {
  const double band = 8.0 * std::numeric_limits<double>::epsilon();
  RealVector g;
  double val = obj.value_active(q, &g);
  double res = stationarity(q, g);
  double eta = cfg.step_init;
  int it = 0;
  for (; it < cfg.max_iters && res >= cfg.grad_tol; ++it) {
    bool accepted = false;
    while (eta > 1e-30) {
      const RealVector u = g.array() - q.dot(g);
      const double shift = u.minCoeff();
      RealVector trial = (q.array() * (-eta * (u.array() - shift)).exp()).matrix();
      trial = apply_floor(trial / trial.sum(), cfg.floor);
      RealVector tg;
      const double tv = obj.value_active(trial, &tg);
      const double tres = std::isfinite(tv) ? stationarity(trial, tg) : kInfinity;
      const bool better = tv < val;
      const bool level = std::isfinite(tv) && tv <= val + band * std::max(1.0, std::abs(val)) && tres < res;
      if (better || level) {
        q = std::move(trial);
        g = std::move(tg);
        val = std::min(val, tv);
        res = tres;
        eta = std::min(eta * 2.0, 1e12);
        accepted = true;
        break;
      }
      eta /= 2.0;
    }
    if (cfg.observer) cfg.observer(restart, it, val);
    if (!accepted) break;
  }
  return DescentRun{std::move(q), val, res, it, res < cfg.grad_tol};
}

}  // namespace detail

/// Minimizes gen_div(rho, diag(q), p) over the simplex from cfg.restarts
/// starting points and returns the best. converged is false when no start
/// reached the stationarity tolerance; the best value is still reported.
inline CoherenceResult minimize(const DensityMatrix& rho, const AlphaZ& p, const OptimizerConfig& cfg = {}) {
  if (cfg.restarts < 1 || cfg.max_iters < 1 || !(cfg.grad_tol > 0.0) || !(cfg.step_init > 0.0) ||
      !(cfg.floor > 0.0) || cfg.floor * static_cast<double>(rho.dim()) >= 1.0)
    throw Error(ErrorKind::InvalidParams, "invalid optimizer configuration");

  const DiagonalObjective obj(rho, p);
  const Eigen::Index n = obj.active_dim();
  if (n <= 1) {
    RealVector q = obj.expand(RealVector::Ones(n));
    return CoherenceResult{0.0, DiagonalState(q), Method::Numeric, classify_regime(p), true, 0, std::nullopt};
  }

  Rng rng(cfg.seed);
  std::optional<detail::DescentRun> best;
  int total_iters = 0;
  bool any_converged = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    RealVector start = (r == 0 && cfg.warm_start) ? obj.restrict(detail::z1_start(rho, p.alpha()))
                                                  : random_simplex_point(n, rng);
    if (r == 0 && cfg.warm_start) start /= start.sum();
    auto run = detail::exponentiated_descent(obj, detail::apply_floor(start, cfg.floor), cfg, r);
    total_iters += run.iterations;
    any_converged = any_converged || run.converged;
    if (!best || run.value < best->value) best = std::move(run);
  }

  // Components at the floor are zeroed when that does not raise the value.
  RealVector q = best->q;
  double value = best->value;
  RealVector clamped = q;
  for (Eigen::Index i = 0; i < n; ++i)
    if (clamped(i) <= cfg.floor) clamped(i) = 0.0;
  if ((clamped.array() < q.array()).any()) {
    clamped /= clamped.sum();
    const double cv = obj.value_active(clamped, nullptr);
    if (cv <= value) {
      q = clamped;
      value = cv;
    }
  }

  CoherenceResult res{value, DiagonalState::normalized(obj.expand(q)), Method::Numeric, classify_regime(p),
                      any_converged, total_iters, std::nullopt};
  if (!any_converged) {
    std::ostringstream os;
    os << "no restart reached stationarity " << cfg.grad_tol << " (best residual " << best->residual << ")";
    res.warning = os.str();
  }
  return res;
}

/// Exhaustive grid search over the simplex for d in {2, 3}, followed by
/// refine_rounds of 10x finer local grids around the incumbent.
inline CoherenceResult grid_oracle(const DensityMatrix& rho, const AlphaZ& p, const GridOracleConfig& cfg) {
  const int d = static_cast<int>(rho.dim());
  if (d > 3) throw Error(ErrorKind::DimensionTooLarge, "grid oracle supports d <= 3");
  if (d != cfg.dim || d < 2) throw Error(ErrorKind::DimensionMismatch, "grid config dimension differs from state");
  if (!(cfg.step > 0.0) || cfg.refine_rounds < 0) throw Error(ErrorKind::InvalidParams, "invalid grid config");

  const Matrix rho_factor = power_factor(spectral(rho.hermitian()), p.rho_power() / 2.0);
  auto evaluate = [&](const RealVector& q) {
    const Matrix sigma = q.cast<cplx>().asDiagonal();
    return gen_div_from_f(detail::f_az_from_parts(rho.matrix(), rho_factor, spectral(sigma), p), p);
  };

  RealVector best_q;
  double best = kInfinity;
  auto consider = [&](double x, double y) {
    constexpr double slack = 1e-12;
    if (x < -slack || y < -slack) return;
    RealVector q(d);
    if (d == 2) {
      if (x > 1.0 + slack) return;
      x = std::clamp(x, 0.0, 1.0);
      q << x, 1.0 - x;
    } else {
      const double rest = 1.0 - x - y;
      if (rest < -slack) return;
      q << std::max(x, 0.0), std::max(y, 0.0), std::max(rest, 0.0);
      q /= q.sum();
    }
    const double v = evaluate(q);
    if (v < best) {
      best = v;
      best_q = q;
    }
  };

  const long coarse = std::lround(1.0 / cfg.step);
  for (long i = 0; i <= coarse; ++i) {
    if (d == 2) {
      consider(static_cast<double>(i) / static_cast<double>(coarse), 0.0);
    } else {
      for (long j = 0; i + j <= coarse; ++j)
        consider(static_cast<double>(i) / static_cast<double>(coarse), static_cast<double>(j) / static_cast<double>(coarse));
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::NumericFailure, "objective infinite on the whole grid");

  double h = 1.0 / static_cast<double>(coarse);
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    const double fine = h / 10.0;
    const RealVector center = best_q;
    for (int i = -10; i <= 10; ++i) {
      if (d == 2) {
        consider(center(0) + i * fine, 0.0);
      } else {
        for (int j = -10; j <= 10; ++j) consider(center(0) + i * fine, center(1) + j * fine);
      }
    }
    h = fine;
  }

  return CoherenceResult{best, DiagonalState::normalized(best_q), Method::Grid, classify_regime(p), true, 0,
                         std::nullopt};
}

}  // namespace azcoh
