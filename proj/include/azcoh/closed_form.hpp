#pragma once

// Coherence results and the analytic values available without optimization:
// the z = 1 formula, the maximally coherent bound, and the pure-qubit
// expressions in terms of the Bloch component c3.

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "azcoh/divergence.hpp"

namespace azcoh {

enum class Method { ClosedForm, Numeric, Grid };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed";
    case Method::Numeric: return "numeric";
    case Method::Grid: return "grid";
  }
  return "?";
}

struct CoherenceResult {
  double value = 0.0;
  DiagonalState optimal_sigma;
  Method method = Method::ClosedForm;
  RegimeClass regime;
  bool converged = true;
  int iterations = 0;
  std::optional<std::string> warning;
};

inline void require_z1_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha != 1.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "alpha must lie in (0,1)u(1,2], got " << alpha;
    throw Error(ErrorKind::InvalidAlpha, os.str());
  }
}

/// Diagonal of rho^alpha in the reference basis, clamped at zero.
inline RealVector diagonal_of_power(const DensityMatrix& rho, double alpha) {
  const Matrix pw = matpow(spectral(rho.hermitian()), alpha);
  return pw.diagonal().real().cwiseMax(0.0);
}

/// C_{alpha,1}(rho) = (sum_k <k|rho^alpha|k>^{1/alpha} - 1)/(alpha - 1).
///
/// The minimizing incoherent state has weights proportional to
/// <k|rho^alpha|k>^{1/alpha}; components with zero weight are set to zero.
inline CoherenceResult coherence_closed_z1(const DensityMatrix& rho, double alpha) {
  require_z1_alpha(alpha);
  const RealVector w = diagonal_of_power(rho, alpha);
  const RealVector root = w.array().pow(1.0 / alpha).matrix();
  const double s = root.sum();
  const AlphaZ p(alpha, 1.0);
  return CoherenceResult{(s - 1.0) / (alpha - 1.0), DiagonalState::normalized(root),
                         Method::ClosedForm, classify_regime(p), true, 0, std::nullopt};
}

/// Tsallis-based coherence min_sigma (f_{alpha,1} - 1)/(alpha - 1); shares
/// its optimal sigma with C_{alpha,1}, where f = (sum_k w_k^{1/alpha})^alpha.
inline double tsallis_coherence(const DensityMatrix& rho, double alpha) {
  require_tsallis_alpha(alpha);
  const RealVector w = diagonal_of_power(rho, alpha);
  const double s = w.array().pow(1.0 / alpha).sum();
  return (std::pow(s, alpha) - 1.0) / (alpha - 1.0);
}

/// (d^{(alpha-1)/alpha} - 1)/(alpha - 1): C_{alpha,1} of a maximally coherent state.
inline double max_coherent_value(int d, double alpha) {
  require_z1_alpha(alpha);
  if (d < 1) throw Error(ErrorKind::InvalidParams, "dimension must be positive");
  if (d == 1) return 0.0;
  return (std::pow(static_cast<double>(d), (alpha - 1.0) / alpha) - 1.0) / (alpha - 1.0);
}

/// |psi><psi| with psi = sum_j e^{i phi_j} |j> / sqrt(d).
inline DensityMatrix max_coherent_state(int d, const RealVector& phases = RealVector()) {
  Eigen::VectorXcd psi(d);
  for (int j = 0; j < d; ++j) {
    const double phi = phases.size() == d ? phases(j) : 0.0;
    psi(j) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), phi);
  }
  return validate_state(psi * psi.adjoint());
}

using Bloch = std::array<double, 3>;

/// (I + c1 X + c2 Y + c3 Z)/2.
inline DensityMatrix bloch_state(const Bloch& c) {
  Matrix m(2, 2);
  m << cplx(1.0 + c[2], 0.0), cplx(c[0], -c[1]), cplx(c[0], c[1]), cplx(1.0 - c[2], 0.0);
  return validate_state(m / 2.0);
}

/// Pure-qubit state with Bloch vector (sqrt(1 - c3^2), 0, c3).
inline DensityMatrix pure_qubit(double c3) {
  return bloch_state({std::sqrt(std::max(0.0, 1.0 - c3 * c3)), 0.0, c3});
}

enum class QubitVariant { ZHalf, ZOne, ZTwo };

/// Closed forms of C_{1/2,z} for a pure qubit with z in {1/2, 1, 2}:
/// 1 - |c3|, 1 - c3^2, and 2 - 2[((1+c3)/2)^{4/3} + ((1-c3)/2)^{4/3}]^3.
inline double qubit_pure_closed(const Bloch& c, QubitVariant v) {
  const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "Bloch vector has length " << norm;
    throw Error(ErrorKind::NotPure, os.str());
  }
  const double c3 = c[2];
  switch (v) {
    case QubitVariant::ZHalf: return 1.0 - std::abs(c3);
    case QubitVariant::ZOne: return 1.0 - c3 * c3;
    case QubitVariant::ZTwo: {
      const double s = std::pow((1.0 + c3) / 2.0, 4.0 / 3.0) + std::pow((1.0 - c3) / 2.0, 4.0 / 3.0);
      return 2.0 - 2.0 * s * s * s;
    }
  }
  return 0.0;
}

}  // namespace azcoh
