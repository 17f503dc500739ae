#pragma once

// The trace functional f_{alpha,z}(rho, sigma) = tr(sigma^b rho^a sigma^b)^z,
// with a = alpha/z and b = (1-alpha)/(2z), and the divergences built on it.
// Logarithms are natural. A divergent value is returned as +infinity.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "azcoh/matops.hpp"

namespace azcoh {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Order parameters: alpha in (0,1) or (1,inf), z > 0.
class AlphaZ {
 public:
  AlphaZ(double alpha, double z) : alpha_(alpha), z_(z) {
    if (!std::isfinite(alpha) || !std::isfinite(z) || alpha <= 0.0 || alpha == 1.0 || z <= 0.0) {
      std::ostringstream os;
      os << "need alpha in (0,1)u(1,inf) and z > 0, got alpha=" << alpha << " z=" << z;
      throw Error(ErrorKind::InvalidParams, os.str());
    }
  }

  double alpha() const noexcept { return alpha_; }
  double z() const noexcept { return z_; }
  double rho_power() const noexcept { return alpha_ / z_; }
  double sigma_power() const noexcept { return (1.0 - alpha_) / (2.0 * z_); }

 private:
  double alpha_;
  double z_;
};

enum class RegimeCase {
  A,  // alpha in (0,1), z >= max(alpha, 1-alpha)
  B,  // alpha in (1,2], z = 1
  C,  // alpha in (1,2], z = alpha/2
  D,  // alpha > 1, z = alpha
};

inline const char* to_string(RegimeCase c) {
  switch (c) {
    case RegimeCase::A: return "A";
    case RegimeCase::B: return "B";
    case RegimeCase::C: return "C";
    case RegimeCase::D: return "D";
  }
  return "?";
}

/// Every monotonicity case an (alpha, z) pair falls into; empty means unproven.
struct RegimeClass {
  std::vector<RegimeCase> cases;

  bool proven() const noexcept { return !cases.empty(); }
  bool contains(RegimeCase c) const {
    for (auto x : cases)
      if (x == c) return true;
    return false;
  }
  std::string label() const {
    if (cases.empty()) return "Unproven";
    std::string s;
    for (auto c : cases) {
      if (!s.empty()) s += "+";
      s += to_string(c);
    }
    return s;
  }
};

inline RegimeClass classify_regime(const AlphaZ& p) {
  constexpr double eq = 1e-12;
  const double a = p.alpha();
  const double z = p.z();
  RegimeClass r;
  if (a < 1.0 && z >= std::max(a, 1.0 - a) - eq) r.cases.push_back(RegimeCase::A);
  if (a > 1.0 && a <= 2.0 && std::abs(z - 1.0) <= eq) r.cases.push_back(RegimeCase::B);
  if (a > 1.0 && a <= 2.0 && std::abs(z - a / 2.0) <= eq) r.cases.push_back(RegimeCase::C);
  if (a > 1.0 && std::abs(z - a) <= eq) r.cases.push_back(RegimeCase::D);
  return r;
}

/// Powers mu_i^z of the eigenvalues of B B^dagger, taken from the singular
/// values of B so that small eigenvalues keep their relative accuracy.
/// Singular values below 1e-12 * s_max count as zero.
struct SandwichSpectrum {
  RealVector mu_z;
  Matrix left;  // left singular vectors, filled on request

  double trace() const { return mu_z.sum(); }
};

inline SandwichSpectrum sandwich_spectrum(const Matrix& b, double z, bool want_vectors = false) {
  SandwichSpectrum out;
  if (b.cols() == 0) {
    out.mu_z = RealVector::Zero(0);
    out.left = Matrix::Zero(b.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(b, want_vectors ? Eigen::ComputeThinU : 0);
  const RealVector& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  out.mu_z = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-12 * top) out.mu_z(i) = std::pow(sv(i), 2.0 * z);
  if (want_vectors) out.left = svd.matrixU();
  return out;
}

/// tr ((side F)(side F)^dagger)^z, i.e. tr (side A side)^z with A = F F^dagger.
inline double sandwich_trace(const Matrix& side, const Matrix& factor, double z) {
  return sandwich_spectrum(side * factor, z).trace();
}

namespace detail {

/// tr((I - P_sigma) rho) above this means supp(rho) is not inside supp(sigma).
inline constexpr double support_leak = 1e-10;

inline double support_leak_of(const Matrix& rho, const SpectralDecomposition& sigma) {
  const Matrix outside = Matrix::Identity(rho.rows(), rho.cols()) - sigma.support_projector();
  return (outside * rho).trace().real();
}

/// f_{alpha,z} given the factor F of rho^{alpha/z} = F F^dagger and sigma's spectrum.
inline double f_az_from_parts(const Matrix& rho, const Matrix& rho_factor,
                              const SpectralDecomposition& sigma, const AlphaZ& p) {
  if (p.alpha() > 1.0 && support_leak_of(rho, sigma) > support_leak) return kInfinity;
  return sandwich_trace(matpow(sigma, p.sigma_power()), rho_factor, p.z());
}

inline void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << "rho is " << rho.dim() << "-dimensional, sigma is " << sigma.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

}  // namespace detail

/// f_{alpha,z}(rho, sigma). Returns +infinity for alpha > 1 when
/// supp(rho) is not contained in supp(sigma).
inline double f_az(const DensityMatrix& rho, const DensityMatrix& sigma, const AlphaZ& p) {
  detail::require_same_dim(rho, sigma);
  const Matrix rho_factor = power_factor(spectral(rho.hermitian()), p.rho_power() / 2.0);
  return detail::f_az_from_parts(rho.matrix(), rho_factor, spectral(sigma.hermitian()), p);
}

inline double renyi_from_f(double f, const AlphaZ& p) {
  if (std::isinf(f)) return kInfinity;
  return std::log(f) / (p.alpha() - 1.0);
}

inline double gen_div_from_f(double f, const AlphaZ& p) {
  if (std::isinf(f)) return kInfinity;
  return (std::pow(f, 1.0 / p.alpha()) - 1.0) / (p.alpha() - 1.0);
}

inline double tsallis_from_f(double f, double alpha) {
  if (std::isinf(f)) return kInfinity;
  return (f - 1.0) / (alpha - 1.0);
}

/// log-form alpha-z Renyi divergence, log f / (alpha - 1), for unit-trace rho.
inline double renyi_div(const DensityMatrix& rho, const DensityMatrix& sigma, const AlphaZ& p) {
  return renyi_from_f(f_az(rho, sigma, p), p);
}

/// Generalized alpha-z divergence (f^{1/alpha} - 1)/(alpha - 1); its minimum
/// over incoherent sigma is the coherence C_{alpha,z}.
inline double gen_div(const DensityMatrix& rho, const DensityMatrix& sigma, const AlphaZ& p) {
  return gen_div_from_f(f_az(rho, sigma, p), p);
}

inline void require_tsallis_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha != 1.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "Tsallis order must lie in (0,1)u(1,2], got " << alpha;
    throw Error(ErrorKind::InvalidParams, os.str());
  }
}

/// Tsallis relative alpha entropy (f_{alpha,1} - 1)/(alpha - 1).
inline double tsallis_div(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_tsallis_alpha(alpha);
  return tsallis_from_f(f_az(rho, sigma, AlphaZ(alpha, 1.0)), alpha);
}

struct Lemma1Report {
  double f = 0.0;
  double distance = 0.0;    // ||rho - sigma||_F
  bool bound_holds = false;  // f <= 1 (alpha < 1) or f >= 1 (alpha > 1), within 1e-9
  bool unit_value = false;   // |f - 1| < 1e-9
  bool states_equal = false; // distance < 1e-8
  bool equality_consistent() const { return unit_value == states_equal; }
};

inline Lemma1Report lemma1_check(const DensityMatrix& rho, const DensityMatrix& sigma, const AlphaZ& p) {
  Lemma1Report r;
  r.f = f_az(rho, sigma, p);
  r.distance = (rho.matrix() - sigma.matrix()).norm();
  r.bound_holds = p.alpha() < 1.0 ? r.f <= 1.0 + 1e-9 : r.f >= 1.0 - 1e-9;
  r.unit_value = std::abs(r.f - 1.0) < 1e-9;
  r.states_equal = r.distance < 1e-8;
  return r;
}

}  // namespace azcoh
