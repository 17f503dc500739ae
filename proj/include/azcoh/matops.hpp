#pragma once

// Hermitian spectral calculus: eigendecomposition with a support cutoff,
// real powers of PSD matrices (negative powers act on the support only),
// Schatten norms, and density-matrix validation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "azcoh/error.hpp"

namespace azcoh {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
/// Relative eigenvalue cutoff defining the support of a PSD matrix.
inline constexpr double support = 1e-10;
/// Largest anti-Hermitian part accepted, relative to the Frobenius norm.
inline constexpr double hermitian = 1e-6;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double probability_sum = 1e-12;
}  // namespace tol

/// A square complex matrix equal to its conjugate transpose.
///
/// Construction symmetrizes the input as (A + A^H)/2, so the stored entries
/// are exactly Hermitian; inputs whose anti-Hermitian part exceeds
/// tol::hermitian * ||A||_F are rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& a) {
    if (a.rows() != a.cols()) {
      std::ostringstream os;
      os << "matrix is " << a.rows() << "x" << a.cols();
      throw Error(ErrorKind::NotSquare, os.str());
    }
    m_ = (a + a.adjoint()) / 2.0;
    const double correction = (a - m_).norm();
    if (correction > tol::hermitian * std::max(1.0, a.norm())) {
      std::ostringstream os;
      os << "anti-Hermitian residual " << correction;
      throw Error(ErrorKind::NonHermitian, os.str());
    }
  }

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns
  std::vector<bool> support_mask;

  double max_eigenvalue() const {
    return eigenvalues.size() == 0 ? 0.0 : eigenvalues(eigenvalues.size() - 1);
  }
  std::size_t rank() const {
    return static_cast<std::size_t>(std::count(support_mask.begin(), support_mask.end(), true));
  }
  /// Orthogonal projector onto the support.
  Matrix support_projector() const {
    const Eigen::Index d = eigenvalues.size();
    Matrix p = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      if (support_mask[static_cast<std::size_t>(i)])
        p += eigenvectors.col(i) * eigenvectors.col(i).adjoint();
    return p;
  }
};

inline std::vector<bool> support_of(const RealVector& ascending) {
  const Eigen::Index d = ascending.size();
  std::vector<bool> mask(static_cast<std::size_t>(d), false);
  if (d == 0) return mask;
  const double top = ascending(d - 1);
  if (top <= 0.0) return mask;
  for (Eigen::Index i = 0; i < d; ++i)
    mask[static_cast<std::size_t>(i)] = ascending(i) > tol::support * top;
  return mask;
}

inline SpectralDecomposition spectral(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix(), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::NumericFailure, "Hermitian eigensolver did not converge");
  SpectralDecomposition sd{es.eigenvalues(), es.eigenvectors(), {}};
  sd.support_mask = support_of(sd.eigenvalues);
  return sd;
}

inline SpectralDecomposition spectral(const Matrix& a) { return spectral(HermitianMatrix(a)); }

/// V diag(g(lambda_i) on support, 0 elsewhere) V^H.
template <class Fn>
Matrix apply_on_support(const SpectralDecomposition& sd, Fn&& g) {
  const Eigen::Index d = sd.eigenvalues.size();
  RealVector w = RealVector::Zero(d);
  for (Eigen::Index i = 0; i < d; ++i)
    if (sd.support_mask[static_cast<std::size_t>(i)]) w(i) = g(sd.eigenvalues(i));
  return sd.eigenvectors * w.asDiagonal() * sd.eigenvectors.adjoint();
}

/// Checks that the spectrum is PSD up to the clamping band
/// [-tol::psd * lambda_max, 0].
inline void require_psd(const SpectralDecomposition& sd) {
  if (sd.eigenvalues.size() == 0) return;
  const double lo = sd.eigenvalues(0);
  const double top = std::max(sd.max_eigenvalue(), 0.0);
  if (lo < -tol::psd * top || (top == 0.0 && lo < 0.0)) {
    std::ostringstream os;
    os << "min eigenvalue " << lo << " (max " << top << ")";
    throw Error(ErrorKind::NegativeEigenvalue, os.str());
  }
}

/// A^t for PSD A. Negative and fractional powers act on the support only,
/// so matpow(A, -1) * A is the support projector.
inline Matrix matpow(const SpectralDecomposition& sd, double t) {
  if (t == 0.0 || !std::isfinite(t))
    throw Error(ErrorKind::InvalidParams, "matpow exponent must be finite and nonzero");
  require_psd(sd);
  return apply_on_support(sd, [t](double l) { return std::pow(l, t); });
}

/// F = V_r diag(lambda_r^t) over the support, so F F^dagger = A^{2t}.
inline Matrix power_factor(const SpectralDecomposition& sd, double t) {
  require_psd(sd);
  Matrix f(sd.eigenvectors.rows(), sd.rank());
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    if (sd.support_mask[static_cast<std::size_t>(i)]) f.col(c++) = sd.eigenvectors.col(i) * std::pow(sd.eigenvalues(i), t);
  return f;
}

inline HermitianMatrix matpow(const HermitianMatrix& a, double t) {
  return HermitianMatrix(matpow(spectral(a), t));
}

namespace detail {
inline double schatten_from_values(const RealVector& s, double p) {
  if (p == 0.0 || !std::isfinite(p))
    throw Error(ErrorKind::InvalidParams, "Schatten index must be finite and nonzero");
  const double top = s.size() ? s.maxCoeff() : 0.0;
  if (top <= 0.0) throw Error(ErrorKind::EmptySupport, "operator is zero");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= tol::support * top) continue;
    acc += std::pow(s(i), p);
  }
  return std::pow(acc, 1.0 / p);
}
}  // namespace detail

/// (tr |A|^p)^(1/p); for p < 0 the trace runs over the support only.
inline double schatten_norm(const HermitianMatrix& a, double p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  return detail::schatten_from_values(es.eigenvalues().cwiseAbs(), p);
}

/// Same norm for an arbitrary square operator, through its singular values.
inline double schatten_norm(const Matrix& a, double p) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return detail::schatten_from_values(svd.singularValues(), p);
}

/// A probability vector over the reference basis, i.e. an incoherent state.
class DiagonalState {
 public:
  explicit DiagonalState(RealVector probs) : p_(std::move(probs)) {
    if (p_.size() == 0) throw Error(ErrorKind::InvalidParams, "empty probability vector");
    if ((p_.array() < 0.0).any() || !p_.allFinite())
      throw Error(ErrorKind::InvalidParams, "probabilities must be finite and nonnegative");
    const double s = p_.sum();
    if (std::abs(s - 1.0) > tol::probability_sum) {
      std::ostringstream os;
      os << "probabilities sum to " << s;
      throw Error(ErrorKind::InvalidParams, os.str());
    }
  }

  /// Normalizes a nonnegative weight vector first.
  static DiagonalState normalized(RealVector w) {
    const double s = w.sum();
    if (!(s > 0.0)) throw Error(ErrorKind::InvalidParams, "weights sum to zero");
    return DiagonalState(w / s);
  }

  const RealVector& probs() const noexcept { return p_; }
  Eigen::Index dim() const noexcept { return p_.size(); }

 private:
  RealVector p_;
};

/// Hermitian, PSD, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(const DiagonalState& q) : h_(Matrix(q.probs().cast<cplx>().asDiagonal())) {}

  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const Matrix& matrix() const noexcept { return h_.matrix(); }
  Eigen::Index dim() const noexcept { return h_.dim(); }

  RealVector diagonal() const { return h_.matrix().diagonal().real(); }

 private:
  explicit DensityMatrix(HermitianMatrix h) : h_(std::move(h)) {}
  friend DensityMatrix validate_state(const Matrix& a);

  HermitianMatrix h_;
};

/// Symmetrizes and validates a raw matrix as a quantum state.
inline DensityMatrix validate_state(const Matrix& a) {
  HermitianMatrix h(a);
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol::trace) {
    std::ostringstream os;
    os << "trace is " << tr;
    throw Error(ErrorKind::TraceNotOne, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol::psd) {
    std::ostringstream os;
    os << "min eigenvalue " << es.eigenvalues()(0);
    throw Error(ErrorKind::NotPSD, os.str());
  }
  return DensityMatrix(std::move(h));
}

/// Frobenius norm of the off-diagonal part in the reference basis.
inline double offdiag_norm(const Matrix& a) {
  Matrix b = a;
  b.diagonal().setZero();
  return b.norm();
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace azcoh
