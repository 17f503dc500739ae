#pragma once

// Seeded samplers for states, unitaries and simplex points.

#include <cstdint>
#include <random>

#include "azcoh/matops.hpp"

namespace azcoh {

using Rng = std::mt19937_64;

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = cplx(n(rng), n(rng));
  return g;
}

/// Thin isometry (rows >= cols) from the QR of a complex Ginibre matrix,
/// phase-corrected so the distribution is Haar.
inline Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const Matrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

inline Matrix random_unitary(Eigen::Index d, Rng& rng) { return random_isometry(d, d, rng); }

/// Hilbert-Schmidt-type random state G G^H / tr with G of size d x rank.
inline DensityMatrix random_state(Eigen::Index d, Rng& rng, Eigen::Index rank = -1) {
  if (rank <= 0) rank = d;
  const Matrix g = gaussian_matrix(d, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return validate_state(m);
}

inline DensityMatrix random_pure_state(Eigen::Index d, Rng& rng) { return random_state(d, rng, 1); }

/// Uniform (Dirichlet(1)) point of the probability simplex.
inline RealVector random_simplex_point(Eigen::Index d, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  RealVector w(d);
  for (Eigen::Index i = 0; i < d; ++i) w(i) = e(rng);
  return w / w.sum();
}

inline DensityMatrix random_diagonal_state(Eigen::Index d, Rng& rng) {
  return DensityMatrix(DiagonalState::normalized(random_simplex_point(d, rng)));
}

}  // namespace azcoh
