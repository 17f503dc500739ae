#pragma once

// Kraus channels, incoherent operations, and the empirical axiom suite for
// coherence measures: faithfulness, monotonicity, convexity, strong
// monotonicity and block-diagonal additivity.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "azcoh/random.hpp"

namespace azcoh {

class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> kraus, bool incoherent) : kraus_(std::move(kraus)), incoherent_(incoherent) {
    if (kraus_.empty()) throw Error(ErrorKind::InvalidParams, "channel needs at least one Kraus operator");
    const Eigen::Index rows = kraus_.front().rows(), cols = kraus_.front().cols();
    Matrix sum = Matrix::Zero(cols, cols);
    for (const auto& k : kraus_) {
      if (k.rows() != rows || k.cols() != cols)
        throw Error(ErrorKind::DimensionMismatch, "Kraus operators differ in shape");
      sum += k.adjoint() * k;
    }
    const double residual = (sum - Matrix::Identity(cols, cols)).norm();
    if (residual > 1e-10) {
      std::ostringstream os;
      os << "||sum K^H K - I||_F = " << residual;
      throw Error(ErrorKind::NotTracePreserving, os.str());
    }
    if (incoherent_) {
      for (const auto& k : kraus_)
        for (Eigen::Index j = 0; j < cols; ++j)
          if ((k.col(j).cwiseAbs().array() > 0.0).count() > 1)
            throw Error(ErrorKind::InvalidParams, "incoherent Kraus operator has a column with two nonzeros");
    }
  }

  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  bool incoherent() const noexcept { return incoherent_; }
  Eigen::Index dim_in() const noexcept { return kraus_.front().cols(); }
  Eigen::Index dim_out() const noexcept { return kraus_.front().rows(); }

 private:
  std::vector<Matrix> kraus_;
  bool incoherent_;
};

inline void require_input_dim(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim_in() != rho.dim()) {
    std::ostringstream os;
    os << "channel input dimension " << ch.dim_in() << " but state dimension " << rho.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

/// sum_n K_n rho K_n^H.
inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  require_input_dim(ch, rho);
  Matrix out = Matrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
  return validate_state(out);
}

struct SelectiveOutcome {
  double prob;
  DensityMatrix state;
};

/// Outcomes (tr K_n rho K_n^H, K_n rho K_n^H / p_n); outcomes with p_n < 1e-12 are dropped.
inline std::vector<SelectiveOutcome> selective_outcomes(const KrausChannel& ch, const DensityMatrix& rho) {
  require_input_dim(ch, rho);
  std::vector<SelectiveOutcome> out;
  for (const auto& k : ch.kraus()) {
    const Matrix m = k * rho.matrix() * k.adjoint();
    const double p = m.trace().real();
    if (p < 1e-12) continue;
    out.push_back({p, validate_state(m / p)});
  }
  return out;
}

inline KrausChannel identity_channel(Eigen::Index d) { return KrausChannel({Matrix::Identity(d, d)}, true); }

/// Complete dephasing, Kraus operators |i><i|.
inline KrausChannel dephasing_channel(Eigen::Index d) {
  std::vector<Matrix> ks;
  for (Eigen::Index i = 0; i < d; ++i) {
    Matrix k = Matrix::Zero(d, d);
    k(i, i) = 1.0;
    ks.push_back(k);
  }
  return KrausChannel(std::move(ks), true);
}

/// Single Kraus operator sum_j |perm[j]><j|.
inline KrausChannel permutation_channel(const std::vector<int>& perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  Matrix k = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) k(perm[static_cast<std::size_t>(j)], j) = 1.0;
  return KrausChannel({k}, true);
}

/// Random incoherent channel with m Kraus operators
/// K_n = sum_{j in S_n} a_{n,j} |pi_n(j)><j|, pi_n a random permutation and
/// S_n a random column subset. Each K_n is injective on its columns, so
/// K_n^H K_n is diagonal; columns are rescaled so sum_n |a_{n,j}|^2 = 1.
inline KrausChannel sample_incoherent(int d, int m, std::uint64_t seed) {
  if (d < 2 || m < 1) throw Error(ErrorKind::InvalidParams, "need d >= 2 and m >= 1");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution keep(0.5);
  std::vector<Matrix> ks(static_cast<std::size_t>(m), Matrix::Zero(d, d));
  std::vector<int> covered(static_cast<std::size_t>(d), 0);
  std::vector<std::vector<int>> perms;
  for (int n = 0; n < m; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int j = 0; j < d; ++j) {
      const cplx a(normal(rng), normal(rng));
      if (m > 1 && !keep(rng)) continue;
      ks[static_cast<std::size_t>(n)](perm[static_cast<std::size_t>(j)], j) = a;
      ++covered[static_cast<std::size_t>(j)];
    }
    perms.push_back(std::move(perm));
  }
  for (int j = 0; j < d; ++j) {
    if (covered[static_cast<std::size_t>(j)] == 0) ks[0](perms[0][static_cast<std::size_t>(j)], j) = cplx(normal(rng), normal(rng));
    double norm2 = 0.0;
    for (const auto& k : ks) norm2 += k.col(j).squaredNorm();
    for (auto& k : ks) k.col(j) /= std::sqrt(norm2);
  }
  return KrausChannel(std::move(ks), true);
}

/// Random measure-and-prepare incoherent channel: K_n = |k_n><phi_n| with
/// {phi_n} the rows of a random m x d isometry (m >= d) and k_n uniform.
/// These operators collapse coherent superpositions onto one basis state.
inline KrausChannel sample_measure_prepare(int d, int m, std::uint64_t seed) {
  if (d < 2 || m < d) throw Error(ErrorKind::InvalidParams, "need d >= 2 and m >= d");
  Rng rng(seed);
  const Matrix v = random_isometry(m, d, rng);
  std::uniform_int_distribution<int> target(0, d - 1);
  std::vector<Matrix> ks;
  for (int n = 0; n < m; ++n) {
    Matrix k = Matrix::Zero(d, d);
    k.row(target(rng)) = v.row(n);
    ks.push_back(std::move(k));
  }
  return KrausChannel(std::move(ks), true);
}

/// Random CPTP map: a Haar isometry d -> d*m sliced into m Kraus blocks.
inline KrausChannel sample_cptp(int d, int m, std::uint64_t seed) {
  if (d < 2 || m < 1) throw Error(ErrorKind::InvalidParams, "need d >= 2 and m >= 1");
  Rng rng(seed);
  const Matrix v = random_isometry(static_cast<Eigen::Index>(d) * m, d, rng);
  std::vector<Matrix> ks;
  for (int n = 0; n < m; ++n) ks.push_back(v.block(static_cast<Eigen::Index>(n) * d, 0, d, d));
  return KrausChannel(std::move(ks), false);
}

/// Direct sum p_1 rho_1 + ... placed on the block diagonal.
inline DensityMatrix block_diagonal(const std::vector<double>& weights, const std::vector<DensityMatrix>& blocks) {
  if (weights.size() != blocks.size() || blocks.empty())
    throw Error(ErrorKind::InvalidParams, "weights and blocks differ in count");
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.dim();
  Matrix m = Matrix::Zero(total, total);
  Eigen::Index off = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    m.block(off, off, blocks[i].dim(), blocks[i].dim()) = weights[i] * blocks[i].matrix();
    off += blocks[i].dim();
  }
  return validate_state(m);
}

/// A coherence functional rho -> C(rho).
using CoherenceMeasure = std::function<double(const DensityMatrix&)>;

struct AxiomViolation {
  double max_violation = 0.0;  // positive means the axiom was violated by that much
  int worst_trial = -1;
  std::optional<Matrix> worst_state;
  int checks = 0;

  void record(double v, int trial, const Matrix& state) {
    ++checks;
    if (worst_trial < 0 || v > max_violation) {
      max_violation = v;
      worst_trial = trial;
      worst_state = state;
    }
  }
};

struct AxiomReport {
  AxiomViolation faithfulness;   // C1
  AxiomViolation monotonicity;   // C2
  AxiomViolation convexity;      // C3
  AxiomViolation strong_monotonicity;  // C4
  AxiomViolation additivity;     // block-diagonal additivity, 2 and 3 blocks

  double max_violation() const {
    return std::max({faithfulness.max_violation, monotonicity.max_violation, convexity.max_violation,
                     strong_monotonicity.max_violation, additivity.max_violation});
  }
  bool passed(double tolerance) const { return max_violation() <= tolerance; }
};

struct AxiomSuiteConfig {
  int trials = 200;
  std::uint64_t seed = 0;
  int max_dim = 4;
  /// C3 mixes up to this many states.
  int max_mixture = 4;
};

/// Runs every axiom on random instances. Violations are data:
///   C1: C(rho) for diagonal rho; max(0, -C) for coherent rho, and 1 when a
///       coherent state (off-diagonal mass > 1e-8) has C <= 1e-9.
///   C2: C(Lambda(rho)) - C(rho), Lambda a sampled incoherent channel.
///   C3: C(sum p_n rho_n) - sum p_n C(rho_n).
///   C4: sum_n p_n C(rho_n') - C(rho) over selective outcomes.
///   additivity: |C(p rho_1 (+) (1-p) rho_2) - p C(rho_1) - (1-p) C(rho_2)|;
///       odd trials use three blocks.
inline AxiomReport axiom_suite(const CoherenceMeasure& measure, const AxiomSuiteConfig& cfg) {
  if (cfg.trials < 1 || cfg.max_dim < 2 || cfg.max_mixture < 2)
    throw Error(ErrorKind::InvalidParams, "invalid axiom suite configuration");
  Rng rng(cfg.seed);
  std::uniform_int_distribution<int> pick_dim(2, cfg.max_dim);
  std::uniform_int_distribution<int> pick_mix(2, cfg.max_mixture);
  std::uniform_int_distribution<int> pick_kraus(1, 4);
  std::uniform_int_distribution<std::uint64_t> seeds;
  AxiomReport rep;

  for (int t = 0; t < cfg.trials; ++t) {
    const int d = pick_dim(rng);

    // C1
    {
      const DensityMatrix diag = random_diagonal_state(d, rng);
      rep.faithfulness.record(measure(diag), t, diag.matrix());
      const DensityMatrix rho = random_state(d, rng, 1 + t % d);
      const double c = measure(rho);
      double v = std::max(0.0, -c);
      if (offdiag_norm(rho.matrix()) > 1e-8 && c <= 1e-9) v = std::max(v, 1.0);
      rep.faithfulness.record(v, t, rho.matrix());
    }

    const DensityMatrix rho = random_state(d, rng, 1 + (t / 2) % d);
    const double c_rho = measure(rho);
    const KrausChannel ch = (t % 3 == 2) ? sample_measure_prepare(d, d + static_cast<int>(seeds(rng) % 3), seeds(rng))
                                         : sample_incoherent(d, pick_kraus(rng), seeds(rng));

    // C2
    {
      const DensityMatrix out = apply(ch, rho);
      rep.monotonicity.record(measure(out) - c_rho, t, rho.matrix());
    }

    // C4
    {
      double avg = 0.0;
      for (const auto& o : selective_outcomes(ch, rho)) avg += o.prob * measure(o.state);
      rep.strong_monotonicity.record(avg - c_rho, t, rho.matrix());
    }

    // C3
    {
      const int k = pick_mix(rng);
      const RealVector w = random_simplex_point(k, rng);
      Matrix mix = Matrix::Zero(d, d);
      double avg = 0.0;
      for (int i = 0; i < k; ++i) {
        const DensityMatrix s = random_state(d, rng, 1 + (i + t) % d);
        mix += w(i) * s.matrix();
        avg += w(i) * measure(s);
      }
      const DensityMatrix mixed = validate_state(mix);
      rep.convexity.record(measure(mixed) - avg, t, mixed.matrix());
    }

    // Block additivity
    {
      const int nblocks = (t % 2 == 1 && cfg.max_dim >= 3) ? 3 : 2;
      std::vector<int> dims(static_cast<std::size_t>(nblocks), 1);
      int spare = cfg.max_dim - nblocks;
      for (auto& bd : dims) {
        const int extra = spare > 0 ? std::uniform_int_distribution<int>(0, spare)(rng) : 0;
        bd += extra;
        spare -= extra;
      }
      if (std::all_of(dims.begin(), dims.end(), [](int x) { return x == 1; })) dims[0] = 2;
      const RealVector w = random_simplex_point(nblocks, rng);
      std::vector<double> weights(w.data(), w.data() + nblocks);
      std::vector<DensityMatrix> blocks;
      double expected = 0.0;
      for (int i = 0; i < nblocks; ++i) {
        blocks.push_back(random_state(dims[static_cast<std::size_t>(i)], rng));
        expected += weights[static_cast<std::size_t>(i)] * measure(blocks.back());
      }
      const DensityMatrix joint = block_diagonal(weights, blocks);
      rep.additivity.record(std::abs(measure(joint) - expected), t, joint.matrix());
    }
  }
  return rep;
}

}  // namespace azcoh
