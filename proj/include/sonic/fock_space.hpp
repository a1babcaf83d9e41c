#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "sonic/errors.hpp"

namespace sonic {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kNormCeiling = 1.0 + 1e-12;
/// Hard limit for automatic cutoff selection.
inline constexpr std::size_t kMaxCutoff = 500;

/// Single-mode state truncated to |0>..|N>.
class FockVector {
 public:
  explicit FockVector(CVector amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.size() < 2) {
      detail::fail(ErrorKind::CutoffTooSmall, "Fock cutoff must be >= 1");
    }
    const double n2 = amp_.squaredNorm();
    if (!(n2 > 0.0) || n2 > kNormCeiling) {
      detail::fail(ErrorKind::NotNormalized,
                   "Fock vector norm^2 " + std::to_string(n2) + " outside (0, 1]");
    }
  }

  /// |n> in a basis truncated at `cutoff`.
  static FockVector basis(std::size_t n, std::size_t cutoff) {
    if (n > cutoff) detail::fail(ErrorKind::CutoffTooSmall, "basis index exceeds cutoff");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(cutoff + 1));
    v(static_cast<Eigen::Index>(n)) = 1.0;
    return FockVector(std::move(v));
  }

  /// Normalizes an arbitrary non-zero vector.
  static FockVector from_unnormalized(const CVector& v) {
    const double n = v.norm();
    if (!(n > 0.0)) detail::fail(ErrorKind::NotNormalized, "zero vector has no direction");
    return FockVector(v / n);
  }

  std::size_t cutoff() const { return static_cast<std::size_t>(amp_.size()) - 1; }
  std::size_t dimension() const { return static_cast<std::size_t>(amp_.size()); }
  const CVector& amplitudes() const { return amp_; }
  Complex operator[](std::size_t n) const { return amp_(static_cast<Eigen::Index>(n)); }

  double norm_squared() const { return amp_.squaredNorm(); }
  bool is_normalized(double tol = kNormTolerance) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  double mean_number() const {
    double acc = 0.0;
    for (Eigen::Index n = 0; n < amp_.size(); ++n) {
      acc += static_cast<double>(n) * std::norm(amp_(n));
    }
    return acc;
  }

  /// Zero-padded copy with a larger cutoff.
  FockVector padded(std::size_t cutoff) const {
    if (cutoff < this->cutoff()) {
      detail::fail(ErrorKind::CutoffTooSmall, "cannot pad to a smaller cutoff");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(cutoff + 1));
    v.head(amp_.size()) = amp_;
    return FockVector(std::move(v));
  }

 private:
  CVector amp_;
};

/// Pure two-mode state sum_{mn} c_mn |m>_I |n>_II; rows index mode I.
class TwoModeState {
 public:
  explicit TwoModeState(CMatrix amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.rows() < 2 || amp_.rows() != amp_.cols()) {
      detail::fail(ErrorKind::CutoffTooSmall, "two-mode amplitudes must be square with N >= 1");
    }
    if (amp_.squaredNorm() > kNormCeiling) {
      detail::fail(ErrorKind::NotNormalized, "two-mode state norm exceeds 1");
    }
  }

  std::size_t cutoff() const { return static_cast<std::size_t>(amp_.rows()) - 1; }
  const CMatrix& amplitudes() const { return amp_; }
  Complex operator()(std::size_t m, std::size_t n) const {
    return amp_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  }

  double norm_squared() const { return amp_.squaredNorm(); }
  /// Probability weight lost to truncation, 1 - ||c||^2.
  double norm_deficit() const { return 1.0 - norm_squared(); }

 private:
  CMatrix amp_;
};

struct DensityOperator {
  CMatrix matrix;
  double trace_deficit = 0.0;  // 1 - tr(rho)

  std::size_t cutoff() const { return static_cast<std::size_t>(matrix.rows()) - 1; }
  double trace() const { return matrix.trace().real(); }
  double mean_number() const {
    double acc = 0.0;
    for (Eigen::Index n = 0; n < matrix.rows(); ++n) {
      acc += static_cast<double>(n) * matrix(n, n).real();
    }
    return acc;
  }
  bool is_hermitian(double tol = 1e-12) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
};

// ---------------------------------------------------------------------------
// Coherent states
// ---------------------------------------------------------------------------

struct CoherentSpec {
  Complex amplitude{0.0, 0.0};
  std::size_t cutoff = 0;
  double epsilon = 1e-12;  // allowed truncated Poisson tail
};

/// Poisson weight beyond the cutoff, sum_{n > N} e^{-|z|^2} |z|^{2n} / n!.
inline double coherent_tail(Complex amplitude, std::size_t cutoff) {
  const double mu = std::norm(amplitude);
  if (mu == 0.0) return 0.0;
  const double log_mu = std::log(mu);
  double tail = 0.0;
  for (std::size_t n = cutoff + 1;; ++n) {
    const double dn = static_cast<double>(n);
    const double term = std::exp(-mu + dn * log_mu - std::lgamma(dn + 1.0));
    tail += term;
    if (dn > mu && term <= 1e-17 * tail) break;
    if (term == 0.0 && dn > mu) break;
  }
  return tail;
}

/// Smallest N >= 1 whose coherent tail is below epsilon.
inline std::size_t coherent_cutoff(Complex amplitude, double epsilon = 1e-12,
                                   std::size_t max_cutoff = kMaxCutoff) {
  for (std::size_t n = 1; n <= max_cutoff; ++n) {
    if (coherent_tail(amplitude, n) < epsilon) return n;
  }
  detail::fail(ErrorKind::CutoffTooLarge,
               "coherent tail needs a cutoff above " + std::to_string(max_cutoff));
}

/// A truncated state plus what the truncation cost.
struct PreparedState {
  FockVector state;
  double tail = 0.0;             // weight discarded by the cutoff
  double renormalization = 1.0;  // factor applied to the truncated series
};

/// c_n = e^{-|z|^2/2} z^n / sqrt(n!) built by the ratio recurrence
/// c_{n+1} = c_n z / sqrt(n+1), then renormalized on the truncated basis.
inline PreparedState coherent_state(const CoherentSpec& spec) {
  if (spec.cutoff < 1) detail::fail(ErrorKind::CutoffTooSmall, "coherent cutoff must be >= 1");
  const double tail = coherent_tail(spec.amplitude, spec.cutoff);
  if (tail >= spec.epsilon) {
    detail::fail(ErrorKind::CutoffTooSmall,
                 "coherent tail " + std::to_string(tail) + " >= epsilon at cutoff " +
                     std::to_string(spec.cutoff));
  }
  const auto dim = static_cast<Eigen::Index>(spec.cutoff + 1);
  CVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(spec.amplitude));
  for (Eigen::Index n = 0; n + 1 < dim; ++n) {
    c(n + 1) = c(n) * spec.amplitude / std::sqrt(static_cast<double>(n + 1));
  }
  const double factor = 1.0 / c.norm();
  return {FockVector(c * factor), tail, factor};
}

// ---------------------------------------------------------------------------
// Two-mode squeezed vacuum
// ---------------------------------------------------------------------------

inline void check_squeeze(double r) {
  if (!(r >= 0.0)) detail::fail(ErrorKind::NegativeSqueeze, "squeeze parameter must be >= 0");
}

/// Analytic truncation loss tanh^{2(N+1)} r.
inline double squeezed_vacuum_tail(double r, std::size_t cutoff) {
  check_squeeze(r);
  return std::pow(std::tanh(r), 2.0 * static_cast<double>(cutoff + 1));
}

/// Smallest N >= 1 with tanh^{2(N+1)} r < epsilon.
inline std::size_t squeezed_cutoff(double r, double epsilon = 1e-12,
                                   std::size_t max_cutoff = kMaxCutoff) {
  check_squeeze(r);
  const double t = std::tanh(r);
  if (t == 0.0) return 1;
  // N + 1 > ln(eps) / (2 ln t); scan from the estimate to absorb rounding
  const double estimate = std::log(epsilon) / (2.0 * std::log(t)) - 1.0;
  if (!(estimate < static_cast<double>(max_cutoff) + 1.0)) {
    detail::fail(ErrorKind::CutoffTooLarge,
                 "squeezed tail needs a cutoff above " + std::to_string(max_cutoff));
  }
  std::size_t n = estimate > 2.0 ? static_cast<std::size_t>(estimate) - 1 : 1;
  while (squeezed_vacuum_tail(r, n) >= epsilon) {
    if (++n > max_cutoff) {
      detail::fail(ErrorKind::CutoffTooLarge,
                   "squeezed tail needs a cutoff above " + std::to_string(max_cutoff));
    }
  }
  return n;
}

/// c_nn = tanh^n r / cosh r, zero off the diagonal. Not renormalized: the
/// missing weight is squeezed_vacuum_tail(r, N).
inline TwoModeState two_mode_squeezed_vacuum(double r, std::size_t cutoff) {
  check_squeeze(r);
  if (cutoff < 1) detail::fail(ErrorKind::CutoffTooSmall, "cutoff must be >= 1");
  const auto dim = static_cast<Eigen::Index>(cutoff + 1);
  const double t = std::tanh(r);
  CMatrix c = CMatrix::Zero(dim, dim);
  double diag = 1.0 / std::cosh(r);
  for (Eigen::Index n = 0; n < dim; ++n) {
    c(n, n) = diag;
    diag *= t;
  }
  return TwoModeState(std::move(c));
}

/// exp(tanh r a^dag b^dag)|0,0> summed term by term with the pair-creation
/// operator acting on the full amplitude matrix, times the pair normalizer
/// 1/cosh r. Shares no code with two_mode_squeezed_vacuum.
///
/// One cosh^{-1} r per mode pair is what normalizes the state; a squared
/// normalizer (as a product over both region labels would give) leaves the
/// norm at 1/cosh^2 r.
inline TwoModeState squeezed_vacuum_exponential(double r, std::size_t cutoff) {
  check_squeeze(r);
  if (cutoff < 1) detail::fail(ErrorKind::CutoffTooSmall, "cutoff must be >= 1");
  const auto dim = static_cast<Eigen::Index>(cutoff + 1);
  const double t = std::tanh(r);

  auto pair_create = [dim](const CMatrix& in) {
    CMatrix out = CMatrix::Zero(dim, dim);
    for (Eigen::Index m = 0; m + 1 < dim; ++m) {
      for (Eigen::Index n = 0; n + 1 < dim; ++n) {
        out(m + 1, n + 1) = std::sqrt(static_cast<double>(m + 1)) *
                            std::sqrt(static_cast<double>(n + 1)) * in(m, n);
      }
    }
    return out;
  };

  CMatrix term = CMatrix::Zero(dim, dim);
  term(0, 0) = 1.0;
  CMatrix sum = term;
  for (Eigen::Index k = 1; k < dim; ++k) {
    term = pair_create(term) * (t / static_cast<double>(k));
    sum += term;
  }
  return TwoModeState(sum / std::cosh(r));
}

// ---------------------------------------------------------------------------
// Reduced states, entropy, fidelity
// ---------------------------------------------------------------------------

enum class Mode { first, second };

/// Partial trace over the other mode.
inline DensityOperator reduced_state(const TwoModeState& state, Mode keep) {
  const CMatrix& c = state.amplitudes();
  DensityOperator rho;
  rho.matrix = keep == Mode::first ? CMatrix(c * c.adjoint())
                                   : CMatrix(c.transpose() * c.conjugate());
  rho.trace_deficit = 1.0 - rho.trace();
  return rho;
}

/// Eigenvalues of the reduced state in descending order. Values in
/// [-1e-10, 0) are clipped to zero; anything more negative is an error.
inline std::vector<double> schmidt_spectrum(const TwoModeState& state) {
  const DensityOperator rho = reduced_state(state, Mode::first);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  std::vector<double> out(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double p = ev(i);
    if (p < 0.0) {
      if (p < -1e-10) {
        detail::fail(ErrorKind::NegativeEigenvalue,
                     "reduced state eigenvalue " + std::to_string(p) + " below -1e-10");
      }
      p = 0.0;
    }
    out[static_cast<std::size_t>(i)] = p;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Von Neumann entropy of either reduced state, in nats. `tail_weight` is
/// the known truncation loss (e.g. squeezed_vacuum_tail), so the purity
/// check compares ||c||^2 + tail against 1.
inline double entanglement_entropy(const TwoModeState& state, double tail_weight = 0.0) {
  if (std::abs(state.norm_squared() + tail_weight - 1.0) > 1e-8) {
    detail::fail(ErrorKind::NotNormalized,
                 "entanglement entropy needs a pure normalized state (norm^2 = " +
                     std::to_string(state.norm_squared()) + ")");
  }
  double s = 0.0;
  for (double p : schmidt_spectrum(state)) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

/// |<a|b>|^2; the shorter vector is implicitly zero-padded.
inline double fidelity_pure(const FockVector& a, const FockVector& b) {
  if (!a.is_normalized() || !b.is_normalized()) {
    detail::fail(ErrorKind::NotNormalized, "fidelity_pure needs normalized states");
  }
  const Eigen::Index n = std::min(a.amplitudes().size(), b.amplitudes().size());
  const Complex overlap = a.amplitudes().head(n).dot(b.amplitudes().head(n));
  return std::min(1.0, std::norm(overlap));
}

}  // namespace sonic
