#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sonic/errors.hpp"
#include "sonic/fock_space.hpp"

namespace sonic {

/// Alice's joint operation U = S1 (target) x S2 (mode I).
struct MeasurementSpec {
  CMatrix target_unitary;    // S1
  CMatrix resource_unitary;  // S2

  static MeasurementSpec identity(std::size_t cutoff) {
    const auto dim = static_cast<Eigen::Index>(cutoff + 1);
    return {CMatrix::Identity(dim, dim), CMatrix::Identity(dim, dim)};
  }

  void validate(std::size_t cutoff, double tol = 1e-10) const {
    const auto dim = static_cast<Eigen::Index>(cutoff + 1);
    for (const CMatrix* s : {&target_unitary, &resource_unitary}) {
      if (s->rows() != dim || s->cols() != dim) {
        detail::fail(ErrorKind::NonUnitaryMeasurement,
                     "measurement matrices must be (N+1)x(N+1) for N = " + std::to_string(cutoff));
      }
      const double err = (s->adjoint() * *s - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
      if (err > tol) {
        detail::fail(ErrorKind::NonUnitaryMeasurement,
                     "S^dag S deviates from identity by " + std::to_string(err));
      }
    }
  }
};

/// Haar-style random unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal moved into Q.
inline CMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

/// Normalized random state on |0>..|N> with complex Gaussian amplitudes.
inline FockVector random_state(std::size_t cutoff, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(cutoff + 1));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return FockVector::from_unnormalized(v);
}

struct TeleportOutcome {
  FockVector output;         // Bob's normalized state
  double probability = 1.0;  // weight of Alice's outcome
  double fidelity = 0.0;     // |<target|output>|^2
  int k = 0;                 // number-difference outcome label, difference = sign * 2k
  int sign = +1;
  int difference = 0;
};

namespace detail {

inline void check_target(const FockVector& target, std::size_t cutoff) {
  if (!target.is_normalized()) {
    detail::fail(ErrorKind::NotNormalized, "teleportation target must be normalized");
  }
  if (target.cutoff() > cutoff) {
    detail::fail(ErrorKind::CutoffTooSmall,
                 "target cutoff " + std::to_string(target.cutoff()) + " exceeds resource cutoff " +
                     std::to_string(cutoff));
  }
}

/// tanh^n r for n = 0..N by repeated multiplication (0^0 = 1).
inline std::vector<double> tanh_powers(double r, std::size_t cutoff) {
  std::vector<double> p(cutoff + 1);
  const double t = std::tanh(r);
  double acc = 1.0;
  for (double& x : p) {
    x = acc;
    acc *= t;
  }
  return p;
}

}  // namespace detail

/// General unitary-measurement protocol. Bob's components are
///   X_j = gamma / cosh r * sum_l tanh^l r (S2^T S1)_{jl} phi_l
/// with every basis sum starting at |0> (the resource's vacuum term
/// included); gamma is fixed by normalizing X. `probability` is the
/// projected weight ||X / gamma||^2.
inline TeleportOutcome teleport_general(const FockVector& target, double r,
                                        const MeasurementSpec& meas, std::size_t cutoff) {
  check_squeeze(r);
  detail::check_target(target, cutoff);
  meas.validate(cutoff);

  const FockVector phi = target.padded(cutoff);
  const auto weights = detail::tanh_powers(r, cutoff);
  CVector damped = phi.amplitudes();
  for (Eigen::Index l = 0; l < damped.size(); ++l) damped(l) *= weights[static_cast<std::size_t>(l)];

  const CMatrix transfer = meas.resource_unitary.transpose() * meas.target_unitary;
  const CVector x = transfer * damped / std::cosh(r);
  const double weight = x.squaredNorm();
  if (!(weight > 0.0)) {
    detail::fail(ErrorKind::ZeroProbability, "measurement outcome has zero weight");
  }

  TeleportOutcome out{FockVector::from_unnormalized(x), weight, 0.0};
  out.fidelity = fidelity_pure(phi, out.output);
  return out;
}

/// How the number-difference outcome weights Bob's amplitudes.
///   receiver_index: amplitude on |n> is tanh^n r c_{n+d} (the weight that
///                   makes the normalizer equal P(d); default)
///   target_index:   amplitude on |n> is tanh^{n+d} r c_{n+d}; exposed for
///                   comparison only, normalized directly
enum class ShiftWeighting { receiver_index, target_index };

/// P(d) = (1 - tanh^2 r) sum_n tanh^{2n} r |c_{n+d}|^2 over Bob's truncated
/// range n = 0..N with 0 <= n + d <= target cutoff.
inline double mb_outcome_probability(const FockVector& target, double r, int difference,
                                     std::size_t cutoff) {
  check_squeeze(r);
  detail::check_target(target, cutoff);
  const auto weights = detail::tanh_powers(r, cutoff);
  const double t = std::tanh(r);
  const auto m_max = static_cast<long>(target.cutoff());
  double acc = 0.0;
  for (long n = 0; n <= static_cast<long>(cutoff); ++n) {
    const long m = n + difference;
    if (m < 0 || m > m_max) continue;
    const double w = weights[static_cast<std::size_t>(n)];
    acc += w * w * std::norm(target[static_cast<std::size_t>(m)]);
  }
  return (1.0 - t * t) * acc;
}

/// Bob's state after Alice's number-difference outcome d. The labelled
/// (k, +-) outcomes are d = +-2k; this is the general primitive.
inline TeleportOutcome mb_difference_outcome(const FockVector& target, double r, int difference,
                                             std::size_t cutoff,
                                             ShiftWeighting weighting = ShiftWeighting::receiver_index) {
  check_squeeze(r);
  detail::check_target(target, cutoff);
  const auto weights = detail::tanh_powers(r, cutoff);
  const double t = std::tanh(r);
  const auto m_max = static_cast<long>(target.cutoff());

  CVector bob = CVector::Zero(static_cast<Eigen::Index>(cutoff + 1));
  for (long n = 0; n <= static_cast<long>(cutoff); ++n) {
    const long m = n + difference;
    if (m < 0 || m > m_max) continue;
    const double w = weighting == ShiftWeighting::receiver_index
                         ? weights[static_cast<std::size_t>(n)]
                         : std::pow(t, static_cast<double>(m));
    bob(static_cast<Eigen::Index>(n)) = w * target[static_cast<std::size_t>(m)];
  }
  const double probability = mb_outcome_probability(target, r, difference, cutoff);
  if (!(bob.squaredNorm() > 0.0) || !(probability > 0.0)) {
    detail::fail(ErrorKind::ZeroProbability,
                 "number-difference outcome " + std::to_string(difference) + " has zero probability");
  }

  TeleportOutcome out{FockVector::from_unnormalized(bob), probability, 0.0};
  out.fidelity = fidelity_pure(target.padded(cutoff), out.output);
  out.difference = difference;
  out.sign = difference < 0 ? -1 : +1;
  out.k = (difference < 0 ? -difference : difference) / 2;
  return out;
}

/// Number-phase teleportation outcome labelled (k, sign): Alice's number
/// difference is sign * 2k. k = 0 passes lambda^n c_n straight through.
inline TeleportOutcome mb_conditional(const FockVector& target, double r, int k, int sign,
                                      std::size_t cutoff,
                                      ShiftWeighting weighting = ShiftWeighting::receiver_index) {
  if (k < 0 || 2 * static_cast<std::size_t>(k) > cutoff) {
    detail::fail(ErrorKind::ShiftOutOfRange,
                 "shift k = " + std::to_string(k) + " must satisfy 0 <= 2k <= N");
  }
  if (sign != +1 && sign != -1) {
    detail::fail(ErrorKind::ShiftOutOfRange, "sign must be +1 or -1");
  }
  auto out = mb_difference_outcome(target, r, sign * 2 * k, cutoff, weighting);
  out.k = k;
  out.sign = sign;
  return out;
}

/// P(d) for every difference Bob's truncated space can register,
/// d = -N .. target cutoff, indexed by d + N.
inline std::vector<double> mb_outcome_distribution(const FockVector& target, double r,
                                                   std::size_t cutoff) {
  const auto n = static_cast<int>(cutoff);
  std::vector<double> p;
  for (int d = -n; d <= static_cast<int>(target.cutoff()); ++d) {
    p.push_back(mb_outcome_probability(target, r, d, cutoff));
  }
  return p;
}

/// exp(-|z|^2 (1 - tanh r)^2): coherent-target fidelity of the zero
/// number-difference outcome.
inline double analytic_fidelity_zero(Complex amplitude, double r) {
  check_squeeze(r);
  const double gap = 1.0 - std::tanh(r);
  return std::exp(-std::norm(amplitude) * gap * gap);
}

}  // namespace sonic
