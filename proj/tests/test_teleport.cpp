// Teleportation through the squeezed resource: number-difference outcomes
// and the general unitary-measurement form.

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "expected_values.hpp"
#include "sonic/squeeze_map.hpp"
#include "sonic/sweep.hpp"
#include "sonic/teleport.hpp"

namespace sonic::test {
namespace {

const double kRTanhHalf = std::atanh(0.5);

FockVector coherent(double a, std::size_t n) { return coherent_state({{a, 0.0}, n}).state; }

// =============================================================================
// Zero-difference outcome
// =============================================================================

TEST(ZeroOutcome, CoherentTargetAtTanhHalf) {
  const auto out = mb_conditional(coherent(1.0, 50), kRTanhHalf, 0, +1, 60);
  EXPECT_NEAR(out.fidelity, expected::kOverlapCoherentOneHalf, 1e-10);
  EXPECT_NEAR(out.probability, expected::kProbZeroCoherentOne, 1e-12);
  EXPECT_EQ(out.k, 0);
  EXPECT_EQ(out.difference, 0);
  EXPECT_NEAR(out.output.norm_squared(), 1.0, 1e-12);
}

TEST(ZeroOutcome, OutputIsAttenuatedCoherentState) {
  // lambda^n c_n is the coherent state of amplitude z tanh r
  const double r = 0.9;
  const auto out = mb_conditional(coherent(1.3, 60), r, 0, +1, 60);
  const auto ref = coherent(1.3 * std::tanh(r), 60);
  EXPECT_NEAR(fidelity_pure(out.output, ref), 1.0, 1e-12);
}

TEST(ZeroOutcome, MatchesClosedFormFidelity) {
  for (double a : {0.1, 0.5, 1.0, 1.5}) {
    for (double r = 0.25; r <= 2.0 + 1e-12; r += 0.25) {
      const auto out = mb_conditional(coherent(a, 50), r, 0, +1, 60);
      EXPECT_NEAR(out.fidelity, analytic_fidelity_zero({a, 0.0}, r), 1e-8) << a << " " << r;
    }
  }
  EXPECT_NEAR(analytic_fidelity_zero({1.0, 0.0}, std::atanh(0.9)), expected::kFidelityTanhPoint9, 1e-15);
  EXPECT_NEAR(analytic_fidelity_zero({1.0, 0.0}, std::atanh(0.2)), expected::kFidelityTanhPoint2, 1e-15);
}

TEST(ZeroOutcome, ImperfectForFiniteSqueeze) {
  for (double a : {0.05, 0.5, 1.5}) {
    double prev = 0.0;
    for (double alpha : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double r = squeeze_parameter(0.2, alpha).r;
      const std::size_t n = auto_cutoff({a, 0.0}, r);
      const double f = mb_conditional(coherent(a, coherent_cutoff({a, 0.0})), r, 0, +1, n).fidelity;
      EXPECT_LT(f, 1.0) << a << " " << alpha;
      EXPECT_GT(f, prev);
      prev = f;
    }
  }
}

TEST(ZeroOutcome, VacuumTargetIsPerfect) {
  const auto out = mb_conditional(FockVector::basis(0, 4), 0.3, 0, +1, 10);
  EXPECT_EQ(out.fidelity, 1.0);
}

// =============================================================================
// Outcome probabilities
// =============================================================================

TEST(Probabilities, CompleteOverAllDifferences) {
  std::mt19937_64 rng(20240611);
  std::vector<FockVector> targets{coherent(1.0, 20), coherent(0.4, 15)};
  for (int i = 0; i < 20; ++i) targets.push_back(random_state(1 + rng() % 12, rng));
  for (double r : {0.3, 0.8, 1.4}) {
    const std::size_t n = 60;
    const double tail = squeezed_vacuum_tail(r, n);
    for (const auto& t : targets) {
      const auto p = mb_outcome_distribution(t, r, n);
      const double total = std::accumulate(p.begin(), p.end(), 0.0);
      EXPECT_NEAR(total, 1.0 - tail, 1e-13);
      EXPECT_NEAR(total, 1.0, 10.0 * tail + 1e-13);
      for (double x : p) EXPECT_GE(x, 0.0);
    }
  }
}

TEST(Probabilities, VacuumTargetDistribution) {
  // c = |0>: P(d) = (1 - t^2) t^{-2d} for d <= 0
  const double r = 0.6, t = std::tanh(r);
  for (int d = 0; d >= -6; --d) {
    EXPECT_NEAR(mb_outcome_probability(FockVector::basis(0, 3), r, d, 40),
                (1 - t * t) * std::pow(t, -2.0 * d), 1e-15);
  }
  EXPECT_EQ(mb_outcome_probability(FockVector::basis(0, 3), r, 1, 40), 0.0);
}

TEST(Probabilities, ConditionalReportsOutcomeWeight) {
  const auto target = coherent(1.2, 30);
  for (int k = 0; k <= 3; ++k) {
    for (int sign : {+1, -1}) {
      const auto out = mb_conditional(target, 0.7, k, sign, 40);
      const double p = mb_outcome_probability(target, 0.7, sign * 2 * k, 40);
      EXPECT_NEAR(out.probability, p, 1e-14 * p);
      EXPECT_EQ(out.difference, sign * 2 * k);
      EXPECT_NEAR(out.output.norm_squared(), 1.0, 1e-12);
    }
  }
}

TEST(Probabilities, ShiftDirection) {
  // target |2>: difference +2 leaves Bob in |0>, difference -2 puts him in |4>
  const auto target = FockVector::basis(2, 4);
  EXPECT_NEAR(std::abs(mb_conditional(target, 0.5, 1, +1, 10).output[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(mb_conditional(target, 0.5, 1, -1, 10).output[4]), 1.0, 1e-15);
}

TEST(Probabilities, Errors) {
  const auto target = coherent(1.0, 20);
  auto kind = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ConsistencyError;
  };
  EXPECT_EQ(kind([&] { mb_conditional(target, 0.5, 11, +1, 20); }), ErrorKind::ShiftOutOfRange);
  EXPECT_EQ(kind([&] { mb_conditional(target, 0.5, -1, +1, 20); }), ErrorKind::ShiftOutOfRange);
  EXPECT_EQ(kind([&] { mb_conditional(target, 0.5, 1, 0, 20); }), ErrorKind::ShiftOutOfRange);
  EXPECT_EQ(kind([&] { mb_conditional(target, 0.5, 0, +1, 10); }), ErrorKind::CutoffTooSmall);
  EXPECT_EQ(kind([&] { mb_conditional(FockVector::basis(0, 4), 0.5, 2, +1, 10); }),
            ErrorKind::ZeroProbability);
  EXPECT_EQ(kind([&] { mb_conditional(target, -0.5, 0, +1, 20); }), ErrorKind::NegativeSqueeze);
}

TEST(Probabilities, TargetIndexWeightingIsNormalized) {
  const auto out = mb_conditional(coherent(1.0, 20), 0.5, 1, +1, 30, ShiftWeighting::target_index);
  EXPECT_NEAR(out.output.norm_squared(), 1.0, 1e-12);
  // identical to the default at k = 0
  const auto a = mb_conditional(coherent(1.0, 20), 0.5, 0, +1, 30, ShiftWeighting::target_index);
  const auto b = mb_conditional(coherent(1.0, 20), 0.5, 0, +1, 30);
  EXPECT_LT((a.output.amplitudes() - b.output.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

// =============================================================================
// General unitary measurement
// =============================================================================

TEST(General, IdentityMeasurementEqualsZeroOutcome) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 25;
    const auto target = random_state(1 + rng() % 10, rng);
    const double r = 0.2 + 0.15 * i;
    const auto g = teleport_general(target, r, MeasurementSpec::identity(n), n);
    const auto z = mb_conditional(target, r, 0, +1, n);
    EXPECT_LT((g.output.amplitudes() - z.output.amplitudes()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(g.probability, z.probability, 1e-14);
    EXPECT_NEAR(g.fidelity, z.fidelity, 1e-14);
  }
}

TEST(General, RandomUnitariesGiveNormalizedOutput) {
  std::mt19937_64 rng(99);
  const std::size_t n = 12;
  for (int i = 0; i < 25; ++i) {
    MeasurementSpec m{random_unitary(n + 1, rng), random_unitary(n + 1, rng)};
    m.validate(n);
    const auto target = random_state(1 + rng() % n, rng);
    const auto out = teleport_general(target, 0.8, m, n);
    EXPECT_NEAR(out.output.norm_squared(), 1.0, 1e-12);
    EXPECT_GE(out.fidelity, 0.0);
    EXPECT_LE(out.fidelity, 1.0);
    EXPECT_GT(out.probability, 0.0);
    // unitaries preserve the damped weight
    const auto zero = mb_conditional(target, 0.8, 0, +1, n);
    EXPECT_NEAR(out.probability, zero.probability, 1e-12);
  }
}

TEST(General, RandomUnitaryIsUnitary) {
  std::mt19937_64 rng(5);
  const auto u = random_unitary(9, rng);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(9, 9)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(General, NonUnitaryMeasurementRejected) {
  auto m = MeasurementSpec::identity(5);
  m.target_unitary(0, 0) = 2.0;
  try {
    teleport_general(FockVector::basis(0, 3), 0.5, m, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnitaryMeasurement);
  }
  EXPECT_THROW(teleport_general(FockVector::basis(0, 3), 0.5, MeasurementSpec::identity(4), 5), Error);
}

// =============================================================================
// Sweep
// =============================================================================

TEST(Sweep, FidelityRisesWithTemperature) {
  SweepRequest req;
  req.amplitude = {1.0, 0.0};
  req.omega = 1.0;
  // tanh r from 0.2 to 0.9
  for (double tr : {0.2, 0.35, 0.5, 0.7, 0.9}) req.grid.push_back(-M_PI / std::log(tr));
  const auto rows = fidelity_temperature_sweep(req);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NEAR(rows.front().fidelity_analytic, expected::kFidelityTanhPoint2, 1e-12);
  EXPECT_NEAR(rows.back().fidelity_analytic, expected::kFidelityTanhPoint9, 1e-12);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].fidelity_simulated, rows[i].fidelity_analytic, 1e-8);
    if (i > 0) {
      EXPECT_GT(rows[i].fidelity_analytic, rows[i - 1].fidelity_analytic);
      EXPECT_GT(rows[i].temperature, rows[i - 1].temperature);
    }
  }
}

TEST(Sweep, RejectsBadGrid) {
  SweepRequest req;
  EXPECT_THROW(fidelity_temperature_sweep(req), Error);
  req.grid = {1.0, -1.0};
  EXPECT_THROW(fidelity_temperature_sweep(req), Error);
}

}  // namespace
}  // namespace sonic::test
