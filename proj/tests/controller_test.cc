#include "kuramoto_sdre/controller.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.h"

namespace kuramoto_sdre {
namespace {

using std::numbers::pi;
using testing::random_int;
using testing::random_vector;

const NetworkParams kFourOsc(1.0, Vector{{1.30, 1.39, 0.44, 1.28}});
const DesiredConfig kFourOscTarget(Vector{{-0.74, 0.27, 0.15}});

TEST(BiasControl, ZeroWhenNothingToCancel) {
  const NetworkParams params(1.0, Vector::Constant(4, 0.7));
  const Vector v = bias_control(params, DesiredConfig(Vector::Zero(3)), ErrorState(Vector::Zero(3)));
  EXPECT_EQ(v, Vector::Zero(4));
}

TEST(BiasControl, FourOscillatorSteadyState) {
  // Frozen from an independent numpy evaluation of 1 − pinv(B(0))·(f(0) + c).
  const Vector u = Vector::Ones(4) + bias_control(kFourOsc, kFourOscTarget, ErrorState(Vector::Zero(3)));
  const Vector expected{{0.84582957, -1.17103397, 6.61674458, 4.69627603}};
  EXPECT_LE((u - expected).lpNorm<Eigen::Infinity>(), 1e-7);
  EXPECT_LE((steady_state_u(kFourOsc, kFourOscTarget) - u).lpNorm<Eigen::Infinity>(), 0.0);
}

// Least-squares oracle: the minimum-norm solution from a complete orthogonal
// decomposition, independent of the SVD path.
TEST(BiasControl, PropertyMinimumNormLeastSquares) {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = random_int(gen, 2, 10);
    const NetworkParams params(1.0, random_vector(gen, n, 0.0, pi / 2));
    const DesiredConfig cfg(random_vector(gen, n - 1, -pi / 4, pi / 4));
    const ErrorState e(random_vector(gen, n - 1, -0.5, 0.5));
    const Matrix b = control_matrix_b(params, cfg, e);
    const Vector rhs = drift_f(params, cfg, ErrorState(Vector::Zero(n - 1))) + freq_diff_c(params);
    const Vector oracle = -Eigen::CompleteOrthogonalDecomposition<Matrix>(b).solve(rhs);
    const Vector v = bias_control(params, cfg, e);
    EXPECT_LE((v - oracle).norm(), 1e-8 * std::max(1.0, oracle.norm()));
  }
}

TEST(SdreFeedback, ZeroErrorGivesZero) {
  const SdreWeights w = SdreWeights::scaled_identity(4, 1000.0, 1.0);
  const SdreFeedback fb = sdre_feedback(kFourOsc, kFourOscTarget, w, ErrorState(Vector::Zero(3)));
  EXPECT_EQ(fb.v_sdre.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(fb.gain.norm(), 0.0);
}

TEST(SdreFeedback, TwoOscillatorsScalarCare) {
  // With one error state the CARE is 2ap − s·p²/r + q = 0, s = b₁² + b₂².
  const NetworkParams params(1.0, Vector{{0.0, 0.5}});
  const DesiredConfig cfg(Vector{{0.7}});
  const ErrorState e(Vector{{0.2}});
  const double q = 10.0;
  const SdreWeights w = SdreWeights::scaled_identity(2, q, 1.0);

  const double a = jacobian_a(params, cfg, e)(0, 0);
  const Matrix b = control_matrix_b(params, cfg, e);
  const double s = b.squaredNorm();
  const double p = (a + std::sqrt(a * a + q * s)) / s;
  const Vector expected = -(b.transpose() * p * e.values());

  const SdreFeedback fb = sdre_feedback(params, cfg, w, e);
  EXPECT_LE((fb.v_sdre - expected).norm(), 1e-10 * expected.norm());
}

TEST(SdreFeedback, PropertyInvariantUnderWeightDoubling) {
  std::mt19937_64 gen(67);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = random_int(gen, 2, 8);
    const NetworkParams params(1.0, random_vector(gen, n, 0.0, pi / 2));
    const DesiredConfig cfg(random_vector(gen, n - 1, -pi / 4, pi / 4));
    const ErrorState e(random_vector(gen, n - 1, -0.5, 0.5));
    const SdreWeights w1 = SdreWeights::scaled_identity(n, 1000.0, 1.0);
    const SdreWeights w2 = SdreWeights::scaled_identity(n, 2000.0, 2.0);
    const Vector v1 = sdre_feedback(params, cfg, w1, e).v_sdre;
    const Vector v2 = sdre_feedback(params, cfg, w2, e).v_sdre;
    EXPECT_LE((v1 - v2).norm(), 1e-8 * std::max(1.0, v1.norm()));
  }
}

TEST(SdreWeights, Validation) {
  EXPECT_NO_THROW(SdreWeights::scaled_identity(4, 0.0, 1.0).validate(4));
  EXPECT_THROW(SdreWeights::scaled_identity(4, 1.0, 1.0).validate(5), std::invalid_argument);
  EXPECT_THROW(SdreWeights::scaled_identity(4, 1.0, 0.0).validate(4), BadWeights);
  EXPECT_THROW(SdreWeights::scaled_identity(4, -1.0, 1.0).validate(4), BadWeights);
}

TEST(ControlStep, SynchronizedNominal) {
  const NetworkParams params(1.0, Vector::Constant(5, 1.0));
  const ControlDecision d = control_step(params, DesiredConfig(Vector::Zero(4)),
                                         SdreWeights::scaled_identity(5, 1000.0, 1.0),
                                         ErrorState(Vector::Zero(4)));
  EXPECT_EQ(d.u, Vector::Ones(5));
  EXPECT_TRUE(d.no_authority);
  EXPECT_TRUE(d.fallback_used);
}

TEST(ControlStep, ZeroErrorIsSteadyState) {
  const ControlDecision d = control_step(kFourOsc, kFourOscTarget,
                                         SdreWeights::scaled_identity(4, 1000.0, 1.0),
                                         ErrorState(Vector::Zero(3)));
  const Vector expected =
      Vector::Ones(4) + bias_control(kFourOsc, kFourOscTarget, ErrorState(Vector::Zero(3)));
  EXPECT_TRUE((d.u.array() == expected.array()).all());
  EXPECT_FALSE(d.fallback_used);
  EXPECT_EQ(d.controllability_rank, 3);
}

TEST(ControlStep, PropertyDecompositionAndLinearity) {
  std::mt19937_64 gen(71);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = random_int(gen, 2, 8);
    const NetworkParams params(1.0, random_vector(gen, n, 0.0, pi / 2));
    const DesiredConfig cfg(random_vector(gen, n - 1, -pi / 4, pi / 4));
    const ErrorState e(random_vector(gen, n - 1, -1.0, 1.0));
    const SdreController controller(params, cfg, SdreWeights::scaled_identity(n, 1000.0, 1.0));
    const ControlDecision d = controller.step(e);
    EXPECT_TRUE((d.u.array() == ((Vector::Ones(n) + d.v_bias) + d.v_sdre).array()).all());
    if (d.fallback_used) continue;
    // The pointwise Riccati solution meets the residual and Lyapunov bounds.
    const CareProblem problem{jacobian_a(params, cfg, e), control_matrix_b(params, cfg, e),
                              controller.weights().q, controller.weights().r};
    const CareSolution s = solve_care(problem);
    EXPECT_EQ(s.residual_norm, d.care_residual);
    EXPECT_LE(s.residual_norm, 1e-8 * std::max(1.0, s.p.norm()));
    const Matrix ac = problem.a - problem.b * d.gain;
    const Matrix lyap = ac.transpose() * s.p + s.p * ac + problem.q + s.p * problem.b * d.gain;
    EXPECT_LE(lyap.norm(), 1e-7 * std::max(1.0, s.p.squaredNorm()));
    // Frozen gain: v_sdre is linear in e.
    const double alpha = std::uniform_real_distribution<double>(-3.0, 3.0)(gen);
    const Vector scaled = -(d.gain * (alpha * e.values()));
    EXPECT_LE((scaled - alpha * d.v_sdre).norm(), 1e-12 * std::max(1.0, scaled.norm()));
  }
}

TEST(ControlStep, CareFailureFallsBackToBias) {
  ControllerOptions options;
  options.care.max_iterations = 1;
  options.care.relative_tolerance = 0.0;
  const SdreController controller(kFourOsc, kFourOscTarget,
                                  SdreWeights::scaled_identity(4, 1000.0, 1.0), options);
  const ErrorState e(Vector{{0.3, -0.2, 0.1}});
  const ControlDecision d = controller.step(e);
  EXPECT_TRUE(d.fallback_used);
  EXPECT_FALSE(d.no_authority);
  EXPECT_EQ(d.v_sdre, Vector::Zero(4));
  EXPECT_TRUE((d.u.array() == (Vector::Ones(4) + bias_control(kFourOsc, kFourOscTarget, e)).array()).all());
}

TEST(SteadyState, EqualFrequenciesZeroTarget) {
  const NetworkParams params(2.0, Vector::Constant(6, 0.3));
  EXPECT_EQ(steady_state_u(params, DesiredConfig(Vector::Zero(5))), Vector::Ones(6));
}

TEST(SteadyState, LowWeightDispersionOracle) {
  // Frozen from an independent numpy pinv evaluation.
  const NetworkParams params(1.0, Vector{{0.0, pi / 3, 2 * pi / 3, pi}});
  const Vector u = steady_state_u(params, DesiredConfig(Vector{{-0.7, 1.2, -0.5}}));
  const Vector expected{{-37.14120228, 0.86998899, 1.19361871, 39.11467956}};
  EXPECT_LE((u - expected).lpNorm<Eigen::Infinity>(), 1e-7);
}

}  // namespace
}  // namespace kuramoto_sdre
