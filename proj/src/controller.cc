#include "kuramoto_sdre/controller.h"

#include <string>

namespace kuramoto_sdre {
namespace {

Vector drift_at_target(const NetworkParams& params, const DesiredConfig& cfg) {
  const ErrorState zero(Vector::Zero(cfg.size()));
  return drift_f(params, cfg, zero) + freq_diff_c(params);
}

SdreFeedback feedback_from(const Matrix& a, const Matrix& b, const SdreWeights& weights,
                           const ErrorState& e, const CareOptions& care) {
  CareSolution solution;
  try {
    solution = solve_care({a, b, weights.q, weights.r}, care);
  } catch (const NotStabilizable& ex) {
    throw CareFailed(ex.what());
  }
  Matrix gain = Eigen::LLT<Matrix>(weights.r).solve(b.transpose() * solution.p);
  Vector v_sdre = -(gain * e.values());
  return {std::move(v_sdre), std::move(gain), solution.residual_norm, solution.iterations};
}

}  // namespace

SdreWeights SdreWeights::scaled_identity(int n, double q_scale, double r_scale) {
  return {q_scale * Matrix::Identity(n - 1, n - 1), r_scale * Matrix::Identity(n, n)};
}

void SdreWeights::validate(int n) const {
  if (q.rows() != n - 1 || q.cols() != n - 1) {
    throw std::invalid_argument("SdreWeights: q must be (N-1)×(N-1)");
  }
  if (r.rows() != n || r.cols() != n) throw std::invalid_argument("SdreWeights: r must be N×N");
  // Reuse the Riccati weight checks with a placeholder system of matching shape.
  kuramoto_sdre::validate(CareProblem{Matrix::Zero(n - 1, n - 1), Matrix::Zero(n - 1, n), q, r});
}

Vector bias_control(const NetworkParams& params, const DesiredConfig& cfg, const ErrorState& e) {
  return -(pinv(control_matrix_b(params, cfg, e)) * drift_at_target(params, cfg));
}

SdreFeedback sdre_feedback(const NetworkParams& params, const DesiredConfig& cfg,
                           const SdreWeights& weights, const ErrorState& e,
                           const CareOptions& care) {
  weights.validate(params.size());
  return feedback_from(jacobian_a(params, cfg, e), control_matrix_b(params, cfg, e), weights, e,
                       care);
}

SdreController::SdreController(NetworkParams params, DesiredConfig cfg, SdreWeights weights,
                               ControllerOptions options)
    : params_(std::move(params)),
      cfg_(std::move(cfg)),
      weights_(std::move(weights)),
      options_(options) {
  if (cfg_.size() != params_.size() - 1) {
    throw std::invalid_argument("SdreController: target length must be N-1");
  }
  weights_.validate(params_.size());
  bias_drift_ = drift_at_target(params_, cfg_);
}

ControlDecision SdreController::step(const ErrorState& e) const {
  const int n = params_.size();
  ControlDecision d;
  d.v_bias = Vector::Zero(n);
  d.v_sdre = Vector::Zero(n);
  d.gain = Matrix::Zero(n, n - 1);

  const Matrix b = control_matrix_b(params_, cfg_, e);
  if (b.norm() < options_.no_authority_threshold) {
    d.no_authority = true;
    d.fallback_used = true;
    d.u = Vector::Ones(n);
    return d;
  }

  d.v_bias = -(pinv(b) * bias_drift_);
  const Matrix a = jacobian_a(params_, cfg_, e);
  if (n - 1 <= options_.controllability_max_states) {
    d.controllability_rank = controllability_rank(a, b);
  }
  try {
    SdreFeedback fb = feedback_from(a, b, weights_, e, options_.care);
    d.v_sdre = std::move(fb.v_sdre);
    d.gain = std::move(fb.gain);
    d.care_residual = fb.care_residual;
    d.care_iterations = fb.care_iterations;
  } catch (const CareFailed&) {
    d.fallback_used = true;
  }
  d.u = (Vector::Ones(n) + d.v_bias) + d.v_sdre;
  return d;
}

ControlDecision control_step(const NetworkParams& params, const DesiredConfig& cfg,
                             const SdreWeights& weights, const ErrorState& e) {
  return SdreController(params, cfg, weights).step(e);
}

Vector steady_state_u(const NetworkParams& params, const DesiredConfig& cfg) {
  const ErrorState zero(Vector::Zero(cfg.size()));
  return Vector::Ones(params.size()) + bias_control(params, cfg, zero);
}

}  // namespace kuramoto_sdre
