#pragma once

#include <stdexcept>

#include "kuramoto_sdre/kuramoto.h"
#include "kuramoto_sdre/linalg.h"
#include "kuramoto_sdre/riccati.h"

namespace kuramoto_sdre {

/// The pointwise Riccati solve failed; wraps NotStabilizable.
class CareFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadratic cost weights: q on the N−1 errors, r on the N control deviations.
struct SdreWeights {
  Matrix q;
  Matrix r;

  /// q = q_scale·I_{N−1}, r = r_scale·I_N.
  static SdreWeights scaled_identity(int n, double q_scale, double r_scale);

  /// Checks sizes against n oscillators and the Riccati weight invariants.
  void validate(int n) const;
};

struct ControlDecision {
  Vector v_bias;
  Vector v_sdre;
  /// Always (1 + v_bias) + v_sdre.
  Vector u;
  /// N×(N−1) feedback gain R⁻¹BᵀP; zero when the Riccati solve was skipped.
  Matrix gain;
  double care_residual = 0.0;
  int care_iterations = 0;
  /// v_sdre was forced to zero (Riccati failure or no control authority).
  bool fallback_used = false;
  /// ‖B(e)‖_F < 1e-12: the input cannot move the error at this state.
  bool no_authority = false;
  /// Kalman rank of (A(e), B(e)), or −1 when the diagnostic was skipped.
  int controllability_rank = -1;
};

struct SdreFeedback {
  Vector v_sdre;
  Matrix gain;
  double care_residual = 0.0;
  int care_iterations = 0;
};

struct ControllerOptions {
  /// The controllability diagnostic is evaluated only up to this many error
  /// states; larger networks report −1.
  int controllability_max_states = 16;
  double no_authority_threshold = 1e-12;
  CareOptions care;
};

/// v_bias = −B⁺(e)·[f(0) + c], the minimum-norm cancellation of the constant
/// drift at the target configuration.
Vector bias_control(const NetworkParams& params, const DesiredConfig& cfg, const ErrorState& e);

/// v_sdre = −R⁻¹Bᵀ(e)P(e)·e with P(e) the stabilizing CARE solution for
/// (A(e), B(e), Q, R). Throws CareFailed.
SdreFeedback sdre_feedback(const NetworkParams& params, const DesiredConfig& cfg,
                           const SdreWeights& weights, const ErrorState& e,
                           const CareOptions& care = {});

/// SDRE controller for one scenario. Caches f(0) + c, which depends only on
/// the target and the natural frequencies.
class SdreController {
 public:
  SdreController(NetworkParams params, DesiredConfig cfg, SdreWeights weights,
                 ControllerOptions options = {});

  /// u = 1 + v_bias + v_sdre at the given error. Never throws on degenerate
  /// states; falls back to bias-only control and flags it instead.
  ControlDecision step(const ErrorState& e) const;

  /// f(0) + c.
  const Vector& bias_drift() const { return bias_drift_; }
  const NetworkParams& params() const { return params_; }
  const DesiredConfig& config() const { return cfg_; }
  const SdreWeights& weights() const { return weights_; }

 private:
  NetworkParams params_;
  DesiredConfig cfg_;
  SdreWeights weights_;
  ControllerOptions options_;
  Vector bias_drift_;
};

/// One-shot form of SdreController::step.
ControlDecision control_step(const NetworkParams& params, const DesiredConfig& cfg,
                             const SdreWeights& weights, const ErrorState& e);

/// u_ss = 1 − B⁺(0)·(f(0) + c): the input that holds the target configuration.
Vector steady_state_u(const NetworkParams& params, const DesiredConfig& cfg);

}  // namespace kuramoto_sdre
