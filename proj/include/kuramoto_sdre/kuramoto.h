#pragma once

#include "kuramoto_sdre/linalg.h"

namespace kuramoto_sdre {

/// Network of N all-to-all coupled phase oscillators with global gain K.
class NetworkParams {
 public:
  /// Requires omega.size() >= 2, coupling > 0 and finite frequencies.
  NetworkParams(double coupling, Vector omega);

  int size() const { return static_cast<int>(omega_.size()); }
  double coupling() const { return coupling_; }
  const Vector& omega() const { return omega_; }

 private:
  double coupling_;
  Vector omega_;
};

/// Target phase differences X^des, one per adjacent oscillator pair.
class DesiredConfig {
 public:
  explicit DesiredConfig(Vector x_des);

  int size() const { return static_cast<int>(x_des_.size()); }
  const Vector& values() const { return x_des_; }

 private:
  Vector x_des_;
};

/// Oscillator phases in radians. Never wrapped to [0, 2π).
class PhaseState {
 public:
  explicit PhaseState(Vector theta);

  int size() const { return static_cast<int>(theta_.size()); }
  const Vector& theta() const { return theta_; }

 private:
  Vector theta_;
};

/// Tracking error e = X − X^des in phase-difference coordinates.
class ErrorState {
 public:
  explicit ErrorState(Vector e);

  int size() const { return static_cast<int>(e_.size()); }
  const Vector& values() const { return e_; }

 private:
  Vector e_;
};

/// X_i = θ_{i+1} − θ_i.
Vector phase_differences(const PhaseState& state);

/// e = phase_differences(state) − X^des.
ErrorState tracking_error(const PhaseState& state, const DesiredConfig& cfg);

/// Phases with θ₁ = 0 and θ_k = Σ_{l<k} (e_l + X^des_l).
PhaseState reconstruct_phases(const ErrorState& e, const DesiredConfig& cfg);

/// Σ_j sin(θ_j − θ_i) for every oscillator i.
Vector coupling_sums(const Vector& theta);

/// θ̇_i = ω_i + (K/N)·u_i·Σ_j sin(θ_j − θ_i).
Vector full_dynamics(const NetworkParams& params, const PhaseState& state, const Vector& u);

/// c_i = ω_{i+1} − ω_i.
Vector freq_diff_c(const NetworkParams& params);

/// Uncontrolled coupling part of ė at the reconstructed phases:
/// f_i = (K/N)[S_{i+1} − S_i], S_p = Σ_k sin(θ_k − θ_p).
Vector drift_f(const NetworkParams& params, const DesiredConfig& cfg, const ErrorState& e);

/// (N−1)×N input matrix of ė = f + c + B v. Row i has −(K/N)S_i in column i
/// and +(K/N)S_{i+1} in column i+1, and nothing else.
Matrix control_matrix_b(const NetworkParams& params, const DesiredConfig& cfg,
                        const ErrorState& e);

/// Analytic Jacobian ∂f/∂e at the current error.
Matrix jacobian_a(const NetworkParams& params, const DesiredConfig& cfg, const ErrorState& e);

}  // namespace kuramoto_sdre
