#pragma once

#include <vector>

#include "kuramoto_sdre/controller.h"
#include "kuramoto_sdre/kuramoto.h"

namespace kuramoto_sdre {

struct SimConfig {
  double t_final = 2.0;
  double dt = 0.01;
  /// Keep every k-th step in the trajectory; the terminal state is always kept.
  int record_every = 1;
  /// Recompute the SDRE control every k steps and hold it in between.
  int control_update_every = 1;

  void validate() const;
  /// floor(t_final / dt), guarded against representation error in dt.
  int step_count() const;
};

struct TrajectoryRecord {
  double t = 0.0;
  Vector theta;
  Vector x;
  Vector e;
  Vector u;
  double care_residual = 0.0;
  bool fallback_used = false;
};

struct RunSummary {
  double final_e_inf_norm = 0.0;
  Vector final_u;
  /// max over recorded steps of ‖u(t)‖_∞.
  double peak_u_inf_norm = 0.0;
  int steps = 0;
  bool any_fallback = false;
  int fallback_steps = 0;
  /// Control evaluations with some u_i <= 0 (outside the nominal positive range).
  int negative_u_steps = 0;
  /// Control evaluations whose controllability diagnostic reported rank < N−1.
  int controllability_deficient_steps = 0;
};

struct RunResult {
  std::vector<TrajectoryRecord> records;
  RunSummary summary;
};

/// Classical RK4 step of the oscillator dynamics with u held constant.
PhaseState rk4_step(const NetworkParams& params, const PhaseState& theta, const Vector& u,
                    double dt);

/// Closed-loop simulation: at each step measure e, compute the SDRE control,
/// record, and integrate one RK4 step. A final record at t = steps·dt holds
/// the terminal state and the control evaluated there.
RunResult run_closed_loop(const NetworkParams& params, const DesiredConfig& cfg,
                          const SdreWeights& weights, const PhaseState& theta0,
                          const SimConfig& sim, const ControllerOptions& options = {});

}  // namespace kuramoto_sdre
