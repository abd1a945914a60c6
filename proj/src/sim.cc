#include "kuramoto_sdre/sim.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kuramoto_sdre {

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("SimConfig: dt must be > 0");
  if (!(t_final >= dt) || !std::isfinite(t_final)) {
    throw std::invalid_argument("SimConfig: t_final must be >= dt");
  }
  if (record_every < 1) throw std::invalid_argument("SimConfig: record_every must be >= 1");
  if (control_update_every < 1) {
    throw std::invalid_argument("SimConfig: control_update_every must be >= 1");
  }
}

int SimConfig::step_count() const {
  return static_cast<int>(std::floor(t_final / dt + 1e-9));
}

PhaseState rk4_step(const NetworkParams& params, const PhaseState& theta, const Vector& u,
                    double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");
  const Vector& y = theta.theta();
  const Vector k1 = full_dynamics(params, theta, u);
  const Vector k2 = full_dynamics(params, PhaseState(y + 0.5 * dt * k1), u);
  const Vector k3 = full_dynamics(params, PhaseState(y + 0.5 * dt * k2), u);
  const Vector k4 = full_dynamics(params, PhaseState(y + dt * k3), u);
  return PhaseState(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

RunResult run_closed_loop(const NetworkParams& params, const DesiredConfig& cfg,
                          const SdreWeights& weights, const PhaseState& theta0,
                          const SimConfig& sim, const ControllerOptions& options) {
  sim.validate();
  if (theta0.size() != params.size()) {
    throw std::invalid_argument("run_closed_loop: theta0 length must equal N");
  }
  const SdreController controller(params, cfg, weights, options);
  const int steps = sim.step_count();

  RunResult result;
  result.records.reserve(static_cast<std::size_t>(steps / sim.record_every + 2));
  RunSummary& summary = result.summary;

  auto account = [&](const ControlDecision& d) {
    if (d.fallback_used) {
      summary.any_fallback = true;
      ++summary.fallback_steps;
    }
    if ((d.u.array() <= 0.0).any()) ++summary.negative_u_steps;
    if (d.controllability_rank >= 0 && d.controllability_rank < params.size() - 1) {
      ++summary.controllability_deficient_steps;
    }
  };
  auto record = [&](double t, const PhaseState& theta, const ControlDecision& d) {
    TrajectoryRecord r;
    r.t = t;
    r.theta = theta.theta();
    r.x = phase_differences(theta);
    r.e = r.x - cfg.values();
    r.u = d.u;
    r.care_residual = d.care_residual;
    r.fallback_used = d.fallback_used;
    summary.peak_u_inf_norm = std::max(summary.peak_u_inf_norm, d.u.lpNorm<Eigen::Infinity>());
    result.records.push_back(std::move(r));
  };

  PhaseState theta = theta0;
  ControlDecision decision;
  for (int k = 0; k < steps; ++k) {
    if (k % sim.control_update_every == 0) {
      decision = controller.step(tracking_error(theta, cfg));
      account(decision);
    }
    if (k % sim.record_every == 0) record(k * sim.dt, theta, decision);
    theta = rk4_step(params, theta, decision.u, sim.dt);
  }

  const ErrorState final_error = tracking_error(theta, cfg);
  const ControlDecision terminal = controller.step(final_error);
  account(terminal);
  record(steps * sim.dt, theta, terminal);

  summary.steps = steps;
  summary.final_e_inf_norm = final_error.values().lpNorm<Eigen::Infinity>();
  summary.final_u = terminal.u;
  return result;
}

}  // namespace kuramoto_sdre
