#include "kuramoto_sdre/kuramoto.h"

#include <cmath>
#include <stdexcept>

namespace kuramoto_sdre {
namespace {

void require_lengths(const NetworkParams& params, const DesiredConfig& cfg, const ErrorState& e) {
  if (cfg.size() != params.size() - 1 || e.size() != params.size() - 1) {
    throw std::invalid_argument("phase-difference vectors must have length N-1");
  }
}

double gain(const NetworkParams& params) { return params.coupling() / params.size(); }

}  // namespace

NetworkParams::NetworkParams(double coupling, Vector omega)
    : coupling_(coupling), omega_(std::move(omega)) {
  if (omega_.size() < 2) throw std::invalid_argument("NetworkParams: need at least 2 oscillators");
  if (!(coupling_ > 0.0) || !std::isfinite(coupling_)) {
    throw std::invalid_argument("NetworkParams: coupling must be positive and finite");
  }
  require_finite(omega_, "NetworkParams omega");
}

DesiredConfig::DesiredConfig(Vector x_des) : x_des_(std::move(x_des)) {
  if (x_des_.size() < 1) throw std::invalid_argument("DesiredConfig: empty target");
  require_finite(x_des_, "DesiredConfig x_des");
}

PhaseState::PhaseState(Vector theta) : theta_(std::move(theta)) {
  if (theta_.size() < 2) throw std::invalid_argument("PhaseState: need at least 2 phases");
  require_finite(theta_, "PhaseState theta");
}

ErrorState::ErrorState(Vector e) : e_(std::move(e)) {
  if (e_.size() < 1) throw std::invalid_argument("ErrorState: empty error");
  require_finite(e_, "ErrorState e");
}

Vector phase_differences(const PhaseState& state) {
  const Vector& theta = state.theta();
  const Eigen::Index n = theta.size();
  return theta.tail(n - 1) - theta.head(n - 1);
}

ErrorState tracking_error(const PhaseState& state, const DesiredConfig& cfg) {
  if (cfg.size() != state.size() - 1) {
    throw std::invalid_argument("tracking_error: target length must be N-1");
  }
  return ErrorState(phase_differences(state) - cfg.values());
}

PhaseState reconstruct_phases(const ErrorState& e, const DesiredConfig& cfg) {
  if (e.size() != cfg.size()) throw std::invalid_argument("reconstruct_phases: length mismatch");
  Vector theta = Vector::Zero(e.size() + 1);
  for (Eigen::Index k = 1; k < theta.size(); ++k) {
    theta(k) = theta(k - 1) + (e.values()(k - 1) + cfg.values()(k - 1));
  }
  return PhaseState(std::move(theta));
}

Vector coupling_sums(const Vector& theta) {
  const Eigen::Index n = theta.size();
  Vector sums = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) s += std::sin(theta(j) - theta(i));
    sums(i) = s;
  }
  return sums;
}

Vector full_dynamics(const NetworkParams& params, const PhaseState& state, const Vector& u) {
  if (state.size() != params.size() || u.size() != params.size()) {
    throw std::invalid_argument("full_dynamics: phase and input lengths must equal N");
  }
  const Vector sums = coupling_sums(state.theta());
  return params.omega() + gain(params) * u.cwiseProduct(sums);
}

Vector freq_diff_c(const NetworkParams& params) {
  const Vector& omega = params.omega();
  const Eigen::Index n = omega.size();
  return omega.tail(n - 1) - omega.head(n - 1);
}

Vector drift_f(const NetworkParams& params, const DesiredConfig& cfg, const ErrorState& e) {
  require_lengths(params, cfg, e);
  const Vector sums = coupling_sums(reconstruct_phases(e, cfg).theta());
  const Eigen::Index n = sums.size();
  return gain(params) * (sums.tail(n - 1) - sums.head(n - 1));
}

Matrix control_matrix_b(const NetworkParams& params, const DesiredConfig& cfg,
                        const ErrorState& e) {
  require_lengths(params, cfg, e);
  const Vector sums = coupling_sums(reconstruct_phases(e, cfg).theta());
  const Eigen::Index n = sums.size();
  const double k_over_n = gain(params);
  Matrix b = Matrix::Zero(n - 1, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    b(i, i) = -k_over_n * sums(i);
    b(i, i + 1) = k_over_n * sums(i + 1);
  }
  return b;
}

// With θ₁ = 0 and θ_k = Σ_{l<k}(e_l + X^des_l), the partial ∂θ_k/∂e_j is 1
// when j < k (0-based: e_j enters every phase after oscillator j) and 0
// otherwise. Writing C_p = Σ_k cos(θ_k − θ_p) and T_p(j) = Σ_{k>j} cos(θ_k − θ_p),
//
//   Σ_k cos(θ_k − θ_p)(∂θ_k/∂e_j − ∂θ_p/∂e_j) = T_p(j) − [j < p]·C_p,
//
// so A_ij = (K/N)[T_{i+1}(j) − [j < i+1]C_{i+1} − T_i(j) + [j < i]C_i].
Matrix jacobian_a(const NetworkParams& params, const DesiredConfig& cfg, const ErrorState& e) {
  require_lengths(params, cfg, e);
  const Vector theta = reconstruct_phases(e, cfg).theta();
  const Eigen::Index n = theta.size();

  // tail(p, j) = T_p(j) for j in [0, n-1); tail(p, n-1) = 0.
  Matrix tail = Matrix::Zero(n, n);
  Vector total(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    double running = 0.0;
    for (Eigen::Index k = n - 1; k >= 1; --k) {
      running += std::cos(theta(k) - theta(p));
      tail(p, k - 1) = running;
    }
    total(p) = running + std::cos(theta(0) - theta(p));
  }

  const double k_over_n = gain(params);
  Matrix a(n - 1, n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      double value = tail(i + 1, j) - tail(i, j);
      if (j < i + 1) value -= total(i + 1);
      if (j < i) value += total(i);
      a(i, j) = k_over_n * value;
    }
  }
  return a;
}

}  // namespace kuramoto_sdre
