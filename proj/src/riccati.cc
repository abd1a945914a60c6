#include "kuramoto_sdre/riccati.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace kuramoto_sdre {
namespace {

constexpr int kMaxCayleyRetries = 8;

bool is_symmetric(const Matrix& m) {
  return (m - m.transpose()).norm() <= 1e-10 * m.norm();
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

// Starting point of the doubling iteration after the Cayley transform.
struct DoublingState {
  Matrix e;
  Matrix g;
  Matrix h;
};

DoublingState cayley_start(const Matrix& a, const Matrix& g, const Matrix& q, double gamma) {
  const Eigen::Index n = a.rows();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix a_gamma = a - gamma * identity;
  const Matrix a_gamma_inv = lu_solve(a_gamma, identity);
  const Matrix w = a_gamma.transpose() + q * a_gamma_inv * g;
  const Matrix w_inv = lu_solve(w, identity);
  return {identity + 2.0 * gamma * w_inv.transpose(),
          symmetrized(-2.0 * gamma * a_gamma_inv * g * w_inv),
          symmetrized(2.0 * gamma * w_inv * q * a_gamma_inv)};
}

bool psd_with_shift(const Matrix& p) {
  const double shift = 1e-12 * std::max(1.0, p.norm());
  const Eigen::LLT<Matrix> llt(p + shift * Matrix::Identity(p.rows(), p.cols()));
  return llt.info() == Eigen::Success;
}

}  // namespace

void validate(const CareProblem& problem) {
  const Eigen::Index n = problem.a.rows();
  const Eigen::Index m = problem.b.cols();
  if (problem.a.cols() != n || problem.b.rows() != n) {
    throw std::invalid_argument("CareProblem: A must be n×n and B n×m");
  }
  if (problem.q.rows() != n || problem.q.cols() != n) {
    throw std::invalid_argument("CareProblem: Q must be n×n");
  }
  if (problem.r.rows() != m || problem.r.cols() != m) {
    throw std::invalid_argument("CareProblem: R must be m×m");
  }
  require_finite(problem.a, "CareProblem A");
  require_finite(problem.b, "CareProblem B");
  require_finite(problem.q, "CareProblem Q");
  require_finite(problem.r, "CareProblem R");
  if (!is_symmetric(problem.q)) throw BadWeights("Q is not symmetric");
  if (!is_symmetric(problem.r)) throw BadWeights("R is not symmetric");
  if (Eigen::LLT<Matrix>(problem.r).info() != Eigen::Success) {
    throw BadWeights("R is not positive definite");
  }
  const Eigen::LDLT<Matrix> q_ldlt(problem.q);
  if (q_ldlt.info() != Eigen::Success || !q_ldlt.isPositive()) {
    throw BadWeights("Q is not positive semidefinite");
  }
}

double care_residual(const CareProblem& problem, const Eigen::Ref<const Matrix>& p) {
  const Matrix r_inv_bt_p = Eigen::LLT<Matrix>(problem.r).solve(problem.b.transpose() * p);
  const Matrix residual = problem.a.transpose() * p + p * problem.a -
                          p * problem.b * r_inv_bt_p + problem.q;
  return residual.norm();
}

Matrix solve_lyapunov(const Eigen::Ref<const Matrix>& ac, const Eigen::Ref<const Matrix>& w) {
  const Eigen::Index n = ac.rows();
  const Matrix identity = Matrix::Identity(n, n);
  const double gamma = std::max(1.0, ac.norm());
  const Matrix m_inv = lu_solve(ac - gamma * identity, identity);

  // Stein form X = Tᵀ X T + 2γ M⁻ᵀ W M⁻¹, M = Ac − γI, T = (Ac + γI) M⁻¹.
  Matrix t = (ac + gamma * identity) * m_inv;
  Matrix x = 2.0 * gamma * m_inv.transpose() * w * m_inv;
  for (int k = 0; k < 100; ++k) {
    const Matrix increment = t.transpose() * x * t;
    x += increment;
    x = symmetrized(x);
    t = t * t;
    if (!x.allFinite() || x.norm() > 1e12 * std::max(1.0, w.norm())) break;
    if (increment.norm() <= 1e-15 * x.norm()) return x;
  }
  throw NotStabilizable("solve_lyapunov: closed-loop matrix is not Hurwitz");
}

CareSolution solve_care(const CareProblem& problem, const CareOptions& options) {
  validate(problem);
  const Matrix& a = problem.a;
  const Eigen::Index n = a.rows();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix g = symmetrized(problem.b * Eigen::LLT<Matrix>(problem.r).solve(problem.b.transpose()));

  double gamma = std::max(1.0, a.norm());
  DoublingState s;
  for (int attempt = 0;; ++attempt) {
    try {
      s = cayley_start(a, g, problem.q, gamma);
      break;
    } catch (const SingularMatrix&) {
      if (attempt == kMaxCayleyRetries) {
        throw NotStabilizable("solve_care: Cayley transform is singular");
      }
      gamma *= 2.0;
    }
  }

  CareSolution solution;
  bool converged = false;
  for (int k = 0; k < options.max_iterations; ++k) {
    Matrix i_minus_gh = identity - s.g * s.h;
    Matrix inv_e;
    Matrix inv_g;
    try {
      inv_e = lu_solve(i_minus_gh, s.e);
      inv_g = lu_solve(i_minus_gh, s.g);
    } catch (const SingularMatrix&) {
      throw NotStabilizable("solve_care: doubling step became singular");
    }
    Matrix h_next = symmetrized(s.h + s.e.transpose() * s.h * inv_e);
    s.g = symmetrized(s.g + s.e * inv_g * s.e.transpose());
    s.e = s.e * inv_e;

    const double change = (h_next - s.h).norm();
    s.h = std::move(h_next);
    solution.iterations = k + 1;
    if (!s.h.allFinite() || s.h.norm() > options.divergence_threshold) {
      throw NotStabilizable("solve_care: doubling iteration diverged");
    }
    if (change <= options.relative_tolerance * s.h.norm()) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NotStabilizable("solve_care: no convergence within " +
                          std::to_string(options.max_iterations) + " iterations");
  }

  solution.p = std::move(s.h);
  solution.residual_norm = care_residual(problem, solution.p);
  auto within_tolerance = [&](const CareSolution& c) {
    return c.residual_norm <= options.residual_tolerance * std::max(1.0, c.p.norm());
  };

  if (!within_tolerance(solution)) {
    // One Newton–Kleinman step: (A − G P)ᵀ X + X (A − G P) + Q + P G P = 0.
    try {
      const Matrix ac = a - g * solution.p;
      const Matrix rhs = problem.q + solution.p * g * solution.p;
      Matrix polished = symmetrized(solve_lyapunov(ac, rhs));
      const double polished_residual = care_residual(problem, polished);
      if (polished_residual < solution.residual_norm) {
        solution.p = std::move(polished);
        solution.residual_norm = polished_residual;
      }
    } catch (const std::runtime_error&) {
      // keep the unpolished iterate; the tolerance check below decides.
    }
  }
  if (!within_tolerance(solution)) {
    throw NotStabilizable("solve_care: residual " + std::to_string(solution.residual_norm) +
                          " above tolerance");
  }
  if (!psd_with_shift(solution.p)) {
    throw NotStabilizable("solve_care: solution is not positive semidefinite");
  }
  return solution;
}

int controllability_rank(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b,
                         double tol) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  if (a.cols() != n || b.rows() != n) {
    throw std::invalid_argument("controllability_rank: dimension mismatch");
  }
  Matrix kalman(n, n * m);
  Matrix block = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    kalman.middleCols(k * m, m) = block;
    block = a * block;
  }
  return numerical_rank(kalman, tol);
}

}  // namespace kuramoto_sdre
