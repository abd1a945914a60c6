#pragma once

#include <stdexcept>

#include "kuramoto_sdre/linalg.h"

namespace kuramoto_sdre {

/// The (A, B) pair admits no stabilizing solution at this point, or the
/// doubling iteration diverged.
class NotStabilizable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Q not symmetric positive semidefinite, or R not symmetric positive definite.
class BadWeights : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Continuous-time algebraic Riccati equation
///   Aᵀ P + P A − P B R⁻¹ Bᵀ P + Q = 0
/// with A n×n, B n×m, Q n×n (symmetric PSD) and R m×m (symmetric PD).
struct CareProblem {
  Matrix a;
  Matrix b;
  Matrix q;
  Matrix r;
};

struct CareSolution {
  Matrix p;
  double residual_norm = 0.0;
  int iterations = 0;
};

struct CareOptions {
  int max_iterations = 100;
  /// Stop when ‖H_{k+1} − H_k‖_F <= relative_tolerance · ‖H_k‖_F.
  double relative_tolerance = 1e-12;
  /// Iterates with Frobenius norm above this count as divergence.
  double divergence_threshold = 1e12;
  /// Acceptance bound on the residual, relative to max(1, ‖P‖_F).
  double residual_tolerance = 1e-8;
};

/// Throws BadWeights if the problem's weight matrices violate their
/// invariants, std::invalid_argument on dimension mismatch.
void validate(const CareProblem& problem);

/// Frobenius norm of Aᵀ P + P A − P B R⁻¹ Bᵀ P + Q.
double care_residual(const CareProblem& problem, const Eigen::Ref<const Matrix>& p);

/// Stabilizing solution by the structure-preserving doubling algorithm.
///
/// The Hamiltonian pencil is Cayley-transformed with γ = max(1, ‖A‖_F)
/// (doubled if A − γI or the Cayley denominator is singular) into the
/// symplectic form
///
///   M = [E₀ 0; −H₀ I],  L = [I −G₀; 0 E₀ᵀ],
///
/// then E, G, H are updated by the doubling recurrences until H converges to
/// P. If the residual misses tolerance a single Newton–Kleinman step is
/// attempted.
CareSolution solve_care(const CareProblem& problem, const CareOptions& options = {});

/// Lyapunov solve Acᵀ X + X Ac + W = 0 for Hurwitz Ac, by Cayley transform
/// and squared Smith iteration. Throws NotStabilizable if the iteration does
/// not converge (Ac not Hurwitz).
Matrix solve_lyapunov(const Eigen::Ref<const Matrix>& ac, const Eigen::Ref<const Matrix>& w);

/// Rank of the Kalman controllability matrix [B, AB, …, Aⁿ⁻¹B].
int controllability_rank(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b,
                         double tol = -1.0);

}  // namespace kuramoto_sdre
