#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kuramoto_sdre {

/// Dense real matrix. Entries are expected to be finite; operations that
/// accept external data check this with require_finite().
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by lu_solve when a pivot falls below 1e-14·‖a‖_∞.
class SingularMatrix : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

/// Raised by svd when the factorization produces non-finite output.
class NoConvergence : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

/// Full singular value decomposition m = u · diag(singular_values) · vt.
/// u is rows×rows, vt is cols×cols, singular values descending and >= 0.
struct SvdResult {
  Matrix u;
  Vector singular_values;
  Matrix vt;
};

/// Throws std::invalid_argument naming `what` if any entry is NaN or Inf.
void require_finite(const Eigen::Ref<const Matrix>& m, const std::string& what);

/// Solves a·x = b with partially pivoted LU.
Matrix lu_solve(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b);

SvdResult svd(const Eigen::Ref<const Matrix>& m);

/// Default singular value cutoff max(rows, cols)·σ_max·1e-12.
double default_rank_tolerance(const Vector& singular_values, Eigen::Index rows,
                              Eigen::Index cols);

/// Moore–Penrose pseudoinverse. Singular values <= tol count as zero; a
/// negative tol selects default_rank_tolerance().
Matrix pinv(const Eigen::Ref<const Matrix>& m, double tol = -1.0);

/// Number of singular values strictly greater than tol (negative tol: default).
int numerical_rank(const Eigen::Ref<const Matrix>& m, double tol = -1.0);

}  // namespace kuramoto_sdre
