#include "kuramoto_sdre/linalg.h"

#include <algorithm>
#include <limits>

namespace kuramoto_sdre {

void require_finite(const Eigen::Ref<const Matrix>& m, const std::string& what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(what + " contains non-finite entries");
  }
}

Matrix lu_solve(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("lu_solve: matrix is not square");
  }
  if (b.rows() != a.rows()) {
    throw std::invalid_argument("lu_solve: right-hand side row count mismatch");
  }
  const Eigen::PartialPivLU<Matrix> lu(a);
  // ‖a‖_∞ is the max absolute row sum.
  const double a_inf = a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
  const double threshold = 1e-14 * a_inf;
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (a.rows() > 0 && (a_inf == 0.0 || pivots.minCoeff() < threshold)) {
    throw SingularMatrix("lu_solve: pivot below 1e-14·‖a‖_∞");
  }
  return lu.solve(b);
}

SvdResult svd(const Eigen::Ref<const Matrix>& m) {
  require_finite(m, "svd input");
  // Eigen returns singular values sorted in decreasing order.
  const Eigen::JacobiSVD<Matrix> decomposition(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult result{decomposition.matrixU(), decomposition.singularValues(),
                   decomposition.matrixV().transpose()};
  if (!result.u.allFinite() || !result.vt.allFinite() || !result.singular_values.allFinite()) {
    throw NoConvergence("svd: factorization did not converge");
  }
  return result;
}

double default_rank_tolerance(const Vector& singular_values, Eigen::Index rows,
                              Eigen::Index cols) {
  const double sigma_max = singular_values.size() == 0 ? 0.0 : singular_values.maxCoeff();
  return static_cast<double>(std::max(rows, cols)) * sigma_max * 1e-12;
}

Matrix pinv(const Eigen::Ref<const Matrix>& m, double tol) {
  const SvdResult f = svd(m);
  if (tol < 0.0) tol = default_rank_tolerance(f.singular_values, m.rows(), m.cols());

  Matrix result = Matrix::Zero(m.cols(), m.rows());
  for (Eigen::Index k = 0; k < f.singular_values.size(); ++k) {
    const double sigma = f.singular_values(k);
    if (sigma <= tol) break;
    result.noalias() += (f.vt.row(k).transpose() / sigma) * f.u.col(k).transpose();
  }
  return result;
}

int numerical_rank(const Eigen::Ref<const Matrix>& m, double tol) {
  require_finite(m, "numerical_rank input");
  const Eigen::JacobiSVD<Matrix> decomposition(m);
  const Vector& s = decomposition.singularValues();
  if (tol < 0.0) tol = default_rank_tolerance(s, m.rows(), m.cols());
  return static_cast<int>((s.array() > tol).count());
}

}  // namespace kuramoto_sdre
