#include "gmcs/linalg.hpp"

#include <Eigen/SVD>
#include <limits>

namespace gmcs {

PinvResult pseudo_inverse(const Eigen::MatrixXd& a, double tol_factor) {
  PinvResult out;
  if (a.size() == 0) {
    out.pinv = Eigen::MatrixXd::Zero(a.cols(), a.rows());
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  out.sigma_max = s.size() > 0 ? s(0) : 0.0;
  const double tol = tol_factor * out.sigma_max;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  double smallest_kept = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol && s(i) > 0.0) {
      inv(i) = 1.0 / s(i);
      smallest_kept = s(i);
      ++out.rank;
    }
  }
  out.cond = out.rank > 0 ? out.sigma_max / smallest_kept : 0.0;
  out.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return out;
}

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

double condition_number(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& a, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& a, const std::vector<int>& rows) {
  Eigen::MatrixXd out(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = a.row(rows[i]);
  return out;
}

Eigen::VectorXd select_entries(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

Eigen::VectorXd gather_column(const Eigen::MatrixXd& a, const std::vector<int>& rows,
                              int col) {
  Eigen::VectorXd out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out(i) = a(rows[i], col);
  return out;
}

}  // namespace gmcs
