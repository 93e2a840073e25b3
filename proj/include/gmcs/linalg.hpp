#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gmcs {

struct PinvResult {
  Eigen::MatrixXd pinv;
  int rank = 0;
  double sigma_max = 0.0;
  // sigma_max over the smallest retained singular value; 0 when rank == 0
  double cond = 0.0;
};

// Moore-Penrose pseudoinverse; singular values below tol_factor * sigma_max
// are truncated.
PinvResult pseudo_inverse(const Eigen::MatrixXd& a, double tol_factor = 1e-10);

double spectral_norm(const Eigen::MatrixXd& a);

// sigma_max / sigma_min without truncation; +inf for exactly singular input
double condition_number(const Eigen::MatrixXd& a);

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& a, const std::vector<int>& rows,
                          const std::vector<int>& cols);
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& a, const std::vector<int>& rows);
Eigen::VectorXd select_entries(const Eigen::VectorXd& v, const std::vector<int>& idx);
// column `col` of `a` restricted to `rows`
Eigen::VectorXd gather_column(const Eigen::MatrixXd& a, const std::vector<int>& rows, int col);

}  // namespace gmcs
