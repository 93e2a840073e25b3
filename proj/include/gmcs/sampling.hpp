#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gmcs/filters.hpp"

namespace gmcs {

// One sampling channel: analysis filter, generator matrix (columns span the
// signal subspace) and the ordered vertex sampling set.
struct ChannelSpec {
  FilterPtr analysis;
  Eigen::MatrixXd generator;
  std::vector<int> sampling_set;

  int subspace_dim() const { return static_cast<int>(generator.cols()); }
};

// Cheap structural checks; set check_rank to also verify the generator has
// full column rank (SVD).
void validate_channel(const ChannelSpec& ch, int n, bool check_rank = false);

// Filter the columns of `a` with the channel's analysis filter and keep the
// rows indexed by the sampling set.
Eigen::MatrixXd sampled_generator(const ChannelSpec& ch, const Eigen::MatrixXd& a);

// y = (G x) restricted to the sampling set
Eigen::VectorXd apply_sampling(const ChannelSpec& ch, const Eigen::VectorXd& x);

struct SingleRecovery {
  Eigen::VectorXd x_hat;
  int rank = 0;
  double cond = 0.0;
};

// x_hat = A (S^T A)^+ y with singular values below 1e-10 sigma_max truncated
SingleRecovery recover_single(const ChannelSpec& ch, const Eigen::VectorXd& samples);

struct DsCheck {
  bool holds = false;
  double cond = 0.0;
  std::string reason;
};

// Direct-sum check for the square case |M| == K: S^T A invertible with
// condition number at most kappa_max.
DsCheck check_ds(const ChannelSpec& ch, double kappa_max = 1e8);

// Z = (G A)(G A)^T, built by filtering the generator columns
Eigen::MatrixXd build_z(const GraphFilter& g, const Eigen::MatrixXd& a);

inline double default_ridge(const Eigen::MatrixXd& z) {
  return 1e-8 * z.trace() / static_cast<double>(z.rows());
}
inline double default_neumann_tol(const Eigen::MatrixXd& z) {
  return 1e-9 * z.trace() / static_cast<double>(z.rows());
}

// Greedy maximisation of det(Z_M) via the Schur-complement score
// Z_yy - Z_{y,M} (Z_M + ridge I)^{-1} Z_{M,y}, ties broken by lowest vertex
// index. ridge < 0 selects the default 1e-8 trace(Z)/N. When `scores_out` is
// given it receives the accepted score of each pick.
std::vector<int> sss_greedy_exact(const Eigen::MatrixXd& z, int k, double ridge = -1.0,
                                  std::vector<double>* scores_out = nullptr);

struct RichardsonResult {
  Eigen::VectorXd solution;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // final ||alpha (rhs - B eps)||
};

// Adaptive-step Richardson iteration for B eps = rhs (B symmetric positive
// definite): eps^{m+1} = eps^m + alpha_{m+1} (rhs - B eps^m) with
// alpha_{m+1} = (eps^T B eps) / ||B eps||^2, alpha_0 = 1/||B||_inf, stopping
// once ||alpha_m (rhs - B eps^m)|| < beta.
RichardsonResult neumann_solve(const Eigen::MatrixXd& b, const Eigen::VectorXd& rhs,
                               double beta, int max_iterations);

struct NeumannStats {
  long solves = 0;
  long fallbacks = 0;
  long iterations = 0;
};

struct SssOptions {
  double ridge = -1.0;       // < 0: 1e-8 trace(Z)/N
  double beta = -1.0;        // < 0: 1e-9 trace(Z)/N
  int max_iter_factor = 10;  // iteration cap = factor * |M|
};

// Same greedy selection with the inner solves replaced by the Richardson
// iteration; falls back to a direct solve per candidate on non-convergence.
std::vector<int> sss_greedy_neumann(const Eigen::MatrixXd& z, int k,
                                    const SssOptions& opt = {},
                                    NeumannStats* stats = nullptr,
                                    std::vector<double>* scores_out = nullptr);

}  // namespace gmcs
