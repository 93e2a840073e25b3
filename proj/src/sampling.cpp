#include "gmcs/sampling.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gmcs/errors.hpp"
#include "gmcs/linalg.hpp"

namespace gmcs {

void validate_channel(const ChannelSpec& ch, int n, bool check_rank) {
  if (!ch.analysis) fail(ErrorCode::invalid_argument, "channel has no analysis filter");
  if (ch.analysis->dimension() != n)
    fail(ErrorCode::invalid_argument, "filter dimension differs from graph order");
  if (ch.generator.rows() != n)
    fail(ErrorCode::invalid_argument, "generator row count differs from graph order");
  if (ch.generator.cols() < 1) fail(ErrorCode::invalid_argument, "generator has no columns");
  std::vector<char> seen(n, 0);
  for (int v : ch.sampling_set) {
    if (v < 0 || v >= n) fail(ErrorCode::invalid_argument, "sampling index out of range");
    if (seen[v]) fail(ErrorCode::invalid_argument, "duplicate vertex in sampling set");
    seen[v] = 1;
  }
  if (check_rank) {
    const PinvResult pr = pseudo_inverse(ch.generator);
    if (pr.rank < ch.generator.cols())
      fail(ErrorCode::invalid_argument, "generator is column-rank deficient");
  }
}

Eigen::MatrixXd sampled_generator(const ChannelSpec& ch, const Eigen::MatrixXd& a) {
  return select_rows(ch.analysis->apply_matrix(a), ch.sampling_set);
}

Eigen::VectorXd apply_sampling(const ChannelSpec& ch, const Eigen::VectorXd& x) {
  if (x.size() != ch.analysis->dimension())
    fail(ErrorCode::invalid_argument, "signal length differs from filter dimension");
  const Eigen::VectorXd filtered = ch.analysis->apply(x);
  Eigen::VectorXd y(ch.sampling_set.size());
  for (std::size_t i = 0; i < ch.sampling_set.size(); ++i) y(i) = filtered(ch.sampling_set[i]);
  return y;
}

SingleRecovery recover_single(const ChannelSpec& ch, const Eigen::VectorXd& samples) {
  if (ch.sampling_set.empty()) fail(ErrorCode::invalid_argument, "empty sampling set");
  if (samples.size() != static_cast<Eigen::Index>(ch.sampling_set.size()))
    fail(ErrorCode::invalid_argument, "sample count differs from sampling set size");
  const Eigen::MatrixXd sta = sampled_generator(ch, ch.generator);
  const PinvResult pr = pseudo_inverse(sta);
  SingleRecovery out;
  out.x_hat = ch.generator * (pr.pinv * samples);
  out.rank = pr.rank;
  out.cond = pr.cond;
  return out;
}

DsCheck check_ds(const ChannelSpec& ch, double kappa_max) {
  if (static_cast<int>(ch.sampling_set.size()) != ch.subspace_dim())
    fail(ErrorCode::invalid_argument,
         "direct-sum check needs |M| == K (square sampled generator)");
  const Eigen::MatrixXd sta = sampled_generator(ch, ch.generator);
  const double cond = condition_number(sta);
  DsCheck out;
  out.cond = cond;
  if (!std::isfinite(cond)) {
    out.holds = false;
    out.reason = "sampled generator is singular";
  } else if (cond > kappa_max) {
    out.holds = false;
    out.reason = "condition number exceeds bound";
  } else {
    out.holds = true;
  }
  return out;
}

Eigen::MatrixXd build_z(const GraphFilter& g, const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd ga = g.apply_matrix(a);
  Eigen::MatrixXd z = ga * ga.transpose();
  return 0.5 * (z + z.transpose()).eval();
}

RichardsonResult neumann_solve(const Eigen::MatrixXd& b, const Eigen::VectorXd& rhs,
                               double beta, int max_iterations) {
  RichardsonResult out;
  const Eigen::Index m = b.rows();
  if (rhs.norm() == 0.0) {
    out.solution = Eigen::VectorXd::Zero(m);
    out.converged = true;
    return out;
  }
  const double inf_norm = b.cwiseAbs().rowwise().sum().maxCoeff();
  if (inf_norm <= 0.0) {
    out.solution = Eigen::VectorXd::Zero(m);
    return out;  // zero operator cannot reproduce a nonzero rhs
  }
  double alpha = 1.0 / inf_norm;
  Eigen::VectorXd eps = alpha * rhs;
  double initial_residual = -1.0;
  while (true) {
    const Eigen::VectorXd be = b * eps;
    const Eigen::VectorXd r = rhs - be;
    out.residual = alpha * r.norm();
    if (initial_residual < 0.0) initial_residual = std::max(out.residual, 1e-300);
    if (out.residual < beta) {
      out.converged = true;
      break;
    }
    if (out.iterations >= max_iterations || out.residual > 1e8 * initial_residual) break;
    const double be2 = be.squaredNorm();
    if (be2 <= 0.0) break;
    alpha = eps.dot(be) / be2;
    eps += alpha * r;
    ++out.iterations;
  }
  out.solution = std::move(eps);
  return out;
}

namespace {

struct GreedyState {
  std::vector<int> chosen;
  std::vector<int> rest;  // ascending candidates

  explicit GreedyState(int n) {
    rest.resize(n);
    for (int i = 0; i < n; ++i) rest[i] = i;
  }

  void accept(int y) {
    chosen.push_back(y);
    rest.erase(std::find(rest.begin(), rest.end(), y));
  }
};

}  // namespace

std::vector<int> sss_greedy_exact(const Eigen::MatrixXd& z, int k, double ridge,
                                  std::vector<double>* scores_out) {
  const int n = static_cast<int>(z.rows());
  if (z.cols() != n) fail(ErrorCode::invalid_argument, "Z must be square");
  if (k < 1 || k > n) fail(ErrorCode::invalid_argument, "need 1 <= K <= N");
  if (ridge < 0.0) ridge = default_ridge(z);

  GreedyState state(n);
  if (scores_out) scores_out->clear();
  for (int pick = 0; pick < k; ++pick) {
    const int m = static_cast<int>(state.chosen.size());
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    if (m > 0) {
      Eigen::MatrixXd zm = submatrix(z, state.chosen, state.chosen);
      zm.diagonal().array() += ridge;
      ldlt.compute(zm);
    }
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int y : state.rest) {
      double score = z(y, y);
      if (m > 0) {
        const Eigen::VectorXd zc = gather_column(z, state.chosen, y);
        score -= zc.dot(ldlt.solve(zc));
      }
      if (score > best_score) {
        best_score = score;
        best = y;
      }
    }
    state.accept(best);
    if (scores_out) scores_out->push_back(best_score);
  }
  return state.chosen;
}

std::vector<int> sss_greedy_neumann(const Eigen::MatrixXd& z, int k, const SssOptions& opt,
                                    NeumannStats* stats, std::vector<double>* scores_out) {
  const int n = static_cast<int>(z.rows());
  if (z.cols() != n) fail(ErrorCode::invalid_argument, "Z must be square");
  if (k < 1 || k > n) fail(ErrorCode::invalid_argument, "need 1 <= K <= N");
  const double ridge = opt.ridge >= 0.0 ? opt.ridge : default_ridge(z);
  const double beta = opt.beta >= 0.0 ? opt.beta : default_neumann_tol(z);

  GreedyState state(n);
  if (scores_out) scores_out->clear();
  for (int pick = 0; pick < k; ++pick) {
    const int m = static_cast<int>(state.chosen.size());
    Eigen::MatrixXd zm;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    bool have_ldlt = false;
    if (m > 0) {
      zm = submatrix(z, state.chosen, state.chosen);
      zm.diagonal().array() += ridge;
    }
    const int cap = opt.max_iter_factor * std::max(1, m);
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int y : state.rest) {
      double score = z(y, y);
      if (m > 0) {
        const Eigen::VectorXd zc = gather_column(z, state.chosen, y);
        RichardsonResult r = neumann_solve(zm, zc, beta, cap);
        if (stats) {
          stats->solves++;
          stats->iterations += r.iterations;
        }
        Eigen::VectorXd eps = std::move(r.solution);
        if (!r.converged) {
          if (!have_ldlt) {
            ldlt.compute(zm);
            have_ldlt = true;
          }
          eps = ldlt.solve(zc);
          if (stats) stats->fallbacks++;
        }
        score -= zc.dot(eps);
      }
      if (score > best_score) {
        best_score = score;
        best = y;
      }
    }
    state.accept(best);
    if (scores_out) scores_out->push_back(best_score);
  }
  return state.chosen;
}

}  // namespace gmcs
