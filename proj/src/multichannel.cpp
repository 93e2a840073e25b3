#include "gmcs/multichannel.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gmcs/errors.hpp"
#include "gmcs/linalg.hpp"

namespace gmcs {

McsSystem make_mcs(ChannelSpec ch0, ChannelSpec ch1, int n) {
  // rank deficiency (band-pass generators with dead spectral regions) is
  // legal here; the recovery path handles it through the pseudoinverse
  validate_channel(ch0, n, false);
  validate_channel(ch1, n, false);
  McsSystem sys;
  sys.n = n;
  sys.channels = {std::move(ch0), std::move(ch1)};

  std::vector<char> in0(n, 0);
  for (int v : sys.channels[0].sampling_set) in0[v] = 1;
  bool complement = sys.channels[0].sampling_set.size() + sys.channels[1].sampling_set.size() ==
                    static_cast<std::size_t>(n);
  if (complement)
    for (int v : sys.channels[1].sampling_set)
      if (in0[v]) {
        complement = false;
        break;
      }
  sys.critically_sampled = complement;
  return sys;
}

CorrectionMatrix assemble_correction(const McsSystem& sys, double pinv_tol) {
  const auto& c0 = sys.channels[0];
  const auto& c1 = sys.channels[1];
  const int m0 = static_cast<int>(c0.sampling_set.size());
  const int m1 = static_cast<int>(c1.sampling_set.size());
  const int k0 = c0.subspace_dim();
  const int k1 = c1.subspace_dim();

  CorrectionMatrix out;
  out.m_sa.resize(m0 + m1, k0 + k1);
  const Eigen::MatrixXd b00 = sampled_generator(c0, c0.generator);
  const Eigen::MatrixXd b01 = sampled_generator(c0, c1.generator);
  const Eigen::MatrixXd b10 = sampled_generator(c1, c0.generator);
  const Eigen::MatrixXd b11 = sampled_generator(c1, c1.generator);
  out.m_sa.topLeftCorner(m0, k0) = b00;
  out.m_sa.topRightCorner(m0, k1) = b01;
  out.m_sa.bottomLeftCorner(m1, k0) = b10;
  out.m_sa.bottomRightCorner(m1, k1) = b11;
  out.block_cond[0][0] = condition_number(b00);
  out.block_cond[0][1] = condition_number(b01);
  out.block_cond[1][0] = condition_number(b10);
  out.block_cond[1][1] = condition_number(b11);

  PinvResult pr = pseudo_inverse(out.m_sa, pinv_tol);
  out.pinv = std::move(pr.pinv);
  out.rank = pr.rank;
  out.cond = pr.cond;
  return out;
}

McsRecovery recover_mcs(const McsSystem& sys, const CorrectionMatrix& corr,
                        const Eigen::VectorXd& x) {
  if (x.size() != sys.n) fail(ErrorCode::invalid_argument, "signal length mismatch");
  const auto& c0 = sys.channels[0];
  const auto& c1 = sys.channels[1];
  const Eigen::VectorXd y0 = apply_sampling(c0, x);
  const Eigen::VectorXd y1 = apply_sampling(c1, x);
  Eigen::VectorXd y(y0.size() + y1.size());
  y << y0, y1;
  const Eigen::VectorXd d = corr.pinv * y;
  McsRecovery out;
  out.x_hat = c0.generator * d.head(c0.subspace_dim()) +
              c1.generator * d.tail(c1.subspace_dim());
  out.residual = (x - out.x_hat).norm();
  const double mse = (x - out.x_hat).squaredNorm() / static_cast<double>(sys.n);
  out.mse_db = mse > 0.0 ? 10.0 * std::log10(mse) : -std::numeric_limits<double>::infinity();
  out.rank = corr.rank;
  out.cond = corr.cond;
  return out;
}

McsRecovery recover_mcs(const McsSystem& sys, const Eigen::VectorXd& x, double pinv_tol) {
  return recover_mcs(sys, assemble_correction(sys, pinv_tol), x);
}

Eigen::VectorXd SubbandOperators::apply_sa(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd y0 = apply_sampling(ch0_, x);
  const Eigen::VectorXd y1 = apply_sampling(ch1_, x);
  return y0 - s0a1_ * lu11_.solve(y1);
}

Eigen::VectorXd SubbandOperators::apply_sb(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd y0 = apply_sampling(ch0_, x);
  const Eigen::VectorXd y1 = apply_sampling(ch1_, x);
  return y1 - s1a0_ * lu00_.solve(y0);
}

Eigen::MatrixXd SubbandOperators::dense_sa() const {
  Eigen::MatrixXd out(ch0_.sampling_set.size(), n_);
  for (int j = 0; j < n_; ++j) out.col(j) = apply_sa(Eigen::VectorXd::Unit(n_, j));
  return out;
}

Eigen::MatrixXd SubbandOperators::dense_sb() const {
  Eigen::MatrixXd out(ch1_.sampling_set.size(), n_);
  for (int j = 0; j < n_; ++j) out.col(j) = apply_sb(Eigen::VectorXd::Unit(n_, j));
  return out;
}

SubbandOperators subband_operators(const McsSystem& sys, double kappa_max) {
  const auto& c0 = sys.channels[0];
  const auto& c1 = sys.channels[1];
  if (static_cast<int>(c0.sampling_set.size()) != c0.subspace_dim() ||
      static_cast<int>(c1.sampling_set.size()) != c1.subspace_dim())
    fail(ErrorCode::invalid_argument,
         "subband form needs square diagonal blocks (|M_l| == K_l)");

  SubbandOperators ops;
  ops.ch0_ = c0;
  ops.ch1_ = c1;
  ops.n_ = sys.n;
  ops.s0a0_ = sampled_generator(c0, c0.generator);
  ops.s1a1_ = sampled_generator(c1, c1.generator);
  ops.s0a1_ = sampled_generator(c0, c1.generator);
  ops.s1a0_ = sampled_generator(c1, c0.generator);
  ops.cond00_ = condition_number(ops.s0a0_);
  ops.cond11_ = condition_number(ops.s1a1_);
  if (!(ops.cond00_ <= kappa_max))
    fail(ErrorCode::numeric, "S_0^T A_0 fails the invertibility precondition");
  if (!(ops.cond11_ <= kappa_max))
    fail(ErrorCode::numeric, "S_1^T A_1 fails the invertibility precondition");
  ops.lu00_.compute(ops.s0a0_);
  ops.lu11_.compute(ops.s1a1_);
  return ops;
}

Eigen::VectorXd recover_mcs_subband(const McsSystem& sys, const Eigen::VectorXd& x,
                                    double kappa_max) {
  if (x.size() != sys.n) fail(ErrorCode::invalid_argument, "signal length mismatch");
  const SubbandOperators ops = subband_operators(sys, kappa_max);
  // Schur complements of the stacked correction matrix
  const Eigen::MatrixXd sa_a0 = ops.s0a0() - ops.s0a1() * ops.s1a1().lu().solve(ops.s1a0());
  const Eigen::MatrixXd sb_a1 = ops.s1a1() - ops.s1a0() * ops.s0a0().lu().solve(ops.s0a1());
  const Eigen::VectorXd ya = ops.apply_sa(x);
  const Eigen::VectorXd yb = ops.apply_sb(x);
  const PinvResult pa = pseudo_inverse(sa_a0);
  const PinvResult pb = pseudo_inverse(sb_a1);
  return sys.channels[0].generator * (pa.pinv * ya) +
         sys.channels[1].generator * (pb.pinv * yb);
}

TwoChannelSssResult sss_two_channel(const Eigen::MatrixXd& z0, const Eigen::MatrixXd& z1,
                                    int k, const TwoChannelSssOptions& opt) {
  const int n = static_cast<int>(z0.rows());
  if (z0.cols() != n || z1.rows() != n || z1.cols() != n)
    fail(ErrorCode::invalid_argument, "Z matrices must be square and same size");
  if (k < 1 || k > n) fail(ErrorCode::invalid_argument, "need 1 <= K <= N");

  const double ridge0 = opt.ridge >= 0.0 ? opt.ridge : default_ridge(z0);
  const double ridge1 = opt.ridge >= 0.0 ? opt.ridge : default_ridge(z1);
  const double gamma0 = opt.gamma >= 0.0 ? opt.gamma : default_neumann_tol(z0);
  const double gamma1 = opt.gamma >= 0.0 ? opt.gamma : default_neumann_tol(z1);
  const double floor_value =
      opt.denom_floor >= 0.0 ? opt.denom_floor : 1e-12 * z1.trace() / static_cast<double>(n);

  TwoChannelSssResult out;
  out.min_denominator = std::numeric_limits<double>::infinity();
  std::vector<int> chosen;
  std::vector<int> rest(n);
  for (int i = 0; i < n; ++i) rest[i] = i;

  for (int pick = 0; pick < k; ++pick) {
    const int m = static_cast<int>(chosen.size());
    Eigen::MatrixXd z0m;
    Eigen::LDLT<Eigen::MatrixXd> num_ldlt;
    bool have_num_ldlt = false;
    if (m > 0) {
      z0m = submatrix(z0, chosen, chosen);
      z0m.diagonal().array() += ridge0;
      if (!opt.neumann) {
        num_ldlt.compute(z0m);
        have_num_ldlt = true;
      }
    }

    // denominators for every candidate via the diagonal of the inverse of
    // Z1 restricted to the complement of M
    Eigen::MatrixXd h = submatrix(z1, rest, rest);
    h.diagonal().array() += ridge1;
    Eigen::MatrixXd h_inv;
    if (!opt.neumann) {
      Eigen::LDLT<Eigen::MatrixXd> den_ldlt(h);
      h_inv = den_ldlt.solve(Eigen::MatrixXd::Identity(h.rows(), h.cols()));
    }

    const int cap = opt.max_iter_factor * std::max(1, std::max(m, n - m - 1));
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    double best_den = 0.0;
    for (std::size_t pos = 0; pos < rest.size(); ++pos) {
      const int y = rest[pos];
      double numerator = z0(y, y);
      double denominator;
      if (!opt.neumann) {
        if (m > 0) {
          const Eigen::VectorXd zc = gather_column(z0, chosen, y);
          numerator -= zc.dot(num_ldlt.solve(zc));
        }
        const double diag = h_inv(pos, pos);
        denominator = diag > 0.0 ? 1.0 / diag - ridge1 : 0.0;
      } else {
        // per-candidate systems: numerator over M, denominator over the
        // complement without y
        std::vector<int> mbar;
        mbar.reserve(rest.size() - 1);
        for (int r : rest)
          if (r != y) mbar.push_back(r);

        Eigen::VectorXd z0c, z1c;
        if (m > 0) z0c = gather_column(z0, chosen, y);
        Eigen::MatrixXd z1m;
        if (!mbar.empty()) {
          z1m = submatrix(z1, mbar, mbar);
          z1m.diagonal().array() += ridge1;
          z1c = gather_column(z1, mbar, y);
        }

        Eigen::VectorXd num_sol, den_sol;
        bool num_done = (m == 0), den_done = mbar.empty();
        // joint iteration: both residual tests advance together and the loop
        // exits as soon as either side converges; unconverged sides finish
        // with a direct solve
        if (!num_done && !den_done) {
          RichardsonResult a, b;
          {
            // run both up to the cap in lockstep, stopping when either meets
            // its tolerance
            const double inf0 = z0m.cwiseAbs().rowwise().sum().maxCoeff();
            const double inf1 = z1m.cwiseAbs().rowwise().sum().maxCoeff();
            double alpha = inf0 > 0 ? 1.0 / inf0 : 0.0;
            double betaa = inf1 > 0 ? 1.0 / inf1 : 0.0;
            Eigen::VectorXd e0 = alpha * z0c, e1 = betaa * z1c;
            int it = 0;
            bool c0 = false, c1 = false;
            while (it < cap) {
              const Eigen::VectorXd be0 = z0m * e0;
              const Eigen::VectorXd be1 = z1m * e1;
              const Eigen::VectorXd r0 = z0c - be0;
              const Eigen::VectorXd r1 = z1c - be1;
              c0 = alpha * r0.norm() < gamma0;
              c1 = betaa * r1.norm() < gamma1;
              if (c0 || c1) break;
              const double d0 = be0.squaredNorm(), d1 = be1.squaredNorm();
              if (d0 <= 0.0 || d1 <= 0.0) break;
              alpha = e0.dot(be0) / d0;
              betaa = e1.dot(be1) / d1;
              e0 += alpha * r0;
              e1 += betaa * r1;
              ++it;
            }
            a.solution = e0;
            a.converged = c0;
            b.solution = e1;
            b.converged = c1;
            a.iterations = b.iterations = it;
            out.stats.solves += 2;
            out.stats.iterations += 2 * it;
          }
          num_sol = std::move(a.solution);
          den_sol = std::move(b.solution);
          if (!a.converged) {
            num_sol = Eigen::LDLT<Eigen::MatrixXd>(z0m).solve(z0c);
            out.stats.fallbacks++;
          }
          if (!b.converged) {
            den_sol = Eigen::LDLT<Eigen::MatrixXd>(z1m).solve(z1c);
            out.stats.fallbacks++;
          }
          num_done = den_done = true;
          numerator -= z0c.dot(num_sol);
          denominator = z1(y, y) - z1c.dot(den_sol);
        } else {
          if (!num_done) {
            RichardsonResult r = neumann_solve(z0m, z0c, gamma0, cap);
            out.stats.solves++;
            out.stats.iterations += r.iterations;
            Eigen::VectorXd sol = std::move(r.solution);
            if (!r.converged) {
              if (!have_num_ldlt) {
                num_ldlt.compute(z0m);
                have_num_ldlt = true;
              }
              sol = num_ldlt.solve(z0c);
              out.stats.fallbacks++;
            }
            numerator -= z0c.dot(sol);
          }
          if (!den_done) {
            RichardsonResult r = neumann_solve(z1m, z1c, gamma1, cap);
            out.stats.solves++;
            out.stats.iterations += r.iterations;
            Eigen::VectorXd sol = std::move(r.solution);
            if (!r.converged) {
              sol = Eigen::LDLT<Eigen::MatrixXd>(z1m).solve(z1c);
              out.stats.fallbacks++;
            }
            denominator = z1(y, y) - z1c.dot(sol);
          } else {
            denominator = z1(y, y);
          }
        }
      }

      const double floored = std::max(denominator, floor_value);
      const double score = numerator / floored;
      if (score > best_score) {
        best_score = score;
        best = y;
        best_den = floored;
      }
    }
    chosen.push_back(best);
    rest.erase(std::find(rest.begin(), rest.end(), best));
    out.scores.push_back(best_score);
    out.min_denominator = std::min(out.min_denominator, best_den);
  }

  out.set0 = std::move(chosen);
  out.set1 = std::move(rest);
  return out;
}

}  // namespace gmcs
