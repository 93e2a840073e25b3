#include "gmcs/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gmcs/errors.hpp"
#include "gmcs/rng.hpp"

namespace gmcs {

namespace {

// largest-magnitude entry (lowest index on ties) made positive
void fix_signs(Eigen::MatrixXd& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    Eigen::Index best = 0;
    double best_mag = std::abs(u(0, c));
    for (Eigen::Index r = 1; r < u.rows(); ++r) {
      const double m = std::abs(u(r, c));
      if (m > best_mag) {
        best_mag = m;
        best = r;
      }
    }
    if (u(best, c) < 0.0) u.col(c) = -u.col(c);
  }
}

struct KmeansRun {
  std::vector<int> labels;
  double objective = std::numeric_limits<double>::infinity();
};

KmeansRun kmeans_once(const Eigen::MatrixXd& pts, int p, Rng& rng) {
  const int n = static_cast<int>(pts.rows());
  Eigen::MatrixXd centers(p, pts.cols());

  // k-means++ seeding
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
  int first = rng.uniform_int(n);
  centers.row(0) = pts.row(first);
  for (int c = 1; c < p; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = (pts.row(i) - centers.row(c - 1)).squaredNorm();
      dist2[i] = std::min(dist2[i], d);
      total += dist2[i];
    }
    int pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        acc += dist2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_int(n);
    }
    centers.row(c) = pts.row(pick);
  }

  std::vector<int> labels(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    std::vector<int> counts(p, 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (pts.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < p; ++c) {
        const double d = (pts.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != best) changed = true;
      labels[i] = best;
    }
    for (int i = 0; i < n; ++i) counts[labels[i]]++;
    // empty cluster: move the point farthest from its assigned centre
    for (int c = 0; c < p; ++c) {
      if (counts[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[labels[i]] <= 1) continue;
        const double d = (pts.row(i) - centers.row(labels[i])).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) fail(ErrorCode::numeric, "could not repopulate an empty cluster");
      counts[labels[far]]--;
      labels[far] = c;
      counts[c] = 1;
      changed = true;
    }
    centers.setZero();
    for (int i = 0; i < n; ++i) centers.row(labels[i]) += pts.row(i);
    for (int c = 0; c < p; ++c) centers.row(c) /= static_cast<double>(counts[c]);
    if (!changed && iter > 0) break;
  }

  KmeansRun run;
  run.labels = std::move(labels);
  run.objective = 0.0;
  for (int i = 0; i < n; ++i)
    run.objective += (pts.row(i) - centers.row(run.labels[i])).squaredNorm();
  return run;
}

}  // namespace

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& op, LaplacianKind kind) {
  if (op.rows() != op.cols() || op.rows() == 0)
    fail(ErrorCode::invalid_argument, "operator must be square and non-empty");
  const double asym = (op - op.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    fail(ErrorCode::invalid_argument, "operator is not symmetric (max asymmetry " +
                                          std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::numeric, "eigendecomposition failed to converge");
  SpectralDecomposition d;
  d.evals = solver.eigenvalues();
  d.evecs = solver.eigenvectors();
  d.operator_kind = kind;
  fix_signs(d.evecs);
  return d;
}

Eigen::VectorXd gft(const SpectralDecomposition& d, const Eigen::VectorXd& x) {
  if (x.size() != d.order()) fail(ErrorCode::invalid_argument, "signal length mismatch");
  return d.evecs.transpose() * x;
}

Eigen::VectorXd igft(const SpectralDecomposition& d, const Eigen::VectorXd& xhat) {
  if (xhat.size() != d.order()) fail(ErrorCode::invalid_argument, "spectrum length mismatch");
  return d.evecs * xhat;
}

Clustering spectral_clusters(const SpectralDecomposition& d, int p, std::uint64_t seed) {
  const int n = d.order();
  if (p < 2) fail(ErrorCode::invalid_argument, "need at least two clusters");
  if (p > n) fail(ErrorCode::invalid_argument, "more clusters than vertices");

  Clustering out;
  out.labels = Eigen::VectorXi::Zero(n);
  if (p == n) {
    out.groups.resize(n);
    for (int i = 0; i < n; ++i) {
      out.labels(i) = i;
      out.groups[i] = {i};
    }
    return out;
  }

  // eigenvector columns 1..p, constant vector skipped
  const Eigen::MatrixXd features = d.evecs.middleCols(1, p);

  KmeansRun best;
  for (int restart = 0; restart < 50; ++restart) {
    Rng rng(split_seed(seed, restart));
    KmeansRun run = kmeans_once(features, p, rng);
    if (run.objective < best.objective) best = std::move(run);
  }
  if (best.labels.empty()) fail(ErrorCode::numeric, "clustering produced no assignment");

  // canonicalise labels by first occurrence
  std::vector<int> remap(p, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int& m = remap[best.labels[i]];
    if (m < 0) m = next++;
  }
  out.groups.assign(p, {});
  for (int i = 0; i < n; ++i) {
    const int label = remap[best.labels[i]];
    out.labels(i) = label;
    out.groups[label].push_back(i);
  }
  for (const auto& group : out.groups)
    if (group.empty()) fail(ErrorCode::numeric, "empty cluster after all restarts");
  return out;
}

}  // namespace gmcs
