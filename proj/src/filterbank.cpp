#include "gmcs/filterbank.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <utility>

#include "gmcs/errors.hpp"
#include "gmcs/linalg.hpp"
#include "gmcs/spectral.hpp"

namespace gmcs {

namespace {

constexpr double kPairingTol = 1e-7;

Graph permute_graph(const Graph& g, const std::vector<int>& order) {
  const int n = g.order();
  Graph out;
  out.weights.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.weights(i, j) = g.weights(order[i], order[j]);
  return out;
}

struct SlotKernels {
  Eigen::VectorXd h0, h1, g0, g1;
  std::string label;
};

// Kernel values per eigen slot (ascending order). The meyer family places its
// transition symmetrically about the folding frequency lambda = 1, so
// high(lambda) = low(2 - lambda); synthesis kernels are scaled by 2, which
// makes S_l^T A_l = I and gives perfect reconstruction directly. The ideal
// family splits slots by index (low half / high half), which also handles
// repeated eigenvalues at lambda = 1.
SlotKernels evaluate_slot_kernels(const Eigen::VectorXd& evals,
                                  const BgfbKernelChoice& choice) {
  const int n = static_cast<int>(evals.size());
  SlotKernels out;
  out.h0.resize(n);
  out.h1.resize(n);
  out.g0.resize(n);
  out.g1.resize(n);
  switch (choice.family) {
    case BgfbKernelFamily::meyer: {
      // transition interval (2/3, 4/3], centred at 1, needs lambda_max = 8/3
      const auto [low, high] = meyer_pair(8.0 / 3.0);
      for (int i = 0; i < n; ++i) {
        out.h0(i) = low(evals(i));
        out.h1(i) = high(evals(i));
        out.g0(i) = 2.0 * out.h0(i);
        out.g1(i) = 2.0 * out.h1(i);
      }
      out.label = "meyer";
      break;
    }
    case BgfbKernelFamily::ideal: {
      for (int i = 0; i < n; ++i) {
        out.h0(i) = i < n / 2 ? 1.0 : 0.0;
        out.h1(i) = 1.0 - out.h0(i);
        out.g0(i) = 2.0 * out.h0(i);
        out.g1(i) = 2.0 * out.h1(i);
      }
      out.label = "ideal";
      break;
    }
    case BgfbKernelFamily::custom: {
      for (int i = 0; i < n; ++i) {
        out.h0(i) = choice.h0(evals(i));
        out.h1(i) = choice.h1(evals(i));
        out.g0(i) = choice.g0(evals(i));
        out.g1(i) = choice.g1(evals(i));
      }
      out.label = "custom";
      break;
    }
  }
  return out;
}

// selection-form transforms: analysis = rows of H(L) on one side, synthesis
// = columns of G(L) on the same side
BgfbTransforms selection_form(const Eigen::MatrixXd& basis, const SlotKernels& k) {
  const int n = static_cast<int>(basis.rows());
  const int half = n / 2;
  const Eigen::MatrixXd h0 = basis * k.h0.asDiagonal() * basis.transpose();
  const Eigen::MatrixXd h1 = basis * k.h1.asDiagonal() * basis.transpose();
  const Eigen::MatrixXd g0 = basis * k.g0.asDiagonal() * basis.transpose();
  const Eigen::MatrixXd g1 = basis * k.g1.asDiagonal() * basis.transpose();
  BgfbTransforms t;
  t.n = n;
  t.ana0 = h0.topRows(half);
  t.ana1 = h1.bottomRows(n - half);
  t.syn0 = g0.leftCols(half);
  t.syn1 = g1.rightCols(n - half);
  return t;
}

double rel_frobenius_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(1.0, a.norm());
  return (a - b).norm() / scale;
}

}  // namespace

BgfbKernelChoice BgfbKernelChoice::meyer() {
  BgfbKernelChoice c;
  c.family = BgfbKernelFamily::meyer;
  return c;
}

BgfbKernelChoice BgfbKernelChoice::ideal() {
  BgfbKernelChoice c;
  c.family = BgfbKernelFamily::ideal;
  return c;
}

BgfbKernelChoice BgfbKernelChoice::custom(SpectralKernel h0, SpectralKernel h1,
                                          SpectralKernel g0, SpectralKernel g1) {
  BgfbKernelChoice c;
  c.family = BgfbKernelFamily::custom;
  c.h0 = std::move(h0);
  c.h1 = std::move(h1);
  c.g0 = std::move(g0);
  c.g1 = std::move(g1);
  return c;
}

BgfbSystem build_bgfb(const Graph& g, const BipartitePartition& part,
                      const BgfbKernelChoice& kernels) {
  validate_graph(g);
  validate_partition(g, part);
  if (part.low_set.size() != part.high_set.size())
    fail(ErrorCode::invalid_argument, "construction needs equal partition sides");
  if (!is_connected(g)) fail(ErrorCode::invalid_argument, "graph must be connected");
  const int n = g.order();
  const int half = n / 2;

  BgfbSystem sys;
  sys.vertex_order = part.low_set;
  sys.vertex_order.insert(sys.vertex_order.end(), part.high_set.begin(), part.high_set.end());
  const Graph gp = permute_graph(g, sys.vertex_order);
  const Eigen::MatrixXd lap = laplacian(gp, LaplacianKind::normalized);
  const SpectralDecomposition d = eigendecompose(lap, LaplacianKind::normalized);
  sys.evals = d.evals;

  // spectral folding: eigenvalues pair as (lambda, 2 - lambda)
  for (int i = 0; i < half; ++i) {
    const double gap = std::abs(d.evals(i) + d.evals(n - 1 - i) - 2.0);
    if (gap > kPairingTol)
      fail(ErrorCode::numeric, "eigenvalue folding pairs missing: input not bipartite?");
  }

  // lower-half basis; the self-paired eigenspace at lambda = 1 is split into
  // +/- fold patterns via the side-restricted singular vectors
  Eigen::MatrixXd lower = d.evecs.leftCols(half);
  std::vector<int> ones;
  for (int i = 0; i < n; ++i)
    if (std::abs(d.evals(i) - 1.0) <= kPairingTol) ones.push_back(i);
  if (!ones.empty()) {
    sys.degenerate_pairing = true;
    if (ones.size() % 2 != 0)
      fail(ErrorCode::numeric, "odd multiplicity at the folding frequency");
    const int m = static_cast<int>(ones.size()) / 2;
    if (ones.front() != half - m || ones.back() != half - 1 + m)
      fail(ErrorCode::numeric, "folding-frequency eigenvalues are not centred");
    Eigen::MatrixXd q(n, ones.size());
    for (std::size_t c = 0; c < ones.size(); ++c) q.col(c) = d.evecs.col(ones[c]);
    Eigen::BDCSVD<Eigen::MatrixXd> top_svd(q.topRows(half), Eigen::ComputeThinU);
    Eigen::BDCSVD<Eigen::MatrixXd> bot_svd(q.bottomRows(n - half), Eigen::ComputeThinU);
    const double tol = 1e-8;
    int top_rank = 0, bot_rank = 0;
    for (Eigen::Index i = 0; i < top_svd.singularValues().size(); ++i)
      if (top_svd.singularValues()(i) > tol) ++top_rank;
    for (Eigen::Index i = 0; i < bot_svd.singularValues().size(); ++i)
      if (bot_svd.singularValues()(i) > tol) ++bot_rank;
    if (top_rank != m || bot_rank != m)
      fail(ErrorCode::numeric, "unbalanced eigenspace at the folding frequency");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int c = 0; c < m; ++c) {
      Eigen::VectorXd v(n);
      v.head(half) = inv_sqrt2 * top_svd.matrixU().col(c);
      v.tail(n - half) = inv_sqrt2 * bot_svd.matrixU().col(c);
      lower.col(half - m + c) = v;
    }
  }

  // deterministic signs on the lower half
  for (int c = 0; c < half; ++c) {
    Eigen::Index best = 0;
    lower.col(c).cwiseAbs().maxCoeff(&best);
    if (lower(best, c) < 0.0) lower.col(c) = -lower.col(c);
  }

  sys.u_ll = lower.topRows(half);
  sys.u_hl = lower.bottomRows(n - half);

  // paired basis in ascending eigenvalue order: column half + j is the fold
  // of column half - 1 - j
  sys.v.resize(n, n);
  sys.v.leftCols(half) = lower;
  for (int j = 0; j < half; ++j) {
    const int src = half - 1 - j;
    sys.v.col(half + j).head(half) = lower.col(src).head(half);
    sys.v.col(half + j).tail(n - half) = -lower.col(src).tail(n - half);
  }

  // the paired basis must still diagonalise the operator
  const double eig_residual =
      (lap * sys.v - sys.v * sys.evals.asDiagonal().toDenseMatrix()).norm() /
      std::max(1.0, lap.norm());
  const double ortho_residual =
      (sys.v.transpose() * sys.v - Eigen::MatrixXd::Identity(n, n)).norm();
  if (eig_residual > 1e-8 || ortho_residual > 1e-8)
    fail(ErrorCode::numeric, "folded eigenvector pairing failed: input not bipartite?");

  const SlotKernels sk = evaluate_slot_kernels(sys.evals, kernels);
  sys.h0 = sk.h0;
  sys.h1 = sk.h1;
  sys.g0 = sk.g0;
  sys.g1 = sk.g1;
  sys.kernel_label = sk.label;

  sys.transforms = selection_form(sys.v, sk);

  // block-form assembly through the side blocks and the counter-identity
  Eigen::MatrixXd j_flip = Eigen::MatrixXd::Zero(half, half);
  for (int i = 0; i < half; ++i) j_flip(i, half - 1 - i) = 1.0;
  Eigen::MatrixXd sel_low(half, n), sel_high(half, n);
  sel_low << Eigen::MatrixXd::Identity(half, half), j_flip;
  sel_high << Eigen::MatrixXd::Identity(half, half), -j_flip;
  const Eigen::MatrixXd ana0_block =
      sys.u_ll * sel_low * sk.h0.asDiagonal() * sys.v.transpose();
  const Eigen::MatrixXd ana1_block =
      sys.u_hl * sel_high * sk.h1.asDiagonal() * sys.v.transpose();
  const Eigen::MatrixXd syn0_block =
      sys.v * sk.g0.asDiagonal() * sel_low.transpose() * sys.u_ll.transpose();
  const Eigen::MatrixXd syn1_block =
      sys.v * sk.g1.asDiagonal() * sel_high.transpose() * sys.u_hl.transpose();

  sys.factorization_gap = std::max(
      {rel_frobenius_gap(sys.transforms.ana0, ana0_block),
       rel_frobenius_gap(sys.transforms.ana1, ana1_block),
       rel_frobenius_gap(sys.transforms.syn0, syn0_block),
       rel_frobenius_gap(sys.transforms.syn1, syn1_block)});
  if (sys.factorization_gap > 1e-8)
    fail(ErrorCode::numeric, "transform factorizations disagree");
  return sys;
}

BgfbTransforms build_bgfb_unchecked(const Graph& g, const std::vector<int>& low,
                                    const std::vector<int>& high,
                                    const BgfbKernelChoice& kernels) {
  validate_graph(g);
  if (low.size() != high.size())
    fail(ErrorCode::invalid_argument, "construction needs equal partition sides");
  std::vector<int> order = low;
  order.insert(order.end(), high.begin(), high.end());
  if (static_cast<int>(order.size()) != g.order())
    fail(ErrorCode::invalid_argument, "vertex split does not cover the graph");
  const Graph gp = permute_graph(g, order);
  const Eigen::MatrixXd lap = laplacian(gp, LaplacianKind::normalized);
  const SpectralDecomposition d = eigendecompose(lap, LaplacianKind::normalized);
  const SlotKernels sk = evaluate_slot_kernels(d.evals, kernels);
  BgfbTransforms t = selection_form(d.evecs, sk);
  t.evals = d.evals;
  return t;
}

PrCheck check_pr(const BgfbTransforms& t, double tol) {
  const Eigen::MatrixXd sum = t.syn0 * t.ana0 + t.syn1 * t.ana1;
  PrCheck out;
  out.defect = spectral_norm(sum - Eigen::MatrixXd::Identity(t.n, t.n));
  out.pr = out.defect <= tol;
  return out;
}

PrCheck check_pr(const BgfbSystem& sys, double tol) { return check_pr(sys.transforms, tol); }

BipartiteEquivalenceReport verify_bipartite_equivalence(const BgfbTransforms& t, double kappa_max) {
  const Eigen::MatrixXd& s0 = t.ana0;
  const Eigen::MatrixXd& s1 = t.ana1;
  const Eigen::MatrixXd& a0 = t.syn0;
  const Eigen::MatrixXd& a1 = t.syn1;

  BipartiteEquivalenceReport rep;
  const Eigen::MatrixXd b00 = s0 * a0;
  const Eigen::MatrixXd b11 = s1 * a1;
  rep.cond00 = condition_number(b00);
  rep.cond11 = condition_number(b11);
  if (!(rep.cond00 <= kappa_max) || !(rep.cond11 <= kappa_max))
    fail(ErrorCode::numeric, "diagonal blocks fail the invertibility precondition");

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu00(b00);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu11(b11);
  const Eigen::MatrixXd sa = s0 - (s0 * a1) * lu11.solve(s1);
  const Eigen::MatrixXd sb = s1 - (s1 * a0) * lu00.solve(s0);

  const Eigen::MatrixXd sa_a0 = sa * a0;
  const Eigen::MatrixXd sb_a1 = sb * a1;
  const Eigen::MatrixXd at0 = a0 * sa_a0.lu().solve(Eigen::MatrixXd::Identity(
                                       sa_a0.rows(), sa_a0.cols()));
  const Eigen::MatrixXd at1 = a1 * sb_a1.lu().solve(Eigen::MatrixXd::Identity(
                                       sb_a1.rows(), sb_a1.cols()));

  rep.cross_term = spectral_norm(at0 * s0 * at1 * s1 + at1 * s1 * at0 * s0);
  rep.recon_identity =
      spectral_norm(at0 * sa + at1 * sb - Eigen::MatrixXd::Identity(t.n, t.n));
  rep.sa_gap = spectral_norm(sa - s0);
  rep.sb_gap = spectral_norm(sb - s1);
  return rep;
}

BipartiteEquivalenceReport verify_bipartite_equivalence(const BgfbSystem& sys, double kappa_max) {
  return verify_bipartite_equivalence(sys.transforms, kappa_max);
}

}  // namespace gmcs
