#include "gmcs/signal_models.hpp"

#include "gmcs/errors.hpp"
#include "gmcs/filters.hpp"
#include "gmcs/rng.hpp"

namespace gmcs {

namespace {

Eigen::VectorXd draw_normal(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

}  // namespace

PwsGenerators pws_generators(const Graph& g, const SpectralDecomposition& d, int p, int bw,
                             std::uint64_t seed) {
  if (p < 2) fail(ErrorCode::invalid_argument, "need at least two clusters");
  if (bw < 1 || bw > d.order()) fail(ErrorCode::invalid_argument, "bandwidth out of range");
  PwsGenerators gen;
  gen.clustering = spectral_clusters(d, p, seed);
  gen.indicators = Eigen::MatrixXd::Zero(d.order(), p);
  for (int c = 0; c < p; ++c)
    for (int v : gen.clustering.groups[c]) gen.indicators(v, c) = 1.0;
  gen.bandlimited = d.evecs.leftCols(bw);
  (void)g;
  return gen;
}

SignalDraw draw_pws(const PwsGenerators& gen, std::uint64_t seed) {
  Rng rng(seed);
  SignalDraw draw;
  draw.seed = seed;
  const Eigen::VectorXd d1 = draw_normal(rng, static_cast<int>(gen.indicators.cols()));
  const Eigen::VectorXd d2 = draw_normal(rng, static_cast<int>(gen.bandlimited.cols()));
  draw.components.push_back(gen.indicators * d1);
  draw.components.push_back(gen.bandlimited * d2);
  draw.coefficients = {d1, d2};
  draw.x = draw.components[0] + draw.components[1];
  return draw;
}

UbpGenerators ubp_generators(const SpectralDecomposition& d) {
  const auto [low, high] = meyer_pair(d.lambda_max());
  const int n = d.order();
  Eigen::VectorXd low_diag(n), high_diag(n);
  UbpGenerators gen;
  for (int i = 0; i < n; ++i) {
    low_diag(i) = low(d.evals(i));
    high_diag(i) = high(d.evals(i));
    if (low_diag(i) > 1e-12) ++gen.rank0;
    if (high_diag(i) > 1e-12) ++gen.rank1;
  }
  gen.a0 = d.evecs * low_diag.asDiagonal();
  gen.a1 = d.evecs * high_diag.asDiagonal();
  return gen;
}

SignalDraw draw_ubp(const UbpGenerators& gen, std::uint64_t seed) {
  Rng rng(seed);
  SignalDraw draw;
  draw.seed = seed;
  const int n = static_cast<int>(gen.a0.rows());
  const Eigen::VectorXd d0 = draw_normal(rng, n);
  const Eigen::VectorXd d1 = draw_normal(rng, n);
  draw.components.push_back(gen.a0 * d0);
  draw.components.push_back(gen.a1 * d1);
  draw.coefficients = {d0, d1};
  draw.x = draw.components[0] + draw.components[1];
  return draw;
}

}  // namespace gmcs
