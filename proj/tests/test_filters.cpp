#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "gmcs/errors.hpp"
#include "gmcs/filters.hpp"
#include "gmcs/graph.hpp"
#include "gmcs/rng.hpp"
#include "test_support.hpp"

using namespace gmcs;

namespace {

struct GraphContext {
  std::shared_ptr<Eigen::MatrixXd> lap;
  std::shared_ptr<SpectralDecomposition> dec;
};

GraphContext sensor_context(int n, int k, std::uint64_t seed) {
  GraphContext ctx;
  const Graph g = random_sensor_graph(n, k, seed);
  ctx.lap = std::make_shared<Eigen::MatrixXd>(laplacian(g, LaplacianKind::combinatorial));
  ctx.dec = std::make_shared<SpectralDecomposition>(
      eigendecompose(*ctx.lap, LaplacianKind::combinatorial));
  return ctx;
}

}  // namespace

TEST_CASE("meyer pair endpoints and power complementarity") {
  const double lmax = 3.7;
  const auto [low, high] = meyer_pair(lmax);
  CHECK(low(0.0) == 1.0);
  CHECK(high(0.0) == 0.0);
  CHECK(low(lmax) == 0.0);
  CHECK(high(lmax) == 1.0);
  const double mid = lmax * 0.375;
  CHECK(low(mid) * low(mid) + high(mid) * high(mid) == doctest::Approx(1.0).epsilon(1e-13));
  for (int i = 0; i < 1000; ++i) {
    const double lam = lmax * i / 999.0;
    const double sum = low(lam) * low(lam) + high(lam) * high(lam);
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("mexican hat peaks and zero at the origin") {
  const double lmax = 5.0;
  const auto [lo, hi] = mexican_hat_pair(lmax);
  CHECK(lo(lmax / 4.0) == doctest::Approx(1.0));
  CHECK(hi(3.0 * lmax / 4.0) == doctest::Approx(1.0));
  CHECK(lo(0.0) == 0.0);
  CHECK(hi(0.0) == 0.0);
  CHECK(lo(lmax / 4.0) >= lo(lmax / 4.0 + 0.1));
}

TEST_CASE("ideal kernels act as diagonal indicators in the GFT domain") {
  const Eigen::MatrixXd l =
      laplacian(testsup::path_graph(8), LaplacianKind::combinatorial);
  const SpectralDecomposition d = eigendecompose(l, LaplacianKind::combinatorial);
  const auto [low, high] = ideal_pair(d.evals, {0, 1, 2, 3});
  const Eigen::MatrixXd f = exact_filter(d, low);
  const Eigen::MatrixXd in_gft = d.evecs.transpose() * f * d.evecs;
  for (int i = 0; i < 8; ++i) {
    CHECK(in_gft(i, i) == doctest::Approx(i < 4 ? 1.0 : 0.0).epsilon(1e-10));
    for (int j = 0; j < 8; ++j)
      if (i != j) CHECK(std::abs(in_gft(i, j)) < 1e-10);
  }
  // complement covers the rest
  for (int i = 0; i < 8; ++i)
    CHECK(low(d.evals(i)) + high(d.evals(i)) == doctest::Approx(1.0));
  // validating form rejects overlap
  CHECK_THROWS_AS(ideal_pair(d.evals, {0, 1}, {1, 2, 3, 4, 5, 6, 7}), Error);
  CHECK_THROWS_AS(ideal_pair(d.evals, {0, 1}, {3, 4, 5, 6, 7}), Error);
}

TEST_CASE("exact filter basics") {
  const GraphContext ctx = sensor_context(24, 4, 5);
  SpectralKernel one{[](double) { return 1.0; }, "one"};
  const Eigen::MatrixXd id = exact_filter(*ctx.dec, one);
  CHECK((id - Eigen::MatrixXd::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-9);

  SpectralKernel ramp{[](double lam) { return lam; }, "ramp"};
  const Eigen::MatrixXd l_rebuilt = exact_filter(*ctx.dec, ramp);
  CHECK((l_rebuilt - *ctx.lap).norm() / ctx.lap->norm() < 1e-8);

  const auto [low, high] = ideal_pair(ctx.dec->evals, {0, 1, 2, 3, 4});
  const Eigen::MatrixXd proj = exact_filter(*ctx.dec, low);
  CHECK((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("spectral calculus: product of filters is the filter of the product") {
  const GraphContext ctx = sensor_context(20, 4, 6);
  const auto [low, high] = meyer_pair(ctx.dec->lambda_max());
  SpectralKernel product{[low = low, high = high](double lam) { return low(lam) * high(lam); },
                         "prod"};
  const Eigen::MatrixXd lhs = exact_filter(*ctx.dec, low) * exact_filter(*ctx.dec, high);
  const Eigen::MatrixXd rhs = exact_filter(*ctx.dec, product);
  CHECK((lhs - rhs).norm() <= 1e-8 * std::max(1.0, rhs.norm()));
}

TEST_CASE("chebyshev fit of a constant uses the halved-c0 convention") {
  SpectralKernel one{[](double) { return 1.0; }, "one"};
  const ChebyshevFilter f = chebyshev_fit(one, 7, 2.0);
  CHECK(f.coeffs(0) == doctest::Approx(2.0));
  for (int i = 1; i <= 7; ++i) CHECK(std::abs(f.coeffs(i)) < 1e-14);
  CHECK(f.evaluate(0.3) == doctest::Approx(1.0));
  CHECK(f.fit_sup_error < 1e-13);
}

TEST_CASE("degree-1 kernel is fitted exactly") {
  SpectralKernel ramp{[](double lam) { return lam; }, "ramp"};
  const ChebyshevFilter f = chebyshev_fit(ramp, 1, 3.0);
  CHECK(f.fit_sup_error < 1e-12);
}

TEST_CASE("order-50 fit of a mexican hat kernel is accurate") {
  const GraphContext ctx = sensor_context(64, 6, 1);
  const double lmax = ctx.dec->lambda_max();
  const auto [lo, hi] = mexican_hat_pair(lmax);
  const ChebyshevFilter f = chebyshev_fit(lo, 50, lmax);
  CHECK(f.fit_sup_error < 1e-3);
}

TEST_CASE("chebyshev apply of an identity fit returns the signal") {
  const GraphContext ctx = sensor_context(32, 5, 2);
  SpectralKernel one{[](double) { return 1.0; }, "one"};
  const ChebyshevFilter f = chebyshev_fit(one, 12, ctx.dec->lambda_max());
  Rng rng(7);
  const Eigen::VectorXd x = testsup::random_vector(32, rng);
  CHECK((chebyshev_apply(*ctx.lap, f, x) - x).norm() / x.norm() < 1e-9);
}

TEST_CASE("chebyshev apply tracks the exact filter within the fit error") {
  const GraphContext ctx = sensor_context(64, 6, 3);
  const double lmax = ctx.dec->lambda_max();
  const auto [low, high] = meyer_pair(lmax);
  const ChebyshevFilter f = chebyshev_fit(low, 50, lmax);
  const Eigen::MatrixXd exact = exact_filter(*ctx.dec, low);
  Rng rng(9);
  const Eigen::VectorXd x = testsup::random_vector(64, rng);
  const double err = (chebyshev_apply(*ctx.lap, f, x) - exact * x).norm() / x.norm();
  CHECK(err <= f.fit_sup_error + 1e-9);
  CHECK(err < 1e-3);
}

TEST_CASE("chebyshev apply is linear") {
  const GraphContext ctx = sensor_context(24, 4, 4);
  const auto [low, high] = meyer_pair(ctx.dec->lambda_max());
  const ChebyshevFilter f = chebyshev_fit(low, 20, ctx.dec->lambda_max());
  Rng rng(13);
  const Eigen::VectorXd x = testsup::random_vector(24, rng);
  const Eigen::VectorXd y = testsup::random_vector(24, rng);
  const Eigen::VectorXd lhs = chebyshev_apply(*ctx.lap, f, 2.0 * x + 0.5 * y);
  const Eigen::VectorXd rhs =
      2.0 * chebyshev_apply(*ctx.lap, f, x) + 0.5 * chebyshev_apply(*ctx.lap, f, y);
  CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
}

TEST_CASE("interval violations are rejected") {
  const GraphContext ctx = sensor_context(16, 4, 5);
  SpectralKernel one{[](double) { return 1.0; }, "one"};
  const ChebyshevFilter f = chebyshev_fit(one, 5, 1e-3);  // far below the spectrum
  Rng rng(1);
  const Eigen::VectorXd x = testsup::random_vector(16, rng);
  CHECK_THROWS_AS(chebyshev_apply(*ctx.lap, f, x), Error);
}

TEST_CASE("chebyshev agrees with the exact filter for all shipped kernels at order 50") {
  const GraphContext ctx = sensor_context(256, 6, 7);
  const double lmax = ctx.dec->lambda_max();
  Rng rng(21);
  const Eigen::VectorXd x = testsup::random_vector(256, rng);
  const auto meyer = meyer_pair(lmax);
  const auto mexhat = mexican_hat_pair(lmax);
  for (const SpectralKernel* k :
       {&meyer.first, &meyer.second, &mexhat.first, &mexhat.second}) {
    const ChebyshevFilter f = chebyshev_fit(*k, 50, lmax);
    const Eigen::MatrixXd exact = exact_filter(*ctx.dec, *k);
    const double err = (chebyshev_apply(*ctx.lap, f, x) - exact * x).norm() / x.norm();
    CHECK(err <= f.fit_sup_error + 1e-9);
  }
}

TEST_CASE("filter handles expose the same action") {
  const GraphContext ctx = sensor_context(32, 5, 8);
  const auto [low, high] = meyer_pair(ctx.dec->lambda_max());
  const FilterPtr exact = make_exact_filter(ctx.dec, low);
  const FilterPtr cheb =
      make_chebyshev_filter(ctx.lap, chebyshev_fit(low, 50, ctx.dec->lambda_max()));
  const FilterPtr ident = make_identity_filter(32);
  Rng rng(2);
  const Eigen::VectorXd x = testsup::random_vector(32, rng);
  CHECK((ident->apply(x) - x).norm() == 0.0);
  CHECK((exact->apply(x) - exact_filter(*ctx.dec, low) * x).norm() < 1e-10);
  CHECK((cheb->apply(x) - exact->apply(x)).norm() / x.norm() < 1e-3);
  const Eigen::MatrixXd m = testsup::random_gaussian(32, 3, rng);
  CHECK((exact->apply_matrix(m).col(1) - exact->apply(m.col(1))).norm() < 1e-12);
}
