#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gmcs/spectral.hpp"

namespace gmcs {

// Scalar function of graph frequency on [0, lambda_max].
struct SpectralKernel {
  std::function<double(double)> eval;
  std::string label;

  double operator()(double lam) const { return eval(lam); }
};

// Half-band pair built from the polynomial transition nu(s) = s^4 (35 - 84 s
// + 70 s^2 - 20 s^3); low passes t = lambda/lambda_max <= 1/4, transitions on
// (1/4, 1/2], and high = sqrt(1 - low^2), so low^2 + high^2 = 1 everywhere.
std::pair<SpectralKernel, SpectralKernel> meyer_pair(double lambda_max);

// Band-pass pair g_s(lambda) = (s lambda) exp(1 - s lambda) with unit peaks
// at lambda_max/4 (channel 0) and 3 lambda_max/4 (channel 1).
std::pair<SpectralKernel, SpectralKernel> mexican_hat_pair(double lambda_max);

// Indicator kernel on an eigenvalue index set; evaluation maps lambda to the
// nearest eigenvalue (lower index on ties).
SpectralKernel ideal_kernel(const Eigen::VectorXd& evals, std::vector<int> index_set,
                            std::string label = "ideal");

// low on `low_set`, high on the complement
std::pair<SpectralKernel, SpectralKernel> ideal_pair(const Eigen::VectorXd& evals,
                                                     const std::vector<int>& low_set);

// Validating variant: the two sets must partition the indices exactly.
std::pair<SpectralKernel, SpectralKernel> ideal_pair(const Eigen::VectorXd& evals,
                                                     const std::vector<int>& low_set,
                                                     const std::vector<int>& high_set);

// U diag(k(lambda_i)) U^T
Eigen::MatrixXd exact_filter(const SpectralDecomposition& d, const SpectralKernel& k);

// Chebyshev interpolant of a kernel on [0, lambda_max], halved-c0 convention.
struct ChebyshevFilter {
  Eigen::VectorXd coeffs;
  double lambda_max = 0.0;
  double fit_sup_error = 0.0;  // sup |p - f| on a 1000-point grid

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  double evaluate(double lam) const;
};

ChebyshevFilter chebyshev_fit(const SpectralKernel& k, int order, double lambda_max);

// Three-term recurrence on the shifted operator; matrix-free apart from
// mat-vec products with `op`. The fit interval must cover the spectrum.
Eigen::VectorXd chebyshev_apply(const Eigen::MatrixXd& op, const ChebyshevFilter& f,
                                const Eigen::VectorXd& x);

// Applicable filter handle: either exact (via a decomposition) or Chebyshev
// (via mat-vecs with the operator). Immutable and safe to share.
class GraphFilter {
 public:
  virtual ~GraphFilter() = default;
  virtual int dimension() const = 0;
  virtual Eigen::VectorXd apply(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd apply_matrix(const Eigen::MatrixXd& x) const;
  virtual std::string describe() const = 0;
};

using FilterPtr = std::shared_ptr<const GraphFilter>;

FilterPtr make_identity_filter(int n);
FilterPtr make_exact_filter(std::shared_ptr<const SpectralDecomposition> d, SpectralKernel k);
FilterPtr make_chebyshev_filter(std::shared_ptr<const Eigen::MatrixXd> op, ChebyshevFilter fit);

}  // namespace gmcs
