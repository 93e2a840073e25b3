#include "gmcs/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "gmcs/errors.hpp"

namespace gmcs {

namespace {

double meyer_transition(double s) {
  // nu(s) = s^4 (35 - 84 s + 70 s^2 - 20 s^3), nu(0) = 0, nu(1) = 1
  return s * s * s * s * (35.0 - 84.0 * s + 70.0 * s * s - 20.0 * s * s * s);
}

int nearest_eigen_index(const Eigen::VectorXd& evals, double lam) {
  // evals ascending; lower index wins ties
  int lo = 0, hi = static_cast<int>(evals.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (evals(mid) < lam)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo > 0 && std::abs(evals(lo - 1) - lam) <= std::abs(evals(lo) - lam)) return lo - 1;
  return lo;
}

}  // namespace

std::pair<SpectralKernel, SpectralKernel> meyer_pair(double lambda_max) {
  if (lambda_max <= 0.0) fail(ErrorCode::invalid_argument, "lambda_max must be positive");
  SpectralKernel low;
  low.label = "meyer_low";
  low.eval = [lambda_max](double lam) {
    const double t = lam / lambda_max;
    if (t <= 0.25) return 1.0;
    if (t <= 0.5) return std::cos(std::numbers::pi / 2.0 * meyer_transition(4.0 * t - 1.0));
    return 0.0;
  };
  // sqrt(1 - low^2), written with the transition sine to avoid cancellation
  // where low is close to 1
  SpectralKernel high;
  high.label = "meyer_high";
  high.eval = [lambda_max](double lam) {
    const double t = lam / lambda_max;
    if (t <= 0.25) return 0.0;
    if (t <= 0.5) return std::sin(std::numbers::pi / 2.0 * meyer_transition(4.0 * t - 1.0));
    return 1.0;
  };
  return {std::move(low), std::move(high)};
}

std::pair<SpectralKernel, SpectralKernel> mexican_hat_pair(double lambda_max) {
  if (lambda_max <= 0.0) fail(ErrorCode::invalid_argument, "lambda_max must be positive");
  auto band = [](double scale, std::string label) {
    SpectralKernel k;
    k.label = std::move(label);
    k.eval = [scale](double lam) { return scale * lam * std::exp(1.0 - scale * lam); };
    return k;
  };
  return {band(4.0 / lambda_max, "mexhat_lo"), band(4.0 / (3.0 * lambda_max), "mexhat_hi")};
}

SpectralKernel ideal_kernel(const Eigen::VectorXd& evals, std::vector<int> index_set,
                            std::string label) {
  const int n = static_cast<int>(evals.size());
  std::vector<char> mask(n, 0);
  for (int i : index_set) {
    if (i < 0 || i >= n) fail(ErrorCode::invalid_argument, "eigenvalue index out of range");
    mask[i] = 1;
  }
  SpectralKernel k;
  k.label = std::move(label);
  k.eval = [evals, mask = std::move(mask)](double lam) {
    return mask[nearest_eigen_index(evals, lam)] ? 1.0 : 0.0;
  };
  return k;
}

std::pair<SpectralKernel, SpectralKernel> ideal_pair(const Eigen::VectorXd& evals,
                                                     const std::vector<int>& low_set) {
  std::vector<int> high_set;
  std::vector<char> in_low(evals.size(), 0);
  for (int i : low_set) {
    if (i < 0 || i >= evals.size()) fail(ErrorCode::invalid_argument, "index out of range");
    in_low[i] = 1;
  }
  for (int i = 0; i < evals.size(); ++i)
    if (!in_low[i]) high_set.push_back(i);
  return {ideal_kernel(evals, low_set, "ideal_low"),
          ideal_kernel(evals, high_set, "ideal_high")};
}

std::pair<SpectralKernel, SpectralKernel> ideal_pair(const Eigen::VectorXd& evals,
                                                     const std::vector<int>& low_set,
                                                     const std::vector<int>& high_set) {
  std::vector<int> count(evals.size(), 0);
  for (int i : low_set) {
    if (i < 0 || i >= evals.size()) fail(ErrorCode::invalid_argument, "index out of range");
    count[i]++;
  }
  for (int i : high_set) {
    if (i < 0 || i >= evals.size()) fail(ErrorCode::invalid_argument, "index out of range");
    count[i]++;
  }
  for (std::size_t i = 0; i < count.size(); ++i) {
    if (count[i] > 1) fail(ErrorCode::invalid_argument, "overlapping ideal index sets");
    if (count[i] == 0) fail(ErrorCode::invalid_argument, "ideal index sets miss an index");
  }
  return {ideal_kernel(evals, low_set, "ideal_low"),
          ideal_kernel(evals, high_set, "ideal_high")};
}

Eigen::MatrixXd exact_filter(const SpectralDecomposition& d, const SpectralKernel& k) {
  Eigen::VectorXd diag(d.order());
  for (int i = 0; i < d.order(); ++i) diag(i) = k(d.evals(i));
  Eigen::MatrixXd f = d.evecs * diag.asDiagonal() * d.evecs.transpose();
  return 0.5 * (f + f.transpose()).eval();
}

double ChebyshevFilter::evaluate(double lam) const {
  // Clenshaw recurrence on [-1, 1]
  const double x = 2.0 * lam / lambda_max - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int k = order(); k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs(k);
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + 0.5 * coeffs(0);
}

ChebyshevFilter chebyshev_fit(const SpectralKernel& k, int order, double lambda_max) {
  if (order < 0) fail(ErrorCode::invalid_argument, "order must be non-negative");
  if (lambda_max <= 0.0) fail(ErrorCode::invalid_argument, "lambda_max must be positive");
  const int m = order + 1;
  Eigen::VectorXd node_values(m);
  for (int j = 0; j < m; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / m;
    const double lam = (std::cos(theta) + 1.0) * lambda_max / 2.0;
    node_values(j) = k(lam);
  }
  ChebyshevFilter f;
  f.lambda_max = lambda_max;
  f.coeffs = Eigen::VectorXd::Zero(m);
  for (int c = 0; c < m; ++c) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += node_values(j) * std::cos(std::numbers::pi * c * (j + 0.5) / m);
    f.coeffs(c) = 2.0 * acc / m;
  }
  double sup = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double lam = lambda_max * i / 999.0;
    sup = std::max(sup, std::abs(f.evaluate(lam) - k(lam)));
  }
  f.fit_sup_error = sup;
  return f;
}

Eigen::VectorXd chebyshev_apply(const Eigen::MatrixXd& op, const ChebyshevFilter& f,
                                const Eigen::VectorXd& x) {
  if (op.rows() != op.cols() || op.rows() != x.size())
    fail(ErrorCode::invalid_argument, "operator/signal dimension mismatch");
  // lambda_max(op) >= max diagonal entry for a PSD operator, so a larger
  // diagonal certifies an interval violation
  if (op.diagonal().maxCoeff() > f.lambda_max * (1.0 + 1e-12))
    fail(ErrorCode::invalid_argument,
         "Chebyshev interval does not cover the operator spectrum");
  const double scale = 2.0 / f.lambda_max;
  auto shifted = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return scale * (op * v) - v;
  };
  Eigen::VectorXd t_prev = x;
  Eigen::VectorXd result = 0.5 * f.coeffs(0) * t_prev;
  if (f.order() == 0) return result;
  Eigen::VectorXd t_cur = shifted(x);
  result += f.coeffs(1) * t_cur;
  for (int k = 2; k <= f.order(); ++k) {
    Eigen::VectorXd t_next = 2.0 * shifted(t_cur) - t_prev;
    result += f.coeffs(k) * t_next;
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return result;
}

Eigen::MatrixXd GraphFilter::apply_matrix(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) out.col(c) = apply(x.col(c));
  return out;
}

namespace {

class IdentityFilter final : public GraphFilter {
 public:
  explicit IdentityFilter(int n) : n_(n) {}
  int dimension() const override { return n_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const override { return x; }
  Eigen::MatrixXd apply_matrix(const Eigen::MatrixXd& x) const override { return x; }
  std::string describe() const override { return "identity"; }

 private:
  int n_;
};

class ExactSpectralFilter final : public GraphFilter {
 public:
  ExactSpectralFilter(std::shared_ptr<const SpectralDecomposition> d, SpectralKernel k)
      : d_(std::move(d)), kernel_(std::move(k)) {
    diag_.resize(d_->order());
    for (int i = 0; i < d_->order(); ++i) diag_(i) = kernel_(d_->evals(i));
  }
  int dimension() const override { return d_->order(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const override {
    return d_->evecs * (diag_.asDiagonal() * (d_->evecs.transpose() * x));
  }
  Eigen::MatrixXd apply_matrix(const Eigen::MatrixXd& x) const override {
    return d_->evecs * (diag_.asDiagonal() * (d_->evecs.transpose() * x));
  }
  std::string describe() const override { return "exact:" + kernel_.label; }

 private:
  std::shared_ptr<const SpectralDecomposition> d_;
  SpectralKernel kernel_;
  Eigen::VectorXd diag_;
};

class ChebyshevGraphFilter final : public GraphFilter {
 public:
  ChebyshevGraphFilter(std::shared_ptr<const Eigen::MatrixXd> op, ChebyshevFilter fit)
      : op_(std::move(op)), fit_(std::move(fit)) {}
  int dimension() const override { return static_cast<int>(op_->rows()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const override {
    return chebyshev_apply(*op_, fit_, x);
  }
  std::string describe() const override {
    return "chebyshev:p" + std::to_string(fit_.order());
  }

 private:
  std::shared_ptr<const Eigen::MatrixXd> op_;
  ChebyshevFilter fit_;
};

}  // namespace

FilterPtr make_identity_filter(int n) { return std::make_shared<IdentityFilter>(n); }

FilterPtr make_exact_filter(std::shared_ptr<const SpectralDecomposition> d,
                            SpectralKernel k) {
  return std::make_shared<ExactSpectralFilter>(std::move(d), std::move(k));
}

FilterPtr make_chebyshev_filter(std::shared_ptr<const Eigen::MatrixXd> op,
                                ChebyshevFilter fit) {
  return std::make_shared<ChebyshevGraphFilter>(std::move(op), std::move(fit));
}

}  // namespace gmcs
