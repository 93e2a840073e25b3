#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gmcs/graph.hpp"
#include "gmcs/spectral.hpp"

namespace gmcs {

struct SignalDraw {
  Eigen::VectorXd x;
  std::vector<Eigen::VectorXd> components;    // additive parts, sum == x
  std::vector<Eigen::VectorXd> coefficients;  // drawn coefficient vectors
  std::uint64_t seed = 0;
};

// Piecewise-smooth model generators: cluster indicator columns (from spectral
// clustering) and the first `bw` eigenvector columns.
struct PwsGenerators {
  Eigen::MatrixXd indicators;   // N x p
  Eigen::MatrixXd bandlimited;  // N x bw
  Clustering clustering;
};

PwsGenerators pws_generators(const Graph& g, const SpectralDecomposition& d, int p, int bw,
                             std::uint64_t seed);

// x = indicators d1 + bandlimited d2, coefficients i.i.d. standard normal
SignalDraw draw_pws(const PwsGenerators& gen, std::uint64_t seed);

// Union-of-band-pass generators A_l = U diag(meyer_l(lambda)); ranks record
// how many eigenvalues carry non-negligible kernel weight.
struct UbpGenerators {
  Eigen::MatrixXd a0, a1;  // N x N
  int rank0 = 0, rank1 = 0;
};

UbpGenerators ubp_generators(const SpectralDecomposition& d);

// x = A_0 d_0 + A_1 d_1, coefficients i.i.d. standard normal of length N
SignalDraw draw_ubp(const UbpGenerators& gen, std::uint64_t seed);

}  // namespace gmcs
