#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gmcs/graph.hpp"

namespace gmcs {

// Eigenpairs of a symmetric graph operator. Columns of `evecs` are
// orthonormal eigenvectors in ascending eigenvalue order with a deterministic
// sign convention (the entry of largest magnitude, lowest index on ties, is
// positive).
struct SpectralDecomposition {
  Eigen::MatrixXd evecs;
  Eigen::VectorXd evals;
  LaplacianKind operator_kind = LaplacianKind::combinatorial;

  int order() const { return static_cast<int>(evals.size()); }
  double lambda_max() const { return evals.size() > 0 ? evals(evals.size() - 1) : 0.0; }
};

// Dense decomposition, intended for desk-scale operators (n up to ~2000).
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& op, LaplacianKind kind);

Eigen::VectorXd gft(const SpectralDecomposition& d, const Eigen::VectorXd& x);
Eigen::VectorXd igft(const SpectralDecomposition& d, const Eigen::VectorXd& xhat);

struct Clustering {
  Eigen::VectorXi labels;                // one label in [0, p) per vertex
  std::vector<std::vector<int>> groups;  // p non-empty sorted vertex lists
};

// k-means (seeded, 50 restarts, best within-cluster sum of squares) on rows
// of the eigenvector columns 1..p. Labels are canonicalised by first
// occurrence so identical seeds give identical output.
Clustering spectral_clusters(const SpectralDecomposition& d, int p, std::uint64_t seed);

}  // namespace gmcs
