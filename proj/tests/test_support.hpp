#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmcs/graph.hpp"
#include "gmcs/rng.hpp"

namespace testsup {

inline Eigen::MatrixXd random_gaussian(int rows, int cols, gmcs::Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

inline Eigen::VectorXd random_vector(int n, gmcs::Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

// Z = A A^T / n + boost I, symmetric PSD; boost > 0 keeps it well conditioned
inline Eigen::MatrixXd random_psd(int n, gmcs::Rng& rng, double boost = 0.0) {
  const Eigen::MatrixXd a = random_gaussian(n, n, rng);
  Eigen::MatrixXd z = a * a.transpose() / static_cast<double>(n);
  z.diagonal().array() += boost;
  return 0.5 * (z + z.transpose()).eval();
}

inline std::vector<int> random_subset(int n, int k, gmcs::Rng& rng) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> out;
  for (int i = 0; i < k; ++i) {
    const int j = rng.uniform_int(static_cast<int>(pool.size()));
    out.push_back(pool[j]);
    pool.erase(pool.begin() + j);
  }
  return out;
}

// two disjoint 4-cliques joined by one weak edge between vertices 0 and 4
inline gmcs::Graph two_cliques_graph(double bridge = 0.01) {
  gmcs::Graph g;
  g.weights = Eigen::MatrixXd::Zero(8, 8);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      g.weights(i, j) = g.weights(j, i) = 1.0;
      g.weights(i + 4, j + 4) = g.weights(j + 4, i + 4) = 1.0;
    }
  g.weights(0, 4) = g.weights(4, 0) = bridge;
  return g;
}

inline gmcs::Graph path_graph(int n) {
  gmcs::Graph g;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) g.weights(i, i + 1) = g.weights(i + 1, i) = 1.0;
  return g;
}

inline gmcs::Graph cycle_graph(int n) {
  gmcs::Graph g = path_graph(n);
  g.weights(0, n - 1) = g.weights(n - 1, 0) = 1.0;
  return g;
}

inline std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gmcs_test_" + name)).string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace testsup
