#include "gmcs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "gmcs/errors.hpp"
#include "gmcs/rng.hpp"

namespace gmcs {

namespace {

constexpr int kConnectivityRetries = 16;

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// k nearest neighbours per point with Gaussian weights, max-symmetrised
Eigen::MatrixXd knn_gaussian_weights(const Eigen::MatrixXd& pts, int k) {
  const int n = static_cast<int>(pts.rows());
  std::vector<std::vector<std::pair<double, int>>> nearest(n);
  double dist_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> cand;
    cand.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back((pts.row(i) - pts.row(j)).norm(), j);
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    cand.resize(k);
    for (const auto& [d, j] : cand) dist_sum += d;
    nearest[i] = std::move(cand);
  }
  const double sigma = dist_sum / (static_cast<double>(n) * k);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (const auto& [d, j] : nearest[i]) {
      const double wij = std::exp(-d * d / (2.0 * sigma * sigma));
      w(i, j) = std::max(w(i, j), wij);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double m = std::max(w(i, j), w(j, i));
      w(i, j) = m;
      w(j, i) = m;
    }
  return w;
}

Graph knn_graph_from_points(Eigen::MatrixXd pts, int k) {
  Graph g;
  g.weights = knn_gaussian_weights(pts, k);
  g.coords = std::move(pts);
  return g;
}

}  // namespace

void validate_graph(const Graph& g) {
  const int n = g.order();
  if (n <= 0) fail(ErrorCode::invalid_argument, "graph has no vertices");
  if (g.weights.cols() != n) fail(ErrorCode::invalid_argument, "weight matrix not square");
  for (int i = 0; i < n; ++i) {
    if (g.weights(i, i) != 0.0)
      fail(ErrorCode::invalid_argument, "nonzero diagonal in weight matrix");
    for (int j = i + 1; j < n; ++j) {
      if (g.weights(i, j) < 0.0)
        fail(ErrorCode::invalid_argument, "negative edge weight");
      if (g.weights(i, j) != g.weights(j, i))
        fail(ErrorCode::invalid_argument, "weight matrix not symmetric");
    }
  }
  if (g.coords && g.coords->rows() != n)
    fail(ErrorCode::invalid_argument, "coordinate row count differs from vertex count");
}

void validate_partition(const Graph& g, const BipartitePartition& part) {
  const int n = g.order();
  std::vector<int> side(n, -1);
  for (int v : part.low_set) {
    if (v < 0 || v >= n) fail(ErrorCode::invalid_argument, "partition index out of range");
    if (side[v] != -1) fail(ErrorCode::invalid_argument, "vertex listed twice in partition");
    side[v] = 0;
  }
  for (int v : part.high_set) {
    if (v < 0 || v >= n) fail(ErrorCode::invalid_argument, "partition index out of range");
    if (side[v] != -1) fail(ErrorCode::invalid_argument, "vertex listed twice in partition");
    side[v] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (side[v] == -1) fail(ErrorCode::invalid_argument, "partition does not cover all vertices");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.weights(i, j) > 0.0 && side[i] == side[j])
        fail(ErrorCode::invalid_argument, "edge inside one partition side");
}

Eigen::VectorXd degrees(const Graph& g) { return g.weights.rowwise().sum(); }

Eigen::MatrixXd laplacian(const Graph& g, LaplacianKind kind) {
  validate_graph(g);
  const Eigen::VectorXd d = degrees(g);
  if (kind == LaplacianKind::combinatorial) {
    Eigen::MatrixXd l = -g.weights;
    l.diagonal() = d;
    return l;
  }
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d(i) <= 0.0)
      fail(ErrorCode::invalid_argument,
           "isolated vertex: normalized Laplacian needs positive degrees");
  const Eigen::VectorXd dinv_sqrt = d.array().rsqrt();
  Eigen::MatrixXd l =
      Eigen::MatrixXd::Identity(g.order(), g.order()) -
      dinv_sqrt.asDiagonal() * g.weights * dinv_sqrt.asDiagonal();
  l = 0.5 * (l + l.transpose()).eval();
  return l;
}

double gershgorin_upper_bound(const Eigen::MatrixXd& op) {
  return op.cwiseAbs().rowwise().sum().maxCoeff();
}

bool is_connected(const Graph& g) {
  const int n = g.order();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && g.weights(u, v) > 0.0) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

Graph random_sensor_graph(int n, int k, std::uint64_t seed) {
  if (n < k + 1) fail(ErrorCode::invalid_argument, "need n >= k+1 for a k-NN graph");
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    Rng rng(split_seed(seed + attempt, 0));
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) {
      pts(i, 0) = rng.uniform();
      pts(i, 1) = rng.uniform();
    }
    Graph g = knn_graph_from_points(std::move(pts), k);
    if (is_connected(g)) return g;
  }
  fail(ErrorCode::numeric, "sensor graph stayed disconnected after retries");
}

Graph swiss_roll_graph(int n, int k, std::uint64_t seed) {
  if (n < k + 1) fail(ErrorCode::invalid_argument, "need n >= k+1 for a k-NN graph");
  const double t_lo = 3.0 * std::numbers::pi / 2.0;
  const double t_hi = 9.0 * std::numbers::pi / 2.0;
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    Rng rng(split_seed(seed + attempt, 1));
    Eigen::MatrixXd pts(n, 3);
    for (int i = 0; i < n; ++i) {
      const double t = rng.uniform(t_lo, t_hi);
      const double y = rng.uniform(0.0, 20.0);
      pts(i, 0) = t * std::cos(t);
      pts(i, 1) = y;
      pts(i, 2) = t * std::sin(t);
    }
    Graph g = knn_graph_from_points(std::move(pts), k);
    if (is_connected(g)) return g;
  }
  fail(ErrorCode::numeric, "swiss roll graph stayed disconnected after retries");
}

std::pair<Graph, BipartitePartition> random_bipartite_graph(int nl, int nh, double p,
                                                            std::uint64_t seed) {
  if (nl < 1 || nh < 1) fail(ErrorCode::invalid_argument, "both sides need vertices");
  if (p <= 0.0 || p > 1.0) fail(ErrorCode::invalid_argument, "edge probability must be in (0,1]");
  const int n = nl + nh;
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    Rng rng(split_seed(seed + attempt, 2));
    Graph g;
    g.weights = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nh; ++j)
        if (rng.uniform() < p) {
          g.weights(i, nl + j) = 1.0;
          g.weights(nl + j, i) = 1.0;
        }
    if (!is_connected(g)) continue;
    Eigen::MatrixXd coords(n, 2);
    for (int i = 0; i < nl; ++i) {
      coords(i, 0) = 0.0;
      coords(i, 1) = nl > 1 ? static_cast<double>(i) / (nl - 1) : 0.5;
    }
    for (int j = 0; j < nh; ++j) {
      coords(nl + j, 0) = 1.0;
      coords(nl + j, 1) = nh > 1 ? static_cast<double>(j) / (nh - 1) : 0.5;
    }
    g.coords = std::move(coords);
    BipartitePartition part;
    part.low_set.resize(nl);
    part.high_set.resize(nh);
    for (int i = 0; i < nl; ++i) part.low_set[i] = i;
    for (int j = 0; j < nh; ++j) part.high_set[j] = nl + j;
    validate_partition(g, part);
    return {std::move(g), std::move(part)};
  }
  fail(ErrorCode::numeric, "bipartite graph stayed disconnected after retries");
}

LoadedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open edge list: " + path);

  struct EdgeLine {
    int u, v;
    double w;
  };
  struct CoordLine {
    int u;
    std::vector<double> xyz;
  };
  std::vector<EdgeLine> edges;
  std::vector<CoordLine> coords;
  int declared_n = -1;
  int max_index = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;  // blank
    const std::string where = path + ":" + std::to_string(lineno);
    if (tok == "#") {
      std::string kind;
      if (!(ss >> kind) || kind != "coord") continue;  // plain comment
      CoordLine c;
      if (!(ss >> c.u)) fail(ErrorCode::invalid_argument, "malformed coord line at " + where);
      double value;
      while (ss >> value) c.xyz.push_back(value);
      if (c.xyz.size() < 2 || c.xyz.size() > 3 || c.u < 0)
        fail(ErrorCode::invalid_argument, "malformed coord line at " + where);
      max_index = std::max(max_index, c.u);
      coords.push_back(std::move(c));
      continue;
    }
    if (tok == "N") {
      if (!(ss >> declared_n) || declared_n <= 0)
        fail(ErrorCode::invalid_argument, "malformed header at " + where);
      continue;
    }
    EdgeLine e;
    try {
      e.u = std::stoi(tok);
    } catch (...) {
      fail(ErrorCode::invalid_argument, "malformed line at " + where);
    }
    if (!(ss >> e.v >> e.w)) fail(ErrorCode::invalid_argument, "malformed line at " + where);
    std::string extra;
    if (ss >> extra) fail(ErrorCode::invalid_argument, "trailing tokens at " + where);
    if (e.u < 0 || e.v < 0) fail(ErrorCode::invalid_argument, "negative index at " + where);
    if (e.u == e.v) fail(ErrorCode::invalid_argument, "self-loop at " + where);
    if (e.w <= 0.0) fail(ErrorCode::invalid_argument, "non-positive weight at " + where);
    max_index = std::max({max_index, e.u, e.v});
    edges.push_back(e);
  }
  if (edges.empty() && declared_n < 0)
    fail(ErrorCode::invalid_argument, "edge list is empty: " + path);
  const int n = declared_n > 0 ? declared_n : max_index + 1;
  if (max_index >= n)
    fail(ErrorCode::invalid_argument,
         "vertex index " + std::to_string(max_index) + " outside declared N " +
             std::to_string(n));

  // directed entries first; last value wins per orientation
  const double unset = -1.0;
  Eigen::MatrixXd directed = Eigen::MatrixXd::Constant(n, n, unset);
  for (const auto& e : edges) directed(e.u, e.v) = e.w;

  LoadedGraph out;
  out.graph.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double a = directed(i, j);
      const double b = directed(j, i);
      double w = 0.0;
      if (a != unset && b != unset) {
        if (a != b) out.symmetrized = true;
        w = std::max(a, b);
      } else if (a != unset) {
        w = a;
      } else if (b != unset) {
        w = b;
      }
      out.graph.weights(i, j) = w;
      out.graph.weights(j, i) = w;
    }

  if (!coords.empty()) {
    const int dim = static_cast<int>(coords.front().xyz.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, dim);
    for (const auto& cl : coords) {
      if (static_cast<int>(cl.xyz.size()) != dim)
        fail(ErrorCode::invalid_argument, "inconsistent coordinate dimensions");
      if (cl.u >= n) fail(ErrorCode::invalid_argument, "coord index outside declared N");
      for (int d = 0; d < dim; ++d) c(cl.u, d) = cl.xyz[d];
    }
    out.graph.coords = std::move(c);
  }
  validate_graph(out.graph);
  return out;
}

void save_edge_list(const Graph& g, const std::string& path) {
  validate_graph(g);
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write edge list: " + path);
  const int n = g.order();
  out << "N " << n << "\n";
  if (g.coords) {
    for (int i = 0; i < n; ++i) {
      out << "# coord " << i;
      for (Eigen::Index d = 0; d < g.coords->cols(); ++d)
        out << " " << fmt_g17((*g.coords)(i, d));
      out << "\n";
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.weights(i, j) > 0.0)
        out << i << " " << j << " " << fmt_g17(g.weights(i, j)) << "\n";
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

}  // namespace gmcs
