#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gmcs {

enum class LaplacianKind { combinatorial, normalized };

// Weighted undirected graph. `weights` is symmetric, non-negative, with a
// zero diagonal; `coords` (optional) holds one row of plotting coordinates
// per vertex.
struct Graph {
  Eigen::MatrixXd weights;
  std::optional<Eigen::MatrixXd> coords;

  int order() const { return static_cast<int>(weights.rows()); }
};

void validate_graph(const Graph& g);

// Two disjoint vertex sets covering all vertices; construction-time
// validation additionally requires every edge to cross the cut.
struct BipartitePartition {
  std::vector<int> low_set;
  std::vector<int> high_set;
};

void validate_partition(const Graph& g, const BipartitePartition& part);

Eigen::VectorXd degrees(const Graph& g);
Eigen::MatrixXd laplacian(const Graph& g, LaplacianKind kind);

// max_i sum_j |op(i,j)|, an upper bound on the spectral radius
double gershgorin_upper_bound(const Eigen::MatrixXd& op);

bool is_connected(const Graph& g);

// n points uniform in the unit square, k-nearest-neighbour edges with
// Gaussian weights exp(-d^2 / (2 sigma^2)), sigma = mean k-NN distance,
// symmetrised by max. Regenerates with incremented seed until connected
// (bounded retries).
Graph random_sensor_graph(int n, int k, std::uint64_t seed);

// Same construction with points on the Swiss-roll surface
// (t, y) -> (t cos t, y, t sin t), t in [3pi/2, 9pi/2], y in [0, 20].
Graph swiss_roll_graph(int n, int k, std::uint64_t seed);

// Edges only across the partition, each present with probability p and unit
// weight; connected via the same bounded retry policy.
std::pair<Graph, BipartitePartition> random_bipartite_graph(int nl, int nh, double p,
                                                            std::uint64_t seed);

struct LoadedGraph {
  Graph graph;
  // true when the input listed both orientations of an edge with different
  // weights and the loader max-merged them
  bool symmetrized = false;
};

// Text format: optional header "N <count>", data lines "u v w" (0-based,
// w > 0), coordinate lines "# coord u x y [z]", other "#" lines are comments.
LoadedGraph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

}  // namespace gmcs
