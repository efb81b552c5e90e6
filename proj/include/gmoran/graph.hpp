#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gmoran {

using Index = Eigen::Index;
using Edge = std::pair<Index, Index>;
using IdPair = std::pair<std::string, std::string>;

struct DegreeStats {
  std::vector<Index> degrees;
  Index d_min = 0;
  double d_avg = 0.0;
  Index d_max = 0;
};

/// Undirected simple graph over externally named nodes.
///
/// Nodes are indexed 0..n-1 in construction order and every vector or matrix
/// produced from a Graph uses that order. Neighbor lists are sorted; the edge
/// list holds each edge once as (u, v) with u < v, sorted lexicographically.
/// Instances are immutable after construction.
class Graph {
 public:
  /// Throws EmptyGraph for zero nodes, SelfLoop for (u, u), InvalidParam for
  /// out-of-range indices and DuplicateId for repeated node ids. Duplicate
  /// edges (in either orientation) are collapsed.
  Graph(std::vector<std::string> node_ids, const std::vector<Edge>& edges);

  Index size() const noexcept { return static_cast<Index>(ids_.size()); }
  Index edge_count() const noexcept { return static_cast<Index>(edges_.size()); }

  const std::vector<std::string>& node_ids() const noexcept { return ids_; }
  const std::string& id(Index i) const { return ids_.at(static_cast<std::size_t>(i)); }
  std::optional<Index> index_of(std::string_view id) const;

  std::span<const Index> neighbors(Index i) const { return adj_.at(static_cast<std::size_t>(i)); }
  Index degree(Index i) const { return static_cast<Index>(adj_.at(static_cast<std::size_t>(i)).size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(Index u, Index v) const;

  DegreeStats degree_stats() const;
  bool is_regular() const;

  Eigen::MatrixXd adjacency_dense() const;
  Eigen::SparseMatrix<double> adjacency_sparse() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Index> lookup_;
  std::vector<std::vector<Index>> adj_;
  std::vector<Edge> edges_;
};

/// Builds a graph from id pairs; nodes are numbered by first appearance.
Graph build_graph(const std::vector<IdPair>& edges);

/// Builds a graph over declared nodes (kept in declaration order). With
/// `allow_implicit` ids not declared are appended in order of first
/// appearance; otherwise they raise UnknownNodeId.
Graph build_graph(std::vector<std::string> node_ids, const std::vector<IdPair>& edges,
                  bool allow_implicit = true);

struct StructureReport {
  bool connected = false;
  bool bipartite = false;
  Index components = 0;
  Index triangles = 0;
  DegreeStats degree_stats;
};

StructureReport structure_report(const Graph& g);

/// Component label per node, labels numbered by first node encountered.
std::vector<Index> component_labels(const Graph& g);
bool is_connected(const Graph& g);
/// Proper 2-coloring (0/1) when the graph is bipartite.
std::optional<std::vector<int>> two_coloring(const Graph& g);
Index triangle_count(const Graph& g);

// Generators. Node ids are deterministic strings documented per family.

/// Cycle C_n, ids "0".."n-1"; n >= 3.
Graph gen_cycle(Index n);
/// Path P_n, ids "0".."n-1"; n >= 1.
Graph gen_path(Index n);
/// Complete graph K_n; n >= 1.
Graph gen_complete(Index n);
/// Rook-adjacency grid, row-major ids "r_c".
Graph gen_grid(Index rows, Index cols);
/// Periodic grid (4-regular); rows, cols >= 3 so the result stays simple.
Graph gen_torus(Index rows, Index cols);
/// Triangular-lattice hexagon with `side` vertices on each side; axial ids
/// "q_r" with |q|, |r|, |q + r| <= side - 1. Has 3s^2 - 3s + 1 nodes.
Graph gen_hex_hexagon(Index side);
/// Two adjacent hubs "hub0", "hub1", each with its own leaves "hub{h}_leaf{k}".
Graph gen_double_star(Index leaves_per_hub);
/// Random spanning tree plus each remaining pair independently with
/// probability `extra_edge_prob`; always connected.
Graph gen_random_connected(Index n, double extra_edge_prob, std::uint64_t seed);

struct EdgeDeletionOptions {
  std::size_t max_rejections = 10000;
};

/// Deletes round(fraction * edge_count) distinct uniformly chosen edges,
/// redrawing whenever the result is disconnected. Deterministic per seed.
Graph random_edge_deletion(const Graph& g, double fraction, std::uint64_t seed,
                           const EdgeDeletionOptions& options = {});

}  // namespace gmoran
