#include "gmoran/graph.hpp"

#include "gmoran/error.hpp"
#include "gmoran/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace gmoran {

namespace {

std::string idx_id(Index i) { return std::to_string(i); }

std::vector<std::string> numbered_ids(Index n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) ids.push_back(idx_id(i));
  return ids;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParam, what);
}

}  // namespace

Graph::Graph(std::vector<std::string> node_ids, const std::vector<Edge>& edges)
    : ids_(std::move(node_ids)) {
  if (ids_.empty()) throw Error(ErrorCode::EmptyGraph, "graph has no nodes");
  const Index n = size();
  lookup_.reserve(ids_.size());
  for (Index i = 0; i < n; ++i) {
    if (!lookup_.emplace(ids_[static_cast<std::size_t>(i)], i).second) {
      throw Error(ErrorCode::DuplicateId, "node id '" + ids_[static_cast<std::size_t>(i)] + "' declared twice");
    }
  }
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::InvalidParam, "edge endpoint out of range");
    }
    if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop at node '" + id(u) + "'");
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

std::optional<Index> Graph::index_of(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool Graph::has_edge(Index u, Index v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

DegreeStats Graph::degree_stats() const {
  DegreeStats s;
  s.degrees.reserve(adj_.size());
  for (const auto& nb : adj_) s.degrees.push_back(static_cast<Index>(nb.size()));
  auto [lo, hi] = std::minmax_element(s.degrees.begin(), s.degrees.end());
  s.d_min = *lo;
  s.d_max = *hi;
  s.d_avg = 2.0 * static_cast<double>(edge_count()) / static_cast<double>(size());
  return s;
}

bool Graph::is_regular() const {
  const auto d0 = adj_.front().size();
  return std::all_of(adj_.begin(), adj_.end(), [d0](const auto& nb) { return nb.size() == d0; });
}

Eigen::MatrixXd Graph::adjacency_dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size(), size());
  for (auto [u, v] : edges_) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Eigen::SparseMatrix<double> Graph::adjacency_sparse() const {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * edges_.size());
  for (auto [u, v] : edges_) {
    trip.emplace_back(u, v, 1.0);
    trip.emplace_back(v, u, 1.0);
  }
  Eigen::SparseMatrix<double> a(size(), size());
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

Graph build_graph(const std::vector<IdPair>& edges) { return build_graph({}, edges, true); }

Graph build_graph(std::vector<std::string> node_ids, const std::vector<IdPair>& edges,
                  bool allow_implicit) {
  std::unordered_map<std::string, Index> index;
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    if (!index.emplace(node_ids[i], static_cast<Index>(i)).second) {
      throw Error(ErrorCode::DuplicateId, "node id '" + node_ids[i] + "' declared twice");
    }
  }
  auto resolve = [&](const std::string& id) -> Index {
    if (auto it = index.find(id); it != index.end()) return it->second;
    if (!allow_implicit) throw Error(ErrorCode::UnknownNodeId, "edge references undeclared node '" + id + "'");
    const auto i = static_cast<Index>(node_ids.size());
    node_ids.push_back(id);
    index.emplace(id, i);
    return i;
  };
  std::vector<Edge> idx_edges;
  idx_edges.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a == b) throw Error(ErrorCode::SelfLoop, "self-loop at node '" + a + "'");
    const Index u = resolve(a);
    const Index v = resolve(b);
    idx_edges.emplace_back(u, v);
  }
  return Graph(std::move(node_ids), idx_edges);
}

std::vector<Index> component_labels(const Graph& g) {
  const Index n = g.size();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  Index next = 0;
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v : g.neighbors(u)) {
        if (label[static_cast<std::size_t>(v)] < 0) {
          label[static_cast<std::size_t>(v)] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  const auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](Index l) { return l == 0; });
}

std::optional<std::vector<int>> two_coloring(const Graph& g) {
  const Index n = g.size();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::queue<Index> q;
  for (Index s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const Index u = q.front();
      q.pop();
      for (Index v : g.neighbors(u)) {
        auto& cv = color[static_cast<std::size_t>(v)];
        if (cv < 0) {
          cv = 1 - color[static_cast<std::size_t>(u)];
          q.push(v);
        } else if (cv == color[static_cast<std::size_t>(u)]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

Index triangle_count(const Graph& g) {
  // Each triangle u < v < w is counted once from its lowest edge (u, v).
  Index t = 0;
  for (auto [u, v] : g.edges()) {
    auto a = g.neighbors(u);
    auto b = g.neighbors(v);
    auto ia = std::upper_bound(a.begin(), a.end(), v);
    auto ib = std::upper_bound(b.begin(), b.end(), v);
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++t;
        ++ia;
        ++ib;
      }
    }
  }
  return t;
}

StructureReport structure_report(const Graph& g) {
  StructureReport r;
  const auto labels = component_labels(g);
  r.components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  r.connected = r.components == 1;
  r.bipartite = two_coloring(g).has_value();
  r.triangles = triangle_count(g);
  r.degree_stats = g.degree_stats();
  return r;
}

Graph gen_cycle(Index n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(numbered_ids(n), e);
}

Graph gen_path(Index n) {
  require(n >= 1, "path needs n >= 1");
  std::vector<Edge> e;
  for (Index i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(numbered_ids(n), e);
}

Graph gen_complete(Index n) {
  require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(numbered_ids(n), e);
}

Graph gen_grid(Index rows, Index cols) {
  require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1");
  std::vector<std::string> ids;
  std::vector<Edge> e;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      ids.push_back(std::to_string(r) + "_" + std::to_string(c));
      const Index i = r * cols + c;
      if (c + 1 < cols) e.emplace_back(i, i + 1);
      if (r + 1 < rows) e.emplace_back(i, i + cols);
    }
  }
  return Graph(std::move(ids), e);
}

Graph gen_torus(Index rows, Index cols) {
  require(rows >= 3 && cols >= 3, "torus needs rows, cols >= 3");
  std::vector<std::string> ids;
  std::vector<Edge> e;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      ids.push_back(std::to_string(r) + "_" + std::to_string(c));
      const Index i = r * cols + c;
      e.emplace_back(i, r * cols + (c + 1) % cols);
      e.emplace_back(i, ((r + 1) % rows) * cols + c);
    }
  }
  return Graph(std::move(ids), e);
}

Graph gen_hex_hexagon(Index side) {
  require(side >= 1, "hex hexagon needs side >= 1");
  const Index k = side - 1;
  std::vector<std::string> ids;
  std::unordered_map<std::int64_t, Index> at;
  auto key = [](Index q, Index r) { return static_cast<std::int64_t>(q) * 1000003 + r; };
  for (Index q = -k; q <= k; ++q) {
    for (Index r = -k; r <= k; ++r) {
      if (std::abs(q + r) > k) continue;
      at.emplace(key(q, r), static_cast<Index>(ids.size()));
      ids.push_back(std::to_string(q) + "_" + std::to_string(r));
    }
  }
  constexpr Index dirs[3][2] = {{1, 0}, {0, 1}, {-1, 1}};
  std::vector<Edge> e;
  for (Index q = -k; q <= k; ++q) {
    for (Index r = -k; r <= k; ++r) {
      auto it = at.find(key(q, r));
      if (it == at.end() || std::abs(q + r) > k) continue;
      for (const auto& d : dirs) {
        auto jt = at.find(key(q + d[0], r + d[1]));
        if (jt != at.end()) e.emplace_back(it->second, jt->second);
      }
    }
  }
  return Graph(std::move(ids), e);
}

Graph gen_double_star(Index leaves_per_hub) {
  require(leaves_per_hub >= 0, "double star needs leaves >= 0");
  std::vector<std::string> ids{"hub0", "hub1"};
  std::vector<Edge> e{{0, 1}};
  for (Index h = 0; h < 2; ++h) {
    for (Index k = 0; k < leaves_per_hub; ++k) {
      e.emplace_back(h, static_cast<Index>(ids.size()));
      ids.push_back("hub" + std::to_string(h) + "_leaf" + std::to_string(k));
    }
  }
  return Graph(std::move(ids), e);
}

Graph gen_random_connected(Index n, double extra_edge_prob, std::uint64_t seed) {
  require(n >= 1, "random graph needs n >= 1");
  require(extra_edge_prob >= 0.0 && extra_edge_prob <= 1.0, "edge probability must lie in [0, 1]");
  CounterRng rng(seed, 0x7a11);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  std::vector<Edge> e;
  for (std::size_t i = 1; i < order.size(); ++i) {
    e.emplace_back(order[i], order[rng.below(i)]);
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (rng.uniform() < extra_edge_prob) e.emplace_back(i, j);
  return Graph(numbered_ids(n), e);
}

Graph random_edge_deletion(const Graph& g, double fraction, std::uint64_t seed,
                           const EdgeDeletionOptions& options) {
  require(fraction >= 0.0 && fraction < 1.0, "deletion fraction must lie in [0, 1)");
  if (!is_connected(g)) throw Error(ErrorCode::InvalidParam, "edge deletion requires a connected graph");
  const auto& edges = g.edges();
  const auto m = edges.size();
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(m)));
  if (k == 0) return g;

  const CounterRng base(seed, 0xde1e7e);
  std::vector<std::size_t> pick(m);
  for (std::size_t attempt = 0; attempt <= options.max_rejections; ++attempt) {
    CounterRng rng = base.substream(attempt);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(pick[i], pick[i + rng.below(m - i)]);
    }
    std::vector<char> drop(m, 0);
    for (std::size_t i = 0; i < k; ++i) drop[pick[i]] = 1;
    std::vector<Edge> kept;
    kept.reserve(m - k);
    for (std::size_t i = 0; i < m; ++i)
      if (!drop[i]) kept.push_back(edges[i]);
    Graph candidate(g.node_ids(), kept);
    if (is_connected(candidate)) return candidate;
  }
  throw Error(ErrorCode::Exhausted, "no connected result after " + std::to_string(options.max_rejections) +
                                        " rejected draws");
}

}  // namespace gmoran
