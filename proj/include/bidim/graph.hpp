#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "bidim/error.hpp"

namespace bidim {

using VertexId = int;
using EdgeId = int;

inline constexpr int kInfinite = std::numeric_limits<int>::max();

struct Edge {
  EdgeId id = -1;
  VertexId u = -1;
  VertexId v = -1;

  bool is_loop() const { return u == v; }
  bool has_endpoint(VertexId x) const { return u == x || v == x; }
  VertexId other(VertexId x) const { return x == u ? v : u; }
  std::pair<VertexId, VertexId> ends() const { return u < v ? std::pair{u, v} : std::pair{v, u}; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected multigraph with stable integer ids. Loops and parallel edges
// are allowed. Vertices and edges iterate in insertion order.
class Multigraph {
 public:
  Multigraph() = default;

  VertexId add_vertex(VertexId id) {
    if (vindex_.contains(id)) throw InvalidInput("duplicate vertex id " + std::to_string(id));
    vindex_.emplace(id, vertices_.size());
    vertices_.push_back(id);
    incidence_.emplace_back();
    next_vertex_ = std::max(next_vertex_, id + 1);
    return id;
  }
  VertexId add_vertex() { return add_vertex(next_vertex_); }

  EdgeId add_edge(EdgeId id, VertexId u, VertexId v) {
    if (eindex_.contains(id)) throw InvalidInput("duplicate edge id " + std::to_string(id));
    auto iu = vindex_.find(u);
    auto iv = vindex_.find(v);
    if (iu == vindex_.end() || iv == vindex_.end())
      throw InvalidInput("edge " + std::to_string(id) + " has an unknown endpoint");
    eindex_.emplace(id, edges_.size());
    edges_.push_back(Edge{id, u, v});
    incidence_[iu->second].push_back(id);
    if (u != v) incidence_[iv->second].push_back(id);
    next_edge_ = std::max(next_edge_, id + 1);
    return id;
  }
  EdgeId add_edge(VertexId u, VertexId v) { return add_edge(next_edge_, u, v); }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(VertexId v) const { return vindex_.contains(v); }
  bool has_edge(EdgeId e) const { return eindex_.contains(e); }

  const Edge& edge(EdgeId e) const {
    auto it = eindex_.find(e);
    if (it == eindex_.end()) throw InvalidInput("unknown edge id " + std::to_string(e));
    return edges_[it->second];
  }

  // Dense position of a vertex in vertices(); stable for the lifetime of the graph.
  std::size_t index_of(VertexId v) const {
    auto it = vindex_.find(v);
    if (it == vindex_.end()) throw InvalidInput("unknown vertex id " + std::to_string(v));
    return it->second;
  }

  std::span<const EdgeId> incident(VertexId v) const { return incidence_[index_of(v)]; }

  // Loops count twice, as usual.
  int degree(VertexId v) const {
    int d = 0;
    for (EdgeId e : incident(v)) d += edge(e).is_loop() ? 2 : 1;
    return d;
  }

  // Distinct neighbours other than v itself, in incidence order.
  std::vector<VertexId> neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (EdgeId e : incident(v)) {
      VertexId w = edge(e).other(v);
      if (w != v && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
    return out;
  }

  bool adjacent(VertexId a, VertexId b) const {
    for (EdgeId e : incident(a))
      if (edge(e).other(a) == b) return true;
    return false;
  }

  bool is_simple() const {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& e : edges_) {
      if (e.is_loop() || !seen.insert(e.ends()).second) return false;
    }
    return true;
  }

  VertexId next_vertex_id() const { return next_vertex_; }
  EdgeId next_edge_id() const { return next_edge_; }

  // Same vertex ids and the same edges (id and endpoints); insertion order is ignored.
  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    for (VertexId v : a.vertices_)
      if (!b.has_vertex(v)) return false;
    for (const Edge& e : a.edges_) {
      if (!b.has_edge(e.id) || b.edge(e.id).ends() != e.ends()) return false;
    }
    return true;
  }

 private:
  std::vector<VertexId> vertices_;
  std::unordered_map<VertexId, std::size_t> vindex_;
  std::vector<Edge> edges_;
  std::unordered_map<EdgeId, std::size_t> eindex_;
  std::vector<std::vector<EdgeId>> incidence_;
  VertexId next_vertex_ = 0;
  EdgeId next_edge_ = 0;
};

// Drops loops and keeps the smallest-id edge of every parallel class.
inline Multigraph simplify(const Multigraph& g) {
  Multigraph out;
  for (VertexId v : g.vertices()) out.add_vertex(v);
  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : edges) {
    if (e.is_loop() || !seen.insert(e.ends()).second) continue;
    out.add_edge(e.id, e.u, e.v);
  }
  return out;
}

// Subgraph induced by a vertex set; edge ids are kept.
inline Multigraph induced_subgraph(const Multigraph& g, std::span<const VertexId> vs) {
  Multigraph out;
  std::set<VertexId> keep(vs.begin(), vs.end());
  for (VertexId v : g.vertices())
    if (keep.contains(v)) out.add_vertex(v);
  for (const Edge& e : g.edges())
    if (keep.contains(e.u) && keep.contains(e.v)) out.add_edge(e.id, e.u, e.v);
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline std::vector<std::vector<VertexId>> connected_components(const Multigraph& g) {
  DisjointSets ds(g.num_vertices());
  for (const Edge& e : g.edges()) ds.unite(g.index_of(e.u), g.index_of(e.v));
  std::map<std::size_t, std::vector<VertexId>> groups;
  for (std::size_t i = 0; i < g.num_vertices(); ++i) groups[ds.find(i)].push_back(g.vertices()[i]);
  std::vector<std::vector<VertexId>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

inline bool is_connected(const Multigraph& g) { return connected_components(g).size() <= 1; }

// Whether g[vs] is connected.
inline bool is_connected_set(const Multigraph& g, std::span<const VertexId> vs) {
  if (vs.empty()) return true;
  return connected_components(induced_subgraph(g, vs)).size() == 1;
}

// ---------------------------------------------------------------------------
// Contraction

struct Contraction {
  Multigraph graph;
  std::map<VertexId, VertexId> vertex_map;  // old vertex -> new vertex
};

namespace detail {

// Contract the classes given by `rep` (old vertex -> representative id in the
// result). Edges inside a class disappear; with `simple` set, loops and
// parallels created by the merge are dropped (pre-existing ones survive).
inline Contraction contract_classes(const Multigraph& g, const std::map<VertexId, VertexId>& rep,
                                    const std::set<EdgeId>& contracted, bool simple) {
  Contraction out;
  out.vertex_map = rep;
  for (VertexId v : g.vertices()) {
    VertexId r = rep.at(v);
    if (!out.graph.has_vertex(r)) out.graph.add_vertex(r);
  }
  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  std::map<std::pair<VertexId, VertexId>, std::pair<VertexId, VertexId>> first_origin;
  for (const Edge& e : edges) {
    if (contracted.contains(e.id)) continue;
    VertexId a = rep.at(e.u), b = rep.at(e.v);
    if (!simple) {
      if (a == b && !e.is_loop()) continue;
      out.graph.add_edge(e.id, a, b);
      continue;
    }
    if (a == b && !e.is_loop()) continue;
    std::pair<VertexId, VertexId> key = a < b ? std::pair{a, b} : std::pair{b, a};
    auto it = first_origin.find(key);
    if (it != first_origin.end() && it->second != e.ends()) continue;
    if (it == first_origin.end()) first_origin.emplace(key, e.ends());
    out.graph.add_edge(e.id, a, b);
  }
  return out;
}

inline std::map<VertexId, VertexId> classes_of(const Multigraph& g, std::span<const EdgeId> f) {
  DisjointSets ds(g.num_vertices());
  for (EdgeId id : f) {
    if (!g.has_edge(id)) throw InvalidInput("contract: unknown edge id " + std::to_string(id));
    const Edge& e = g.edge(id);
    if (e.is_loop()) throw InvalidInput("contract: edge " + std::to_string(id) + " is a loop");
    ds.unite(g.index_of(e.u), g.index_of(e.v));
  }
  std::map<std::size_t, VertexId> smallest;
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    auto [it, fresh] = smallest.emplace(ds.find(i), g.vertices()[i]);
    if (!fresh) it->second = std::min(it->second, g.vertices()[i]);
  }
  std::map<VertexId, VertexId> rep;
  for (std::size_t i = 0; i < g.num_vertices(); ++i) rep[g.vertices()[i]] = smallest.at(ds.find(i));
  return rep;
}

}  // namespace detail

// Contract one non-loop edge; both endpoints become a fresh vertex id.
// Simple-contraction convention: loops and parallels created by the merge are deleted.
inline Contraction contract_edge(const Multigraph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  if (ed.is_loop()) throw InvalidInput("contract_edge: edge " + std::to_string(e) + " is a loop");
  VertexId fresh = g.next_vertex_id();
  std::map<VertexId, VertexId> rep;
  for (VertexId v : g.vertices()) rep[v] = (v == ed.u || v == ed.v) ? fresh : v;
  return detail::contract_classes(g, rep, {e}, true);
}

// Contract every edge of `f` at once (simple convention). Each merged class
// is named by its smallest original vertex id.
inline Contraction contract_edge_set(const Multigraph& g, std::span<const EdgeId> f) {
  auto rep = detail::classes_of(g, f);
  return detail::contract_classes(g, rep, std::set<EdgeId>(f.begin(), f.end()), true);
}

// Multigraph quotient G/F: every edge outside F that joins two different
// classes survives with its id, so parallels are kept. Edges outside F with
// both ends in one class are absorbed into that class.
inline Contraction quotient(const Multigraph& g, std::span<const EdgeId> f) {
  auto rep = detail::classes_of(g, f);
  return detail::contract_classes(g, rep, std::set<EdgeId>(f.begin(), f.end()), false);
}

// ---------------------------------------------------------------------------
// G with a loop on every vertex

class LoopedGraph {
 public:
  LoopedGraph() = default;

  explicit LoopedGraph(Multigraph base) : base_(std::move(base)) {
    if (!base_.is_simple()) throw InvalidInput("with_loops: base graph must be simple");
    graph_ = base_;
    EdgeId next = base_.next_edge_id();
    for (VertexId v : base_.vertices()) {
      EdgeId id = graph_.add_edge(next++, v, v);
      loop_of_.emplace(v, id);
      owner_.emplace(id, v);
    }
  }

  const Multigraph& base() const { return base_; }
  const Multigraph& graph() const { return graph_; }

  EdgeId loop_of(VertexId v) const {
    auto it = loop_of_.find(v);
    if (it == loop_of_.end()) throw InvalidInput("no loop for vertex " + std::to_string(v));
    return it->second;
  }
  bool is_added_loop(EdgeId e) const { return owner_.contains(e); }
  VertexId loop_owner(EdgeId e) const { return owner_.at(e); }

  friend bool operator==(const LoopedGraph& a, const LoopedGraph& b) {
    return a.graph_ == b.graph_ && a.loop_of_ == b.loop_of_;
  }

 private:
  Multigraph base_;
  Multigraph graph_;
  std::map<VertexId, EdgeId> loop_of_;
  std::map<EdgeId, VertexId> owner_;
};

inline LoopedGraph with_loops(const Multigraph& g) { return LoopedGraph(g); }

// F is solid when every covered vertex carries its loop in F and the covered
// vertices are connected through the non-loop edges of F: then any two
// covered vertices are joined by a loop/edge/loop/... walk inside F.
inline bool is_solid(const LoopedGraph& gl, std::span<const EdgeId> f) {
  const Multigraph& g = gl.graph();
  std::set<EdgeId> fs(f.begin(), f.end());
  std::set<VertexId> covered;
  for (EdgeId id : fs) {
    const Edge& e = g.edge(id);
    covered.insert(e.u);
    covered.insert(e.v);
  }
  if (covered.empty()) return true;
  for (VertexId v : covered)
    if (!fs.contains(gl.loop_of(v))) return false;
  std::vector<VertexId> cv(covered.begin(), covered.end());
  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < cv.size(); ++i) pos[cv[i]] = i;
  DisjointSets ds(cv.size());
  std::size_t parts = cv.size();
  for (EdgeId id : fs) {
    const Edge& e = g.edge(id);
    if (!e.is_loop() && ds.unite(pos[e.u], pos[e.v])) --parts;
  }
  return parts == 1;
}

// ---------------------------------------------------------------------------
// Distances between vertices and/or edges

struct VertexRef {
  VertexId id;
};
struct EdgeRef {
  EdgeId id;
};
using GraphElement = std::variant<VertexRef, EdgeRef>;

inline std::vector<int> bfs_distances(const Multigraph& g, VertexId source) {
  std::vector<int> dist(g.num_vertices(), kInfinite);
  std::queue<VertexId> q;
  dist[g.index_of(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    int dv = dist[g.index_of(v)];
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.edge(e).other(v);
      int& dw = dist[g.index_of(w)];
      if (dw == kInfinite) {
        dw = dv + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

namespace detail {
inline int add_sat(int a, int b) { return (a == kInfinite || b == kInfinite) ? kInfinite : a + b; }
}  // namespace detail

// All-pairs vertex distances with the element-to-element rule on top:
// the length (in edges) of a shortest path containing both elements.
class DistanceTable {
 public:
  explicit DistanceTable(const Multigraph& g) : g_(&g), n_(g.num_vertices()), table_(n_ * n_, kInfinite) {
    for (std::size_t i = 0; i < n_; ++i) {
      auto row = bfs_distances(g, g.vertices()[i]);
      std::copy(row.begin(), row.end(), table_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    }
  }

  int vertices(VertexId a, VertexId b) const { return table_[g_->index_of(a) * n_ + g_->index_of(b)]; }

  int between(const GraphElement& x, const GraphElement& y) const {
    return std::visit([this](const auto& a, const auto& b) { return this->pair(a, b); }, x, y);
  }

 private:
  int pair(VertexRef a, VertexRef b) const { return vertices(a.id, b.id); }
  int pair(VertexRef a, EdgeRef b) const {
    const Edge& e = g_->edge(b.id);
    if (e.is_loop()) return vertices(a.id, e.u);
    return detail::add_sat(std::min(vertices(a.id, e.u), vertices(a.id, e.v)), 1);
  }
  int pair(EdgeRef a, VertexRef b) const { return pair(b, a); }
  int pair(EdgeRef a, EdgeRef b) const {
    const Edge& e = g_->edge(a.id);
    const Edge& f = g_->edge(b.id);
    if (e.is_loop()) return pair(VertexRef{e.u}, b);
    if (f.is_loop()) return pair(a, VertexRef{f.u});
    if (a.id == b.id) return 1;
    int best = std::min({vertices(e.u, f.u), vertices(e.u, f.v), vertices(e.v, f.u), vertices(e.v, f.v)});
    return detail::add_sat(best, 2);
  }

  const Multigraph* g_;
  std::size_t n_;
  std::vector<int> table_;
};

// dist_G(x, y); kInfinite when no path contains both.
inline int dist(const Multigraph& g, const GraphElement& x, const GraphElement& y) {
  auto check = [&g](const GraphElement& el) {
    if (auto* v = std::get_if<VertexRef>(&el); v && !g.has_vertex(v->id))
      throw InvalidInput("dist: unknown vertex " + std::to_string(v->id));
    if (auto* e = std::get_if<EdgeRef>(&el); e && !g.has_edge(e->id))
      throw InvalidInput("dist: unknown edge " + std::to_string(e->id));
  };
  check(x);
  check(y);
  // Small helper graphs only; callers with many queries use DistanceTable.
  return DistanceTable(g).between(x, y);
}

// ---------------------------------------------------------------------------
// Small builders used throughout tests and generators

inline Multigraph make_path(int n) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Multigraph make_cycle(int n) {
  Multigraph g = make_path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

inline Multigraph make_complete(int n) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Multigraph make_star(int leaves) {
  Multigraph g;
  g.add_vertex(0);
  for (int i = 1; i <= leaves; ++i) {
    g.add_vertex(i);
    g.add_edge(0, i);
  }
  return g;
}

inline Multigraph make_edgeless(int n) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  return g;
}

}  // namespace bidim
