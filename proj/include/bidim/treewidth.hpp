#pragma once

// Tree decompositions: validation, exact treewidth for small graphs,
// min-fill upper bound, contraction-degeneracy lower bound, and lifting a
// decomposition of a c-contraction back to the original graph.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "bidim/graph.hpp"
#include "bidim/models.hpp"
#include "bidim/validation.hpp"

namespace bidim {

struct TreeDecomposition {
  Multigraph tree;
  std::map<int, std::vector<VertexId>> bags;
  int width = -1;
};

inline int recompute_width(const TreeDecomposition& d) {
  int w = -1;
  for (const auto& [t, bag] : d.bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

inline Validation validate_decomposition(const Multigraph& g, const TreeDecomposition& d) {
  const Multigraph& t = d.tree;
  if (t.num_vertices() == 0) return Validation::fail(Condition::tree_shape, "decomposition tree has no nodes");
  if (t.num_vertices() != d.bags.size()) return Validation::fail(Condition::tree_shape, "bag keys do not match tree nodes");
  for (VertexId n : t.vertices())
    if (!d.bags.contains(n)) return Validation::fail(Condition::tree_shape, "tree node " + std::to_string(n) + " has no bag", {n});
  for (const Edge& e : t.edges())
    if (e.is_loop()) return Validation::fail(Condition::tree_shape, "tree has a loop", {}, {e.id});
  if (t.num_edges() + 1 != t.num_vertices() || !is_connected(t))
    return Validation::fail(Condition::tree_shape, "decomposition graph is not a tree");

  std::map<VertexId, std::vector<VertexId>> holders;
  for (const auto& [node, bag] : d.bags) {
    std::set<VertexId> seen;
    for (VertexId v : bag) {
      if (!g.has_vertex(v)) return Validation::fail(Condition::tree_shape, "bag " + std::to_string(node) + " holds unknown vertex " + std::to_string(v), {v});
      if (!seen.insert(v).second) return Validation::fail(Condition::tree_shape, "bag " + std::to_string(node) + " repeats vertex " + std::to_string(v), {v});
      holders[v].push_back(node);
    }
  }
  for (VertexId v : g.vertices())
    if (!holders.contains(v)) return Validation::fail(Condition::cover, "vertex " + std::to_string(v) + " in no bag", {v});
  std::map<VertexId, std::set<VertexId>> in;
  for (const auto& [v, nodes] : holders) in[v] = std::set<VertexId>(nodes.begin(), nodes.end());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const auto& a = in[e.u];
    const auto& b = in[e.v];
    bool found = std::any_of(a.begin(), a.end(), [&b](VertexId n) { return b.contains(n); });
    if (!found) return Validation::fail(Condition::edge_in_bag, "edge " + std::to_string(e.id) + " in no bag", {e.u, e.v}, {e.id});
  }
  for (const auto& [v, nodes] : holders)
    if (!is_connected_set(t, nodes))
      return Validation::fail(Condition::connected_occurrence, "bags holding vertex " + std::to_string(v) + " are not a subtree", nodes);
  if (recompute_width(d) != d.width)
    return Validation::fail(Condition::width, "declared width " + std::to_string(d.width) + " but bags give " + std::to_string(recompute_width(d)));
  return Validation::pass();
}

// Decomposition from an elimination ordering of a simple graph: bag of v is
// v plus its later neighbours in the fill graph, hung below the bag of the
// earliest of those neighbours. Component roots are chained into one tree.
inline TreeDecomposition decomposition_from_order(const Multigraph& g, const std::vector<VertexId>& order) {
  const Multigraph s = simplify(g);
  TreeDecomposition d;
  if (s.num_vertices() == 0) {
    d.tree.add_vertex(0);
    d.bags[0] = {};
    d.width = -1;
    return d;
  }
  if (order.size() != s.num_vertices()) throw InvalidInput("decomposition_from_order: ordering does not list every vertex");
  std::map<VertexId, int> pos;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (!s.has_vertex(order[i]) || !pos.emplace(order[i], static_cast<int>(i)).second)
      throw InvalidInput("decomposition_from_order: bad ordering");
  std::map<VertexId, std::set<VertexId>> adj;
  for (VertexId v : s.vertices()) adj[v];
  for (const Edge& e : s.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<VertexId> roots;
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexId v = order[i];
    std::vector<VertexId> later(adj[v].begin(), adj[v].end());
    for (VertexId a : later)
      for (VertexId b : later)
        if (a != b) adj[a].insert(b);
    for (VertexId a : later) adj[a].erase(v);
    d.tree.add_vertex(static_cast<VertexId>(i));
    std::vector<VertexId> bag{v};
    bag.insert(bag.end(), later.begin(), later.end());
    std::sort(bag.begin(), bag.end());
    d.bags[static_cast<int>(i)] = bag;
    d.width = std::max(d.width, static_cast<int>(bag.size()) - 1);
    if (later.empty()) roots.push_back(static_cast<VertexId>(i));
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& bag = d.bags[static_cast<int>(i)];
    int parent = -1;
    for (VertexId w : bag)
      if (w != order[i] && (parent < 0 || pos[w] < parent)) parent = pos[w];
    if (parent >= 0) d.tree.add_edge(static_cast<VertexId>(i), parent);
  }
  for (std::size_t r = 1; r < roots.size(); ++r) d.tree.add_edge(roots[r - 1], roots[r]);
  return d;
}

struct TreewidthResult {
  int width = -1;
  TreeDecomposition decomposition;
  std::vector<VertexId> order;
};

// Exact treewidth: TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|) over
// vertex subsets, Q(S, v) being the vertices outside S + v reachable from v
// through S.
inline TreewidthResult treewidth_exact(const Multigraph& g, int cap = 16) {
  const Multigraph s = simplify(g);
  const int n = static_cast<int>(s.num_vertices());
  if (n > cap) throw CapExceeded("treewidth_exact", n, cap);
  if (n > 24) throw CapExceeded("treewidth_exact", n, 24);
  TreewidthResult out;
  if (n == 0) {
    out.decomposition = decomposition_from_order(s, {});
    return out;
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : s.edges()) {
    auto a = s.index_of(e.u), b = s.index_of(e.v);
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  auto q_size = [&](std::uint32_t set, int v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, out_set = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      next &= ~seen;
      seen |= next;
      out_set |= next & ~set;
      frontier = next & set;
    }
    return std::popcount(out_set);
  };
  std::vector<std::int8_t> tw(std::size_t{1} << n, 0);
  std::vector<std::int8_t> last(std::size_t{1} << n, -1);
  tw[0] = -1;
  for (std::uint32_t set = 1; set <= full; ++set) {
    int best = 127, arg = -1;
    for (std::uint32_t f = set; f; f &= f - 1) {
      int v = std::countr_zero(f);
      std::uint32_t rest = set & ~(1u << v);
      int val = std::max<int>(tw[rest], q_size(rest, v));
      if (val < best) {
        best = val;
        arg = v;
      }
    }
    tw[set] = static_cast<std::int8_t>(best);
    last[set] = static_cast<std::int8_t>(arg);
    if (set == full) break;
  }
  std::vector<VertexId> rev;
  for (std::uint32_t set = full; set; set &= ~(1u << last[set])) rev.push_back(s.vertices()[last[set]]);
  out.order.assign(rev.rbegin(), rev.rend());
  out.width = tw[full];
  out.decomposition = decomposition_from_order(s, out.order);
  if (out.decomposition.width != out.width) throw CertificateError("treewidth_exact: decomposition width mismatch");
  return out;
}

// Greedy minimum fill-in elimination; ties broken by degree, then id.
inline TreewidthResult treewidth_upper(const Multigraph& g) {
  const Multigraph s = simplify(g);
  TreewidthResult out;
  std::map<VertexId, std::set<VertexId>> adj;
  for (VertexId v : s.vertices()) adj[v];
  for (const Edge& e : s.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  while (!adj.empty()) {
    VertexId pick = -1;
    long best_fill = -1;
    std::size_t best_deg = 0;
    for (const auto& [v, nb] : adj) {
      long fill = 0;
      for (auto a = nb.begin(); a != nb.end(); ++a)
        for (auto b = std::next(a); b != nb.end(); ++b)
          if (!adj[*a].contains(*b)) ++fill;
      if (best_fill < 0 || fill < best_fill || (fill == best_fill && nb.size() < best_deg)) {
        pick = v;
        best_fill = fill;
        best_deg = nb.size();
      }
    }
    std::vector<VertexId> nb(adj[pick].begin(), adj[pick].end());
    for (VertexId a : nb) {
      adj[a].erase(pick);
      for (VertexId b : nb)
        if (a != b) adj[a].insert(b);
    }
    adj.erase(pick);
    out.order.push_back(pick);
  }
  out.decomposition = decomposition_from_order(s, out.order);
  out.width = out.decomposition.width;
  return out;
}

// Contraction degeneracy heuristic (min-d): repeatedly take a vertex of
// minimum degree, record its degree, and contract it into its neighbour of
// least degree. The largest recorded degree is a lower bound on treewidth.
inline int treewidth_lower(const Multigraph& g) {
  const Multigraph s = simplify(g);
  if (s.num_vertices() == 0) return -1;
  std::map<VertexId, std::set<VertexId>> adj;
  for (VertexId v : s.vertices()) adj[v];
  for (const Edge& e : s.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  int bound = 0;
  while (adj.size() > 1) {
    VertexId v = -1;
    for (const auto& [x, nb] : adj)
      if (v < 0 || nb.size() < adj[v].size()) v = x;
    bound = std::max(bound, static_cast<int>(adj[v].size()));
    if (adj[v].empty()) {
      adj.erase(v);
      continue;
    }
    VertexId u = -1;
    for (VertexId w : adj[v])
      if (u < 0 || adj[w].size() < adj[u].size()) u = w;
    for (VertexId w : adj[v]) {
      adj[w].erase(v);
      if (w != u) {
        adj[w].insert(u);
        adj[u].insert(w);
      }
    }
    adj.erase(v);
  }
  return bound;
}

// Replace every node x of a decomposition of H by the branch set V_x of x.
inline TreeDecomposition lift_decomposition(const TreeDecomposition& d, const CContractionModel& psi) {
  if (auto v = validate_c_contraction(psi); !v) throw PreconditionError("lift_decomposition: model invalid (" + v.message() + ")");
  if (auto v = validate_decomposition(psi.base.target, d); !v)
    throw PreconditionError("lift_decomposition: decomposition invalid (" + v.message() + ")");
  auto sets = branch_sets(psi.base);
  TreeDecomposition out;
  out.tree = d.tree;
  for (const auto& [node, bag] : d.bags) {
    std::vector<VertexId> lifted;
    for (VertexId x : bag) lifted.insert(lifted.end(), sets.at(x).begin(), sets.at(x).end());
    std::sort(lifted.begin(), lifted.end());
    out.bags[node] = std::move(lifted);
  }
  out.width = recompute_width(out);
  if (out.width > (psi.c + 1) * (d.width + 1) - 1) throw CertificateError("lift_decomposition: width bound exceeded");
  return out;
}

}  // namespace bidim
