#pragma once

// Planarity and isomorphism checks, delegated to Boost.Graph.

#include <map>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/vf2_sub_graph_iso.hpp>

#include "bidim/graph.hpp"

namespace bidim {

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;

inline BoostGraph to_boost(const Multigraph& simple) {
  BoostGraph bg(simple.num_vertices());
  int idx = 0;
  for (const Edge& e : simple.edges()) {
    auto [edge, added] = boost::add_edge(simple.index_of(e.u), simple.index_of(e.v), bg);
    boost::put(boost::edge_index, bg, edge, idx++);
  }
  return bg;
}

}  // namespace detail

// Planarity is insensitive to loops and parallel edges, so g is simplified first.
inline bool is_planar(const Multigraph& g) {
  auto bg = detail::to_boost(simplify(g));
  return boost::boyer_myrvold_planarity_test(bg);
}

// Isomorphism of simple graphs (VF2). Multigraphs are rejected.
inline bool isomorphic(const Multigraph& a, const Multigraph& b) {
  if (!a.is_simple() || !b.is_simple()) throw InvalidInput("isomorphic: graphs must be simple");
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  if (a.num_vertices() == 0) return true;
  std::vector<int> da, db;
  for (VertexId v : a.vertices()) da.push_back(a.degree(v));
  for (VertexId v : b.vertices()) db.push_back(b.degree(v));
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  auto ga = detail::to_boost(a);
  auto gb = detail::to_boost(b);
  bool found = false;
  auto callback = [&found](auto&&, auto&&) {
    found = true;
    return false;
  };
  boost::vf2_graph_iso(ga, gb, callback);
  return found;
}

// Whether `map` (a -> b vertex bijection) carries the edge multiset of
// simplify(a) exactly onto that of simplify(b). An explicit isomorphism certificate.
inline bool isomorphic_under(const Multigraph& a, const Multigraph& b, const std::map<VertexId, VertexId>& map) {
  Multigraph sa = simplify(a), sb = simplify(b);
  if (sa.num_vertices() != sb.num_vertices() || sa.num_edges() != sb.num_edges()) return false;
  std::set<VertexId> image;
  for (VertexId v : sa.vertices()) {
    auto it = map.find(v);
    if (it == map.end() || !sb.has_vertex(it->second) || !image.insert(it->second).second) return false;
  }
  std::set<std::pair<VertexId, VertexId>> eb;
  for (const Edge& e : sb.edges()) eb.insert(e.ends());
  for (const Edge& e : sa.edges()) {
    VertexId x = map.at(e.u), y = map.at(e.v);
    if (!eb.contains(x < y ? std::pair{x, y} : std::pair{y, x})) return false;
  }
  return true;
}

}  // namespace bidim
