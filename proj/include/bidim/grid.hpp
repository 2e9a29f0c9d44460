#pragma once

// The (k x k)-grid L_k with coordinate addressing.
//
// Vertex (i, j), 1 <= i, j <= k, has id (j-1)*k + (i-1); i is the column,
// j the row. Horizontal edges (i,j)-(i+1,j) come first, then vertical ones.

#include <utility>

#include "bidim/error.hpp"
#include "bidim/graph.hpp"

namespace bidim {

struct GridGraph {
  int k = 0;
  Multigraph graph;

  VertexId id(int i, int j) const { return (j - 1) * k + (i - 1); }
  std::pair<int, int> coord(VertexId v) const { return {v % k + 1, v / k + 1}; }
  bool contains(int i, int j) const { return 1 <= i && i <= k && 1 <= j && j <= k; }

  // (i,j)-(i+1,j), 1 <= i < k
  EdgeId horizontal(int i, int j) const { return (j - 1) * (k - 1) + (i - 1); }
  // (i,j)-(i,j+1), 1 <= j < k
  EdgeId vertical(int i, int j) const { return k * (k - 1) + (i - 1) * (k - 1) + (j - 1); }
};

inline GridGraph make_grid(int k) {
  if (k < 1) throw InvalidInput("make_grid: k must be >= 1");
  GridGraph g;
  g.k = k;
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= k; ++i) g.graph.add_vertex(g.id(i, j));
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i < k; ++i) g.graph.add_edge(g.horizontal(i, j), g.id(i, j), g.id(i + 1, j));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j < k; ++j) g.graph.add_edge(g.vertical(i, j), g.id(i, j), g.id(i, j + 1));
  return g;
}

// Side length if g is exactly make_grid(k).graph (same ids), else 0.
inline int grid_side(const Multigraph& g) {
  int k = 0;
  while (static_cast<std::size_t>(k * k) < g.num_vertices()) ++k;
  if (k == 0 || static_cast<std::size_t>(k * k) != g.num_vertices()) return 0;
  return make_grid(k).graph == g ? k : 0;
}

}  // namespace bidim
