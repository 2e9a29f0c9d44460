#pragma once

// Partial triangulations of grids, the grid distance minor inside them, and
// certified estimates of bg (largest grid minor).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bidim/grid.hpp"
#include "bidim/minor_oracle.hpp"
#include "bidim/models.hpp"

namespace bidim {

enum class Diagonal : std::uint8_t { none, main, anti };  // main: (x,y)-(x+1,y+1); anti: (x+1,y)-(x,y+1)

struct PartialTriangulation {
  GridGraph base;
  // Face (x, y), 1 <= x, y < k, has corners (x,y), (x+1,y), (x,y+1), (x+1,y+1).
  std::vector<Diagonal> faces;  // index (y-1)*(k-1) + (x-1)
  Multigraph graph;             // grid edges keep their ids; diagonals follow

  Diagonal face(int x, int y) const { return faces[(y - 1) * (base.k - 1) + (x - 1)]; }
};

inline PartialTriangulation triangulate(int k, std::vector<Diagonal> faces) {
  if (k < 2) throw InvalidInput("triangulate: k must be >= 2");
  if (faces.size() != static_cast<std::size_t>((k - 1) * (k - 1))) throw InvalidInput("triangulate: wrong face count");
  PartialTriangulation p;
  p.base = make_grid(k);
  p.faces = std::move(faces);
  p.graph = p.base.graph;
  for (int y = 1; y < k; ++y)
    for (int x = 1; x < k; ++x) {
      switch (p.face(x, y)) {
        case Diagonal::main: p.graph.add_edge(p.base.id(x, y), p.base.id(x + 1, y + 1)); break;
        case Diagonal::anti: p.graph.add_edge(p.base.id(x + 1, y), p.base.id(x, y + 1)); break;
        case Diagonal::none: break;
      }
    }
  return p;
}

// Each face independently gets a diagonal with probability `density`,
// orientation uniform. Raw engine output only, so runs replay everywhere.
inline PartialTriangulation make_partial_triangulation(int k, std::uint64_t seed, double density = 0.5) {
  if (k < 2) throw InvalidInput("make_partial_triangulation: k must be >= 2");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Diagonal> faces;
  for (int f = 0; f < (k - 1) * (k - 1); ++f) {
    if (unit() >= density) faces.push_back(Diagonal::none);
    else faces.push_back((rng() & 1) ? Diagonal::anti : Diagonal::main);
  }
  return triangulate(k, std::move(faces));
}

// L_k as a distance minor of a partial triangulation of L_{4k}: v_{i,j}
// takes the loops at (k+2i, k+2j), (k+2i-1, k+2j), (k+2i, k+2j-1) and the
// two grid edges joining them.
inline MinorModel grid_distance_minor(const PartialTriangulation& p) {
  const int side = p.base.k;
  if (side % 4 != 0) throw PreconditionError("grid_distance_minor: side must be 4k");
  const int k = side / 4;
  const GridGraph& P = p.base;
  const GridGraph L = make_grid(k);
  MinorModel m{with_loops(p.graph), L.graph, {}};
  for (const Edge& e : m.source.graph().edges()) m.map[e.id] = Image::star();
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= k; ++i) {
      const int x = k + 2 * i, y = k + 2 * j;
      const VertexId v = L.id(i, j);
      for (auto [a, b] : {std::pair{x, y}, std::pair{x - 1, y}, std::pair{x, y - 1}}) m.map[m.source.loop_of(P.id(a, b))] = Image::vertex(v);
      m.map[P.horizontal(x - 1, y)] = Image::vertex(v);
      m.map[P.vertical(x, y - 1)] = Image::vertex(v);
      if (i < k) m.map[P.horizontal(x, y)] = Image::edge(L.horizontal(i, j));
      if (j < k) m.map[P.vertical(x, y)] = Image::edge(L.vertical(i, j));
    }
  return m;
}

// ---------------------------------------------------------------------------
// bg estimates

struct GridMinorCertificate {
  int k = 0;
  std::optional<MinorModel> model;  // model of L_k in g (absent only for k = 0)
};

namespace detail {

// L_k in g by the brute-force oracle.
inline std::optional<MinorModel> grid_minor_brute(const Multigraph& g, int k, int cap) {
  const GridGraph lk = make_grid(k);
  if (static_cast<int>(lk.graph.num_vertices()) > static_cast<int>(g.num_vertices())) return std::nullopt;
  auto w = is_minor_brute(lk.graph, g, cap);
  if (!w) return std::nullopt;
  return model_from_witness(lk.graph, g, *w);
}

// L_k in g by randomized contraction: contract random edges (smallest
// merged class first among a few samples) and test for L_k as a subgraph
// of the quotient as it shrinks.
inline std::optional<MinorModel> grid_minor_search(const Multigraph& g, int k, std::uint64_t seed, int restarts, long budget) {
  const GridGraph lk = make_grid(k);
  const std::size_t need = static_cast<std::size_t>(k) * k;
  if (g.num_vertices() < need) return std::nullopt;
  auto attempt = [&](const Multigraph& q, const std::map<VertexId, std::vector<VertexId>>& classes) -> std::optional<MinorModel> {
    if (q.num_edges() < lk.graph.num_edges()) return std::nullopt;
    auto emb = find_subgraph_embedding(lk.graph, q, budget);
    if (!emb) return std::nullopt;
    MinorWitness w;
    std::map<VertexId, VertexId> owner;
    for (std::size_t pi = 0; pi < emb->size(); ++pi) {
      VertexId qv = q.vertices()[(*emb)[pi]];
      auto& set = w.branch_sets[lk.graph.vertices()[pi]];
      set = classes.at(qv);
      for (VertexId x : set) owner[x] = lk.graph.vertices()[pi];
    }
    for (const Edge& he : lk.graph.edges()) {
      for (const Edge& ge : g.edges()) {
        auto a = owner.find(ge.u), b = owner.find(ge.v);
        if (a == owner.end() || b == owner.end()) continue;
        if ((a->second == he.u && b->second == he.v) || (a->second == he.v && b->second == he.u)) {
          w.branch_edges[he.id] = ge.id;
          break;
        }
      }
    }
    return model_from_witness(lk.graph, g, w);
  };

  std::map<VertexId, std::vector<VertexId>> classes;
  for (VertexId v : g.vertices()) classes[v] = {v};
  if (auto m = attempt(simplify(g), classes)) return m;

  std::mt19937_64 rng(seed);
  for (int r = 0; r < restarts; ++r) {
    Multigraph q = simplify(g);
    std::map<VertexId, std::vector<VertexId>> cls = classes;
    while (q.num_vertices() > need && q.num_edges() > 0) {
      EdgeId pick = -1;
      std::size_t best = 0;
      for (int s = 0; s < 3; ++s) {
        const Edge& e = q.edges()[rng() % q.num_edges()];
        std::size_t size = cls[e.u].size() + cls[e.v].size();
        if (pick < 0 || size < best) {
          pick = e.id;
          best = size;
        }
      }
      const Edge e = q.edge(pick);
      Contraction c = contract_edge_set(q, std::vector<EdgeId>{pick});
      VertexId keep = c.vertex_map.at(e.u);
      VertexId gone = keep == e.u ? e.v : e.u;
      auto& dst = cls[keep];
      dst.insert(dst.end(), cls[gone].begin(), cls[gone].end());
      cls.erase(gone);
      q = std::move(c.graph);
      if (q.num_vertices() <= 2 * need)
        if (auto m = attempt(q, cls)) return m;
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct BgSearchOptions {
  int brute_cap = 10;
  int restarts = 20;
  long budget = 200'000;
  std::uint64_t seed = 1;
};

// Largest k <= k_max for which an L_k model was found and validated. A
// lower bound on bg(g), never more.
inline GridMinorCertificate bg_lower(const Multigraph& g, int k_max, const BgSearchOptions& opt = {}) {
  GridMinorCertificate out;
  if (g.num_vertices() == 0 || k_max < 1) return out;
  const Multigraph gs = simplify(g);
  for (int k = 1; k <= k_max; ++k) {
    std::optional<MinorModel> m;
    if (static_cast<int>(gs.num_vertices()) <= opt.brute_cap) m = detail::grid_minor_brute(gs, k, opt.brute_cap);
    else m = detail::grid_minor_search(gs, k, opt.seed + static_cast<std::uint64_t>(k), opt.restarts, opt.budget);
    if (!m) break;
    if (auto v = validate_minor_model(*m); !v) throw CertificateError("bg_lower: emitted model invalid (" + v.message() + ")");
    out.k = k;
    out.model = std::move(m);
  }
  return out;
}

// Exact bg by the oracle over increasing k.
inline int bg_exact_small(const Multigraph& g, int cap = 12) {
  if (static_cast<int>(g.num_vertices()) > cap) throw CapExceeded("bg_exact_small", static_cast<long>(g.num_vertices()), cap);
  if (g.num_vertices() == 0) return 0;
  const Multigraph gs = simplify(g);
  int k = 1;
  while (true) {
    const GridGraph next = make_grid(k + 1);
    if (next.graph.num_vertices() > gs.num_vertices()) break;
    if (!is_minor_brute(next.graph, gs, cap)) break;
    ++k;
  }
  return k;
}

}  // namespace bidim
