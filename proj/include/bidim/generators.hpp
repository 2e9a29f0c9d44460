#pragma once

// Seeded instance families. Only raw engine output is used, so a
// (family, parameters, seed) triple replays identically on every platform.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bidim/geometry.hpp"
#include "bidim/graph.hpp"
#include "bidim/grid.hpp"
#include "bidim/intersect.hpp"
#include "bidim/models.hpp"

namespace bidim::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n).
  long below(long n) { return n <= 1 ? 0 : static_cast<long>(engine_() % static_cast<std::uint64_t>(n)); }
  long between(long lo, long hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(static_cast<long>(i)))]);
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Graphs

inline Multigraph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  Multigraph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.chance(p)) g.add_edge(u, v);
  return g;
}

// Random spanning tree plus `extra` random chords.
inline Multigraph random_connected_graph(int n, int extra, std::uint64_t seed) {
  Rng rng(seed);
  Multigraph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (int v = 1; v < n; ++v) g.add_edge(static_cast<VertexId>(rng.below(v)), v);
  for (int tries = 0, added = 0; added < extra && tries < 50 * (extra + 1); ++tries) {
    VertexId a = static_cast<VertexId>(rng.below(n)), b = static_cast<VertexId>(rng.below(n));
    if (a == b || g.adjacent(a, b)) continue;
    g.add_edge(a, b);
    ++added;
  }
  return g;
}

// A random c-contraction of g: edges are merged in random order as long as
// every class keeps at most c internal edges.
inline CContractionModel random_c_contraction(const Multigraph& g, int c, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EdgeId> order;
  for (const Edge& e : g.edges()) order.push_back(e.id);
  rng.shuffle(order);
  std::map<VertexId, VertexId> cls;
  for (VertexId v : g.vertices()) cls[v] = v;
  auto find = [&](VertexId v) {
    while (cls[v] != v) v = cls[v] = cls[cls[v]];
    return v;
  };
  auto internal_edges = [&](VertexId a, VertexId b) {
    int count = 0;
    for (const Edge& e : g.edges()) {
      VertexId x = find(e.u), y = find(e.v);
      if ((x == a || x == b) && (y == a || y == b)) ++count;
    }
    return count;
  };
  std::vector<EdgeId> f;
  for (EdgeId id : order) {
    const Edge& e = g.edge(id);
    VertexId a = find(e.u), b = find(e.v);
    if (a == b || !rng.chance(0.6)) continue;
    if (internal_edges(a, b) > c) continue;
    cls[std::max(a, b)] = std::min(a, b);
    f.push_back(id);
  }
  return contraction_model(g, f, false);
}

// ---------------------------------------------------------------------------
// Composable pairs: a contraction A -> B and a minor A -> C whose branch
// sets are unions of contraction classes.

struct ComposableInstance {
  Multigraph a;
  CContractionModel psi1;
  MinorModel psi2;
};

inline ComposableInstance random_composable(int n, std::uint64_t seed) {
  Rng rng(seed);
  ComposableInstance out;
  out.a = random_connected_graph(n, static_cast<int>(rng.between(0, n)), rng.next());
  out.psi1 = random_c_contraction(out.a, static_cast<int>(rng.between(0, 2)), rng.next());
  const Multigraph& b = out.psi1.base.target;
  std::map<VertexId, std::vector<VertexId>> members;  // B vertex -> A vertices
  for (VertexId v : out.a.vertices()) members[out.psi1.base.map.at(out.psi1.base.source.loop_of(v)).id].push_back(v);

  // Random connected groups of B vertices become branch sets; some groups are dropped.
  std::vector<VertexId> bverts = b.vertices();
  rng.shuffle(bverts);
  std::map<VertexId, int> group;
  int groups = 0;
  for (VertexId v : bverts) {
    if (group.contains(v)) continue;
    std::vector<VertexId> frontier{v};
    group[v] = groups;
    long size = rng.between(1, 3);
    for (std::size_t q = 0; q < frontier.size() && static_cast<long>(frontier.size()) < size; ++q)
      for (VertexId y : b.neighbors(frontier[q]))
        if (!group.contains(y) && static_cast<long>(frontier.size()) < size) {
          group[y] = groups;
          frontier.push_back(y);
        }
    ++groups;
  }
  std::vector<bool> keep(groups);
  for (int i = 0; i < groups; ++i) keep[i] = rng.chance(0.8);

  MinorWitness w;
  Multigraph c;
  for (int i = 0; i < groups; ++i)
    if (keep[i]) c.add_vertex(i);
  for (const auto& [bv, gi] : group)
    if (keep[gi])
      for (VertexId x : members[bv]) w.branch_sets[gi].push_back(x);
  std::set<std::pair<int, int>> used;
  std::vector<EdgeId> aedges;
  for (const Edge& e : out.a.edges()) aedges.push_back(e.id);
  rng.shuffle(aedges);
  for (EdgeId id : aedges) {
    const Edge& e = out.a.edge(id);
    int gu = group.at(out.psi1.base.map.at(out.psi1.base.source.loop_of(e.u)).id);
    int gv = group.at(out.psi1.base.map.at(out.psi1.base.source.loop_of(e.v)).id);
    if (gu == gv || !keep[gu] || !keep[gv]) continue;
    auto key = std::minmax(gu, gv);
    if (used.contains(key) || !rng.chance(0.7)) continue;
    used.insert(key);
    w.branch_edges[c.add_edge(gu, gv)] = id;
  }
  out.psi2 = model_from_witness(c, out.a, w);
  return out;
}

// ---------------------------------------------------------------------------
// Subdivided grids with row-interval contractions

// G is L_k with every horizontal edge subdivided `subdivisions` times (grid
// vertices keep the L_k ids, so they are the smallest of their branch set).
// φ sends a grid vertex and the subdivision vertices to its right to that
// grid vertex; σ contracts random row intervals of at most c edges.
struct TransferInstance {
  int k = 0;
  int c = 0;
  int subdivisions = 0;
  Multigraph g;
  MinorModel phi;
  CContractionModel sigma;
};

inline TransferInstance subdivided_grid_instance(int k, int c, int subdivisions, std::uint64_t seed) {
  if (k < 1 || c < 0 || subdivisions < 0) throw PreconditionError("subdivided_grid_instance: bad parameters");
  Rng rng(seed);
  TransferInstance out;
  out.k = k;
  out.c = c;
  out.subdivisions = subdivisions;
  const GridGraph lk = make_grid(k);
  Multigraph& g = out.g;
  for (VertexId v : lk.graph.vertices()) g.add_vertex(v);

  std::map<VertexId, std::vector<VertexId>> branch;  // grid vertex -> its G vertices
  std::map<EdgeId, Image> image;                     // G edge -> φ image
  std::vector<std::vector<EdgeId>> rows(k);          // row edges in left-to-right order
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= k; ++i) {
      VertexId v = lk.id(i, j);
      branch[v].push_back(v);
      if (i == k) continue;
      VertexId prev = v;
      for (int s = 0; s < subdivisions; ++s) {
        VertexId x = g.add_vertex();
        branch[v].push_back(x);
        EdgeId e = g.add_edge(prev, x);
        image[e] = Image::vertex(v);
        rows[j - 1].push_back(e);
        prev = x;
      }
      EdgeId e = g.add_edge(prev, lk.id(i + 1, j));
      image[e] = Image::edge(lk.horizontal(i, j));
      rows[j - 1].push_back(e);
    }
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j < k; ++j) image[g.add_edge(lk.id(i, j), lk.id(i, j + 1))] = Image::edge(lk.vertical(i, j));

  out.phi = MinorModel{with_loops(g), lk.graph, {}};
  for (const Edge& e : g.edges()) out.phi.map[e.id] = image.at(e.id);
  for (const auto& [v, set] : branch)
    for (VertexId x : set) out.phi.map[out.phi.source.loop_of(x)] = Image::vertex(v);

  std::vector<EdgeId> f;
  for (const auto& row : rows) {
    std::size_t pos = 0;
    while (pos < row.size()) {
      long len = rng.between(0, c);
      for (long q = 0; q < len && pos < row.size(); ++q) f.push_back(row[pos++]);
      if (pos < row.size()) ++pos;  // a kept edge separates consecutive intervals
    }
  }
  out.sigma = contraction_model(g, f, false);
  return out;
}

// ---------------------------------------------------------------------------
// Arrangements

namespace detail {

inline Point lattice_point(Rng& rng, long extent) { return Point(rng.between(0, extent), rng.between(0, extent)); }

// Adds polysegments one at a time, resampling any that would break the
// arrangement hypotheses (overlaps, triple points).
template <typename Sample>
Arrangement grow_arrangement(int n, Rng& rng, Sample&& sample, const std::string& family) {
  std::vector<Polysegment> polys;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
      Polysegment c = sample(rng);
      if (polysegment_defect(c)) continue;
      polys.push_back(std::move(c));
      try {
        build_arrangement(polys);
        placed = true;
      } catch (const GeometryError&) {
        polys.pop_back();
      }
    }
    if (!placed) throw GeometryError(GeometryError::Kind::general_position, family + ": could not place polysegment " + std::to_string(i));
  }
  return build_arrangement(std::move(polys));
}

}  // namespace detail

// Straight segments with lattice endpoints, lengths between extent/8 and extent/2.
inline Arrangement random_segments(int n, std::uint64_t seed, long extent = 1000) {
  Rng rng(seed);
  return detail::grow_arrangement(
      n, rng,
      [extent](Rng& r) {
        Point a = detail::lattice_point(r, extent);
        double angle = r.unit() * std::numbers::pi;
        double len = extent * (0.125 + 0.375 * r.unit());
        long bx = std::clamp<long>(std::lround(to_double(a.x) + len * std::cos(angle)), 0, extent);
        long by = std::clamp<long>(std::lround(to_double(a.y) + len * std::sin(angle)), 0, extent);
        return Polysegment{{a, Point(bx, by)}};
      },
      "random_segments");
}

// x-monotone chains of `bends`+1 segments (monotone chains never self-cross).
inline Arrangement random_polysegments(int n, int bends, std::uint64_t seed, long extent = 1000) {
  Rng rng(seed);
  return detail::grow_arrangement(
      n, rng,
      [extent, bends](Rng& r) {
        long x0 = r.between(0, extent * 3 / 4);
        long span = r.between(extent / 8, extent / 2);
        std::set<long> xs{x0, x0 + span};
        while (static_cast<int>(xs.size()) < bends + 2) xs.insert(r.between(x0 + 1, x0 + span - 1));
        Polysegment c;
        long y = r.between(0, extent);
        for (long x : xs) {
          c.points.push_back(Point(x, y));
          y = std::clamp<long>(y + r.between(-extent / 4, extent / 4), 0, extent);
        }
        return c;
      },
      "random_polysegments");
}

// ---------------------------------------------------------------------------
// Bodies

namespace detail {

// Applies one of the 8 lattice symmetries and a translation.
inline SimplePolygon place(std::vector<std::pair<long, long>> shape, int symmetry, long dx, long dy) {
  std::vector<Point> ring;
  for (auto [x, y] : shape) {
    if (symmetry & 1) x = -x;
    if (symmetry & 2) y = -y;
    if (symmetry & 4) std::swap(x, y);
    ring.push_back(Point(x + dx, y + dy));
  }
  return make_polygon(std::move(ring));  // make_polygon restores counterclockwise order
}

inline bool proper_overlaps(const std::vector<SimplePolygon>& bodies, const SimplePolygon& b) {
  for (const auto& o : bodies)
    if (body_touch(o, b) == Touch::boundary_only) return false;
  return true;
}

}  // namespace detail

// ρ = 2 shape: an L of arm lengths w, h and thickness t.
inline SimplePolygon l_shape(long w, long h, long t) {
  return make_polygon({Point(0, 0), Point(w, 0), Point(w, t), Point(t, t), Point(t, h), Point(0, h)});
}

// ρ = 3 shape: two horizontal bars joined by a vertical one.
inline SimplePolygon z_shape(long w, long h, long t) {
  return make_polygon({Point(0, 0), Point(w, 0), Point(w, h - t), Point(2 * w - t, h - t), Point(2 * w - t, h), Point(w - t, h),
                       Point(w - t, t), Point(0, t)});
}

struct BodyFamily {
  std::vector<SimplePolygon> bodies;
  int rho = 1;
  double alpha = 0;  // filled for fat families
};

// Mix of rectangles, L- and Z-shapes (ρ <= 3), pairwise either disjoint or
// overlapping with non-empty interior.
inline BodyFamily random_rho_convex(int n, std::uint64_t seed, int max_rho = 3, long extent = 400) {
  Rng rng(seed);
  BodyFamily out;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
      const int kind = static_cast<int>(rng.between(1, std::clamp(max_rho, 1, 3)));
      long w = rng.between(40, 120), h = rng.between(40, 120), t = rng.between(8, 24);
      std::vector<std::pair<long, long>> shape;
      if (kind == 1) shape = {{0, 0}, {w, 0}, {w, t + h / 3}, {0, t + h / 3}};
      else if (kind == 2) shape = {{0, 0}, {w, 0}, {w, t}, {t, t}, {t, h}, {0, h}};
      else shape = {{0, 0}, {w, 0}, {w, h - t}, {2 * w - t, h - t}, {2 * w - t, h}, {w - t, h}, {w - t, t}, {0, t}};
      SimplePolygon b = detail::place(shape, static_cast<int>(rng.below(8)), rng.between(0, extent), rng.between(0, extent));
      if (!detail::proper_overlaps(out.bodies, b)) continue;
      out.bodies.push_back(std::move(b));
      out.rho = std::max(out.rho, kind);
      placed = true;
    }
    if (!placed) throw GeometryError(GeometryError::Kind::general_position, "random_rho_convex: could not place body " + std::to_string(i));
  }
  return out;
}

// Regular polygon with rational (snapped) vertices.
inline SimplePolygon regular_polygon(int sides, double cx, double cy, double radius, double phase = 0) {
  std::vector<Point> ring;
  for (int s = 0; s < sides; ++s) {
    double a = phase + 2 * std::numbers::pi * s / sides;
    ring.push_back(snap_point(cx + radius * std::cos(a), cy + radius * std::sin(a)));
  }
  return make_polygon(std::move(ring));
}

// Regular `sides`-gons with circumradius in [1, rmax], rmax chosen so the
// collection's R_max / r_min stays below alpha_target.
inline BodyFamily random_fat_convex(int n, std::uint64_t seed, double alpha_target = 2.0, int sides = 8, double extent = 12) {
  const double floor_alpha = 1 / std::cos(std::numbers::pi / sides);
  if (alpha_target <= floor_alpha) throw PreconditionError("random_fat_convex: alpha target below the regular-polygon minimum");
  Rng rng(seed);
  const double rmax = std::max(1.0, alpha_target * std::cos(std::numbers::pi / sides) * (1 - 1e-3));
  BodyFamily out;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
      double radius = 1 + (rmax - 1) * rng.unit();
      SimplePolygon b = regular_polygon(sides, extent * rng.unit(), extent * rng.unit(), radius, rng.unit() * 2 * std::numbers::pi / sides);
      if (!detail::proper_overlaps(out.bodies, b)) continue;
      out.bodies.push_back(std::move(b));
      placed = true;
    }
    if (!placed) throw GeometryError(GeometryError::Kind::general_position, "random_fat_convex: could not place body " + std::to_string(i));
  }
  out.alpha = fatness(out.bodies).alpha;
  return out;
}

// `count` unit disks (as `sides`-gons) with centres spread along a short
// segment, so every pair overlaps.
inline std::vector<SimplePolygon> disk_stack(int count, int sides = 64) {
  std::vector<SimplePolygon> out;
  for (int i = 0; i < count; ++i) out.push_back(regular_polygon(sides, 0.01 * i, 0.003 * i, 1.0));
  return out;
}

}  // namespace bidim::gen
