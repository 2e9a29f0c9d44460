#pragma once

// From geometry to graphs: intersection graphs of arrangements, the
// crossing-gadget planarization, contact points of bodies, and the two
// polysegment models of bodies (ρ-convex via geodesic trees, fat convex via
// monotone chains).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bidim/geometry.hpp"
#include "bidim/graph.hpp"
#include "bidim/models.hpp"
#include "bidim/structure.hpp"

namespace bidim {

// One vertex per polysegment (id = index), one edge per touching pair.
inline Multigraph intersection_graph(const Arrangement& arr) {
  Multigraph g;
  for (std::size_t i = 0; i < arr.polysegments.size(); ++i) g.add_vertex(static_cast<VertexId>(i));
  std::set<std::pair<int, int>> pairs;
  for (const Crossing& c : arr.crossings) pairs.insert({c.a, c.b});
  for (auto [a, b] : pairs) g.add_edge(a, b);
  return g;
}

// ---------------------------------------------------------------------------
// Planarization

struct PlanarizationBundle {
  Multigraph G;
  std::vector<EdgeId> M;          // gadget edges, one per crossing
  Multigraph H;                   // G/M, parallels kept
  Multigraph gb_quotient;         // G/(E \ M), parallels kept
  Multigraph gb;                  // simplified; vertex i is polysegment i
  CContractionModel model_H;      // c = 1
  CContractionModel model_gb;     // c <= xi + 1
  int xi = 0;
  std::vector<std::vector<EdgeId>> chains;  // per polysegment, its subdivided edges in order
};

// Every polysegment becomes a path between its endpoint vertices,
// subdivided at each crossing point on it; each crossing gets a gadget edge
// between the two subdivision vertices. A crossing at an endpoint uses the
// endpoint vertex itself; a one-point polysegment is a single vertex.
inline PlanarizationBundle planarize(const Arrangement& arr) {
  PlanarizationBundle b;
  const auto& ps = arr.polysegments;
  const int n = static_cast<int>(ps.size());
  for (int i = 0; i < n; ++i) require_valid(ps[i], "planarize: polysegment " + std::to_string(i));
  b.xi = xi(arr);
  auto on = crossing_points_per_polysegment(arr);

  for (int i = 0; i < n; ++i) b.G.add_vertex(i);  // start vertex of polysegment i
  std::vector<std::map<Point, VertexId>> vertex_at(n);
  for (int i = 0; i < n; ++i) {
    const Polysegment& c = ps[i];
    vertex_at[i][c.points.front()] = i;
    std::vector<std::pair<std::pair<std::size_t, Rational>, Point>> order;
    for (const Point& p : on[i])
      if (p != c.points.front() && p != c.points.back()) order.push_back({locate(c, p), p});
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<VertexId> chain{i};
    for (const auto& [key, p] : order) {
      VertexId v = b.G.add_vertex();
      vertex_at[i][p] = v;
      chain.push_back(v);
    }
    if (c.points.size() > 1) {
      VertexId end = b.G.add_vertex();
      vertex_at[i][c.points.back()] = end;
      chain.push_back(end);
    }
    b.chains.emplace_back();
    for (std::size_t s = 0; s + 1 < chain.size(); ++s) b.chains.back().push_back(b.G.add_edge(chain[s], chain[s + 1]));
  }
  for (const Crossing& c : arr.crossings) b.M.push_back(b.G.add_edge(vertex_at[c.a].at(c.point), vertex_at[c.b].at(c.point)));

  std::set<EdgeId> mset(b.M.begin(), b.M.end());
  std::vector<EdgeId> rest;
  for (const Edge& e : b.G.edges())
    if (!mset.contains(e.id)) rest.push_back(e.id);

  b.H = quotient(b.G, b.M).graph;
  b.gb_quotient = quotient(b.G, rest).graph;
  b.model_H = contraction_model(b.G, b.M, true);
  b.model_gb = contraction_model(b.G, rest, false);
  b.gb = b.model_gb.base.target;
  return b;
}

struct BundleCheck {
  bool h_planar = false;
  bool quotient_matches = false;    // contract_edge_set(G, M) ≅ simplify(H)
  bool gb_matches = false;          // simplify(G/(E \ M)) ≅ intersection graph
  bool subdivision_ok = false;      // every chain has at most xi + 1 edges
  bool model_H_ok = false;          // valid 1-contraction
  bool model_gb_ok = false;         // valid (xi+1)-contraction
  std::string detail;

  bool ok() const { return h_planar && quotient_matches && gb_matches && subdivision_ok && model_H_ok && model_gb_ok; }
};

inline BundleCheck check_bundle(const PlanarizationBundle& b, const Arrangement& arr) {
  BundleCheck r;
  r.h_planar = is_planar(b.H);
  Contraction cm = contract_edge_set(b.G, b.M);
  r.quotient_matches = isomorphic_under(cm.graph, b.H, [&] {
    std::map<VertexId, VertexId> id;
    for (VertexId v : cm.graph.vertices()) id[v] = v;
    return id;
  }());
  std::set<EdgeId> mset(b.M.begin(), b.M.end());
  std::vector<EdgeId> rest;
  for (const Edge& e : b.G.edges())
    if (!mset.contains(e.id)) rest.push_back(e.id);
  Contraction cg = contract_edge_set(b.G, rest);
  Multigraph ig = intersection_graph(arr);
  std::map<VertexId, VertexId> to_poly;
  for (std::size_t i = 0; i < b.chains.size(); ++i) to_poly[static_cast<VertexId>(i)] = static_cast<VertexId>(i);
  r.gb_matches = cg.graph.num_vertices() == ig.num_vertices() && isomorphic_under(cg.graph, ig, to_poly) &&
                 isomorphic_under(b.gb, ig, to_poly);
  r.subdivision_ok = std::all_of(b.chains.begin(), b.chains.end(), [&](const auto& ch) { return static_cast<int>(ch.size()) <= b.xi + 1; });
  auto vh = validate_c_contraction(b.model_H.base, 1);
  auto vg = validate_c_contraction(b.model_gb.base, b.xi + 1);
  r.model_H_ok = vh.ok() && b.model_H.base.target == b.H;
  r.model_gb_ok = vg.ok() && b.model_gb.base.target == b.gb;
  if (!vh) r.detail += "model_H: " + vh.message() + "; ";
  if (!vg) r.detail += "model_gb: " + vg.message() + "; ";
  return r;
}

// ---------------------------------------------------------------------------
// Bodies and contact points

enum class Touch { disjoint, interior, boundary_only };

namespace detail {

inline std::vector<std::vector<Point>> convex_pieces(const SimplePolygon& b) {
  std::vector<std::vector<Point>> out;
  if (is_convex(b)) {
    out.push_back(b.ring);
    return out;
  }
  for (const auto& t : triangulate_polygon(b)) out.push_back({b.ring[t[0]], b.ring[t[1]], b.ring[t[2]]});
  return out;
}

struct Box {
  Rational x0, y0, x1, y1;
};

inline Box box_of(const std::vector<Point>& pts) {
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const Point& p : pts) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

inline bool boxes_meet(const Box& a, const Box& b) { return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1; }

// Positive-area overlap polygon of two bodies, if any.
inline std::optional<std::vector<Point>> interior_overlap(const std::vector<std::vector<Point>>& a, const std::vector<std::vector<Point>>& b) {
  for (const auto& pa : a)
    for (const auto& pb : b) {
      if (!boxes_meet(box_of(pa), box_of(pb))) continue;
      auto clip = clip_convex(pa, pb);
      if (clip.size() >= 3 && twice_area(clip) > 0) return clip;
    }
  return std::nullopt;
}

inline bool boundaries_meet(const SimplePolygon& a, const SimplePolygon& b) {
  const auto& r = a.ring;
  const auto& s = b.ring;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (intersect_segments(r[i], r[(i + 1) % r.size()], s[j], s[(j + 1) % s.size()]).kind != SegmentHit::Kind::none) return true;
  return false;
}

}  // namespace detail

inline Touch body_touch(const SimplePolygon& a, const SimplePolygon& b) {
  if (!detail::boxes_meet(detail::box_of(a.ring), detail::box_of(b.ring))) return Touch::disjoint;
  if (detail::interior_overlap(detail::convex_pieces(a), detail::convex_pieces(b))) return Touch::interior;
  return detail::boundaries_meet(a, b) ? Touch::boundary_only : Touch::disjoint;
}

// Bodies touch iff their closed regions meet.
inline Multigraph body_intersection_graph(const std::vector<SimplePolygon>& bodies) {
  Multigraph g;
  for (std::size_t i = 0; i < bodies.size(); ++i) g.add_vertex(static_cast<VertexId>(i));
  for (std::size_t i = 0; i < bodies.size(); ++i)
    for (std::size_t j = i + 1; j < bodies.size(); ++j)
      if (body_touch(bodies[i], bodies[j]) != Touch::disjoint) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
  return g;
}

struct ContactPointSet {
  std::vector<Point> body_point;                     // p_i
  std::map<std::pair<int, int>, Point> pair_point;   // p_ij, i < j
  Multigraph graph;                                  // body intersection graph
  int delta = 0;                                     // max degree

  // P_i: p_i followed by the p_ij in order of j.
  std::vector<Point> points_of(int i) const {
    std::vector<Point> out{body_point[i]};
    for (const auto& [key, p] : pair_point)
      if (key.first == i || key.second == i) out.push_back(p);
    return out;
  }
};

inline ContactPointSet contact_points(const std::vector<SimplePolygon>& bodies, std::uint64_t seed = 1) {
  ContactPointSet cs;
  const int n = static_cast<int>(bodies.size());
  std::vector<std::vector<std::vector<Point>>> pieces;
  for (const auto& b : bodies) pieces.push_back(detail::convex_pieces(b));
  std::vector<Point> pts;
  std::vector<std::vector<int>> owners;
  for (int i = 0; i < n; ++i) {
    const std::vector<Point>* best = nullptr;
    Rational best_area = 0;
    for (const auto& pc : pieces[i]) {
      Rational a = twice_area(pc);
      if (!best || a > best_area) {
        best = &pc;
        best_area = a;
      }
    }
    pts.push_back(centroid(*best));
    owners.push_back({i});
    cs.graph.add_vertex(i);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!detail::boxes_meet(detail::box_of(bodies[i].ring), detail::box_of(bodies[j].ring))) continue;
      auto overlap = detail::interior_overlap(pieces[i], pieces[j]);
      if (!overlap) {
        if (detail::boundaries_meet(bodies[i], bodies[j]))
          throw GeometryError(GeometryError::Kind::empty_interior,
                              "contact_points: bodies " + std::to_string(i) + " and " + std::to_string(j) + " touch without interior overlap");
        continue;
      }
      pts.push_back(centroid(*overlap));
      owners.push_back({i, j});
      pairs.emplace_back(i, j);
      cs.graph.add_edge(i, j);
    }
  double min_r = std::numeric_limits<double>::infinity();
  for (const auto& b : bodies) min_r = std::min(min_r, max_inscribed_circle(b, 16).r);
  Rational eps = snap(std::max(min_r, 1e-6) / 256, 40);
  if (eps <= 0) eps = Rational(1, 1 << 30);
  auto keep = [&](std::size_t k, const Point& p) {
    for (int o : owners[k])
      if (!strictly_inside(bodies[o], p)) return false;
    return true;
  };
  pts = perturb_general_position(pts, eps, seed, keep);
  for (int i = 0; i < n; ++i) cs.body_point.push_back(pts[i]);
  for (std::size_t k = 0; k < pairs.size(); ++k) cs.pair_point[pairs[k]] = pts[n + k];
  for (int i = 0; i < n; ++i) cs.delta = std::max(cs.delta, cs.graph.degree(i));
  return cs;
}

// ---------------------------------------------------------------------------
// Polysegment models of bodies

struct BodyModel {
  Arrangement arrangement;          // polysegment i models body i
  std::vector<int> length;          // segments per polysegment
  std::vector<int> crossings;       // crossing points per polysegment
  int delta = 0;
  int rho = 0;
  double alpha = 0;
  long length_bound = 0;            // 2ρΔ for the ρ-convex model, Δ for the fat one
  long crossing_bound = 0;          // per-polysegment bound recorded for the report
  bool length_ok = true;
  bool crossing_ok = true;
};

namespace detail {

inline void finish_model(BodyModel& m, std::vector<Polysegment> polys) {
  m.arrangement = build_arrangement(std::move(polys));
  m.length.clear();
  for (const auto& c : m.arrangement.polysegments) m.length.push_back(static_cast<int>(c.length()));
  m.crossings.clear();
  for (const auto& pts : crossing_points_per_polysegment(m.arrangement)) m.crossings.push_back(static_cast<int>(pts.size()));
  m.length_ok = std::all_of(m.length.begin(), m.length.end(), [&](int l) { return l <= m.length_bound; });
  m.crossing_ok = std::all_of(m.crossings.begin(), m.crossings.end(), [&](int c) { return c <= m.crossing_bound; });
}

// Direction comparator around a centre, counterclockwise from +x.
inline bool angle_less(const Point& c, const Point& a, const Point& b) {
  auto half = [&](const Point& p) {
    Rational dx = p.x - c.x, dy = p.y - c.y;
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return orientation(c, a, b) > 0;
}

struct TreeDrawing {
  std::vector<Point> nodes;
  std::vector<std::pair<int, int>> segments;

  int node_at(const Point& p) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == p) return static_cast<int>(i);
    return -1;
  }
  int add_node(const Point& p) {
    int k = node_at(p);
    if (k >= 0) return k;
    nodes.push_back(p);
    return static_cast<int>(nodes.size()) - 1;
  }
  // Split the segment containing p in its interior; returns the node.
  int split_at(const Point& p) {
    int k = node_at(p);
    if (k >= 0) return k;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      auto [a, b] = segments[s];
      if (on_segment(p, nodes[a], nodes[b])) {
        int m = add_node(p);
        segments[s] = {a, m};
        segments.push_back({m, b});
        return m;
      }
    }
    throw CertificateError("split_at: point not on drawing");
  }
};

// Grow the tree drawing inside `body` through `targets` (first one is the
// root): each new point is joined to the nearest node by a geodesic, cut at
// its first contact with the existing drawing.
inline TreeDrawing geodesic_tree(const SimplePolygon& body, const std::vector<Point>& targets, int rho) {
  TreeDrawing t;
  t.add_node(targets.front());
  for (std::size_t k = 1; k < targets.size(); ++k) {
    const Point& q = targets[k];
    // already on the drawing
    bool on = t.node_at(q) >= 0;
    for (auto [a, b] : t.segments)
      if (on_segment(q, t.nodes[a], t.nodes[b])) on = true;
    if (on) {
      t.split_at(q);
      continue;
    }
    int nearest = 0;
    for (std::size_t i = 1; i < t.nodes.size(); ++i)
      if (distance(q, t.nodes[i]) < distance(q, t.nodes[nearest])) nearest = static_cast<int>(i);
    Polysegment g = geodesic_path(body, q, t.nodes[nearest]);
    if (static_cast<int>(g.length()) > rho)
      throw GeometryError(GeometryError::Kind::not_rho_convex,
                          "geodesic with " + std::to_string(g.length()) + " segments exceeds rho = " + std::to_string(rho));
    std::vector<Point> path{q};
    std::optional<Point> stop;
    for (std::size_t s = 0; s + 1 < g.points.size() && !stop; ++s) {
      const Point& a = g.points[s];
      const Point& b = g.points[s + 1];
      std::optional<Point> first;
      Rational best_t;
      auto consider = [&](const Point& h) {
        if (h == a && s == 0) return;  // q itself is off the drawing
        Rational tt = a.x != b.x ? Rational((h.x - a.x) / (b.x - a.x)) : Rational((h.y - a.y) / (b.y - a.y));
        if (!first || tt < best_t) {
          first = h;
          best_t = tt;
        }
      };
      for (auto [u, v] : t.segments) {
        SegmentHit h = intersect_segments(a, b, t.nodes[u], t.nodes[v]);
        if (h.kind == SegmentHit::Kind::point) consider(h.p);
        if (h.kind == SegmentHit::Kind::overlap) {
          consider(h.p);
          consider(h.q);
        }
      }
      for (const Point& node : t.nodes)
        if (on_segment(node, a, b)) consider(node);
      if (first) stop = *first;
      else path.push_back(b);
    }
    if (stop) path.push_back(*stop);
    int prev = t.add_node(path.front());
    for (std::size_t s = 1; s < path.size(); ++s) {
      int cur = (s + 1 == path.size()) ? t.split_at(path[s]) : t.add_node(path[s]);
      if (cur != prev) t.segments.push_back({prev, cur});
      prev = cur;
    }
  }
  return t;
}

// Closed walk around the tree displaced by ε into each sector; at every
// node the walk passes exactly through the node in one sector: the sector
// holding the exterior for boundary nodes, any sector for required points.
// Opened at a required leaf (or the root).
inline Polysegment offset_walk(const SimplePolygon& body, const TreeDrawing& t, const std::set<int>& exact_nodes, double eps) {
  const int n = static_cast<int>(t.nodes.size());
  if (t.segments.empty()) return Polysegment{{t.nodes[0]}};
  std::vector<std::vector<int>> around(n);
  for (auto [a, b] : t.segments) {
    around[a].push_back(b);
    around[b].push_back(a);
  }
  for (int v = 0; v < n; ++v)
    std::sort(around[v].begin(), around[v].end(), [&](int a, int b) { return angle_less(t.nodes[v], t.nodes[a], t.nodes[b]); });
  for (auto [a, b] : t.segments) {
    Point mid((t.nodes[a].x + t.nodes[b].x) / 2, (t.nodes[a].y + t.nodes[b].y) / 2);
    if (on_boundary(body, mid)) throw GeometryError(GeometryError::Kind::offset_walk, "offset_walk: tree segment runs along the boundary");
  }
  // Sector s at v lies counterclockwise from around[v][s] to around[v][s+1].
  auto dir = [&](int v, int w) {
    double dx = t.nodes[w].x.get_d() - t.nodes[v].x.get_d(), dy = t.nodes[w].y.get_d() - t.nodes[v].y.get_d();
    double l = std::hypot(dx, dy);
    return std::pair{dx / l, dy / l};
  };
  auto angle_of = [](std::pair<double, double> d) { return std::atan2(d.second, d.first); };
  auto sector_of_direction = [&](int v, double ang) {
    const auto& ar = around[v];
    if (ar.size() == 1) return 0;
    for (std::size_t s = 0; s < ar.size(); ++s) {
      double a0 = angle_of(dir(v, ar[s])), a1 = angle_of(dir(v, ar[(s + 1) % ar.size()]));
      double span = std::fmod(a1 - a0 + 4 * std::numbers::pi, 2 * std::numbers::pi);
      if (span == 0) span = 2 * std::numbers::pi;
      double off = std::fmod(ang - a0 + 4 * std::numbers::pi, 2 * std::numbers::pi);
      if (off > 0 && off < span) return static_cast<int>(s);
    }
    return 0;
  };
  // Exact sector per node, -1 when the node is always offset.
  std::vector<int> exact(n, -1);
  const auto& ring = body.ring;
  for (int v = 0; v < n; ++v) {
    if (on_boundary(body, t.nodes[v])) {
      int idx = -1;
      for (std::size_t i = 0; i < ring.size(); ++i)
        if (ring[i] == t.nodes[v]) idx = static_cast<int>(i);
      if (idx < 0) throw GeometryError(GeometryError::Kind::offset_walk, "offset_walk: tree node on a boundary edge interior");
      const Point& pa = ring[(idx + ring.size() - 1) % ring.size()];
      const Point& pb = ring[(idx + 1) % ring.size()];
      double ax = pa.x.get_d() - t.nodes[v].x.get_d(), ay = pa.y.get_d() - t.nodes[v].y.get_d();
      double bx = pb.x.get_d() - t.nodes[v].x.get_d(), by = pb.y.get_d() - t.nodes[v].y.get_d();
      double la = std::hypot(ax, ay), lb = std::hypot(bx, by);
      exact[v] = sector_of_direction(v, std::atan2(ay / la + by / lb, ax / la + bx / lb));
    } else if (exact_nodes.contains(v)) {
      exact[v] = 0;
    }
  }
  // Start at a required leaf if there is one.
  int start = -1;
  for (int v = 0; v < n && start < 0; ++v)
    if (around[v].size() == 1 && exact_nodes.contains(v)) start = v;
  if (start < 0) start = *exact_nodes.begin();
  // Walk: arriving at v from u, leave along the next edge counterclockwise after u.
  std::vector<Point> walk;
  auto visit = [&](int v, int sector) {
    const auto& ar = around[v];
    if (exact[v] == sector) {
      walk.push_back(t.nodes[v]);
      return;
    }
    double bx, by;
    if (ar.size() == 1) {
      auto d = dir(v, ar[0]);
      bx = -d.first;
      by = -d.second;
    } else {
      double a0 = angle_of(dir(v, ar[sector])), a1 = angle_of(dir(v, ar[(sector + 1) % ar.size()]));
      double span = std::fmod(a1 - a0 + 4 * std::numbers::pi, 2 * std::numbers::pi);
      double mid = a0 + span / 2;
      bx = std::cos(mid);
      by = std::sin(mid);
    }
    walk.push_back(snap_point(t.nodes[v].x.get_d() + eps * bx, t.nodes[v].y.get_d() + eps * by, 48));
  };
  // Sector index at v between incoming neighbour u and the next neighbour.
  auto index_in = [&](int v, int u) { return static_cast<int>(std::find(around[v].begin(), around[v].end(), u) - around[v].begin()); };
  const int first_sector = 0;
  int v = start;
  int s = first_sector;
  const std::size_t total = 2 * t.segments.size();
  for (std::size_t step = 0; step < total; ++step) {
    visit(v, s);
    int w = around[v][(s + 1) % around[v].size()];
    int back = index_in(w, v);
    v = w;
    s = back;
  }
  Polysegment c{walk};
  return c;
}

}  // namespace detail

// ρ-convex bodies: per body a geodesic tree through P_i, circumscribed by an
// ε-offset walk that passes exactly through every point of P_i.
inline BodyModel model_rho_convex(const std::vector<SimplePolygon>& bodies, const ContactPointSet& contacts, int rho) {
  if (rho < 1) throw PreconditionError("model_rho_convex: rho must be >= 1");
  BodyModel m;
  m.rho = rho;
  m.delta = contacts.delta;
  m.length_bound = 2L * rho * std::max(1, contacts.delta);
  m.crossing_bound = m.length_bound * m.length_bound * contacts.delta;
  std::vector<Polysegment> polys;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    std::vector<Point> targets = contacts.points_of(static_cast<int>(i));
    detail::TreeDrawing tree = detail::geodesic_tree(bodies[i], targets, rho);
    std::set<int> required;
    for (const Point& p : targets) required.insert(tree.node_at(p));
    // ε below a quarter of the smallest gap between a node and a segment not incident to it.
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < tree.nodes.size(); ++a)
      for (std::size_t b = a + 1; b < tree.nodes.size(); ++b) gap = std::min(gap, distance(tree.nodes[a], tree.nodes[b]));
    for (std::size_t v = 0; v < tree.nodes.size(); ++v)
      for (auto [a, b] : tree.segments) {
        if (static_cast<int>(v) == a || static_cast<int>(v) == b) continue;
        std::vector<detail::DPoint> seg{{tree.nodes[a].x.get_d(), tree.nodes[a].y.get_d()}, {tree.nodes[b].x.get_d(), tree.nodes[b].y.get_d()}};
        double dx = seg[1].x - seg[0].x, dy = seg[1].y - seg[0].y;
        double px = tree.nodes[v].x.get_d(), py = tree.nodes[v].y.get_d();
        double tt = std::clamp(((px - seg[0].x) * dx + (py - seg[0].y) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
        gap = std::min(gap, std::hypot(px - seg[0].x - tt * dx, py - seg[0].y - tt * dy));
      }
    std::vector<detail::DPoint> ring;
    for (const Point& p : bodies[i].ring) ring.push_back({p.x.get_d(), p.y.get_d()});
    for (const Point& p : tree.nodes)
      if (!on_boundary(bodies[i], p)) gap = std::min(gap, detail::boundary_distance(ring, p.x.get_d(), p.y.get_d()));
    double eps = std::isfinite(gap) ? gap / 4 : 1.0;
    std::optional<Polysegment> c;
    for (int attempt = 0; attempt < 12 && !c; ++attempt, eps /= 4) {
      Polysegment cand = detail::offset_walk(bodies[i], tree, required, eps);
      if (polysegment_defect(cand) || !polysegment_inside(bodies[i], cand)) continue;
      bool through = std::all_of(targets.begin(), targets.end(), [&](const Point& p) {
        return std::find(cand.points.begin(), cand.points.end(), p) != cand.points.end();
      });
      if (through) c = std::move(cand);
    }
    if (!c) throw GeometryError(GeometryError::Kind::offset_walk, "model_rho_convex: offset walk failed validation for body " + std::to_string(i));
    polys.push_back(std::move(*c));
  }
  detail::finish_model(m, std::move(polys));
  return m;
}

// Δ <= 16 α² h, the degree consequence of H-freeness for α-fat convex bodies.
inline bool fat_degree_check(int delta, double alpha, int h) { return delta <= 16.0 * alpha * alpha * h; }

// The degree check straight from the bodies, before any contact points are placed.
inline void require_fat_degree(const std::vector<SimplePolygon>& bodies, int h) {
  if (bodies.empty()) return;
  Multigraph g = body_intersection_graph(bodies);
  int delta = 0;
  for (VertexId v : g.vertices()) delta = std::max(delta, g.degree(v));
  const double alpha = fatness(bodies).alpha;
  if (!fat_degree_check(delta, alpha, h))
    throw PreconditionError("model_fat_convex: degree " + std::to_string(delta) + " exceeds 16*alpha^2*h = " + std::to_string(16.0 * alpha * alpha * h));
}

// Convex bodies: the chain through P_i in lexicographic order of the points.
inline BodyModel model_fat_convex(const std::vector<SimplePolygon>& bodies, const ContactPointSet& contacts, int h) {
  for (std::size_t i = 0; i < bodies.size(); ++i)
    if (!is_convex(bodies[i])) throw PreconditionError("model_fat_convex: body " + std::to_string(i) + " is not convex");
  BodyModel m;
  m.rho = 1;
  m.delta = contacts.delta;
  m.alpha = bodies.empty() ? 0 : fatness(bodies).alpha;
  if (!fat_degree_check(m.delta, m.alpha, h))
    throw PreconditionError("model_fat_convex: degree " + std::to_string(m.delta) + " exceeds 16*alpha^2*h = " +
                            std::to_string(16.0 * m.alpha * m.alpha * h));
  m.length_bound = std::max(1, contacts.delta);
  m.crossing_bound = m.length_bound * m.length_bound * contacts.delta;
  std::vector<Polysegment> polys;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    std::vector<Point> pts = contacts.points_of(static_cast<int>(i));
    std::sort(pts.begin(), pts.end());
    polys.push_back(Polysegment{pts});
  }
  detail::finish_model(m, std::move(polys));
  return m;
}

// Model with retries over perturbation seeds when a degeneracy (triple
// point, collinear overlap, failed offset walk) shows up.
template <typename Builder>
BodyModel model_with_retries(const std::vector<SimplePolygon>& bodies, std::uint64_t seed, int attempts, Builder&& build) {
  std::string last;
  for (int a = 0; a < attempts; ++a) {
    try {
      ContactPointSet cs = contact_points(bodies, seed + static_cast<std::uint64_t>(a) * 7919);
      return build(cs);
    } catch (const GeometryError& e) {
      if (e.kind() == GeometryError::Kind::empty_interior || e.kind() == GeometryError::Kind::not_rho_convex) throw;
      last = e.what();
    }
  }
  throw GeometryError(GeometryError::Kind::general_position, "model_with_retries: all attempts failed (" + last + ")");
}

}  // namespace bidim
