#pragma once

// Exact planar geometry over GMP rationals: polysegments and their
// crossings, arrangements, simple polygons, geodesics inside polygons,
// fatness measures and general-position perturbation.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bidim/error.hpp"

namespace bidim {

using Rational = mpq_class;

struct Point {
  Rational x, y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
    x.canonicalize();
    y.canonicalize();
  }
  Point(long px, long py) : x(px), y(py) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

inline Point rational_point(long xn, long xd, long yn, long yd) { return {Rational(xn, xd), Rational(yn, yd)}; }

// Nearest rational with denominator 2^bits; generators snap floats with it.
inline Rational snap(double v, int bits = 30) {
  if (!std::isfinite(v)) throw InvalidInput("snap: non-finite coordinate");
  mpz_class den = 1;
  den <<= bits;
  mpz_class num;
  mpf_class scaled(v, 128);
  scaled *= mpf_class(den, 128);
  mpf_class rounded = floor(scaled + 0.5);
  num = mpz_class(rounded);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Point snap_point(double x, double y, int bits = 30) { return {snap(x, bits), snap(y, bits)}; }

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational cross(const Point& o, const Point& a, const Point& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// +1 counterclockwise, -1 clockwise, 0 collinear.
inline int orientation(const Point& a, const Point& b, const Point& c) { return sgn(cross(a, b, c)); }

// p on the closed segment ab.
inline bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orientation(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline double distance(const Point& a, const Point& b) {
  Rational dx = a.x - b.x, dy = a.y - b.y;
  Rational sq = dx * dx + dy * dy;
  return std::sqrt(sq.get_d());
}

// ---------------------------------------------------------------------------
// Segments

struct SegmentHit {
  enum class Kind { none, point, overlap } kind = Kind::none;
  Point p, q;  // point hit: p; overlap: [p, q] with p < q
};

inline SegmentHit intersect_segments(const Point& a, const Point& b, const Point& c, const Point& d) {
  SegmentHit hit;
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d), o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (a == b || c == d) {
    const Point& p = a == b ? a : c;
    const Point& s0 = a == b ? c : a;
    const Point& s1 = a == b ? d : b;
    if (s0 == s1 ? p == s0 : on_segment(p, s0, s1)) {
      hit.kind = SegmentHit::Kind::point;
      hit.p = p;
    }
    return hit;
  }
  if (o1 == 0 && o2 == 0) {
    Point lo1 = std::min(a, b), hi1 = std::max(a, b), lo2 = std::min(c, d), hi2 = std::max(c, d);
    Point lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
    if (hi < lo) return hit;
    if (lo == hi) {
      hit.kind = SegmentHit::Kind::point;
      hit.p = lo;
    } else {
      hit.kind = SegmentHit::Kind::overlap;
      hit.p = lo;
      hit.q = hi;
    }
    return hit;
  }
  if (o1 * o2 > 0 || o3 * o4 > 0) return hit;
  hit.kind = SegmentHit::Kind::point;
  if (o1 == 0) hit.p = c;
  else if (o2 == 0) hit.p = d;
  else if (o3 == 0) hit.p = a;
  else if (o4 == 0) hit.p = b;
  else {
    Rational den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
    Rational t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den;
    hit.p = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
  }
  return hit;
}

// ---------------------------------------------------------------------------
// Polysegments

struct Polysegment {
  std::vector<Point> points;

  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
  bool is_point() const { return points.size() == 1; }
};

// Why a polysegment is invalid, or nullopt when it is a valid
// non-self-crossing chain.
inline std::optional<std::string> polysegment_defect(const Polysegment& c) {
  if (c.points.empty()) return "empty polysegment";
  const std::size_t n = c.length();
  for (std::size_t i = 0; i < n; ++i)
    if (c.points[i] == c.points[i + 1]) return "zero-length segment " + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      SegmentHit h = intersect_segments(c.points[i], c.points[i + 1], c.points[j], c.points[j + 1]);
      if (h.kind == SegmentHit::Kind::none) continue;
      if (j == i + 1 && h.kind == SegmentHit::Kind::point && h.p == c.points[i + 1]) continue;
      return "segments " + std::to_string(i) + " and " + std::to_string(j) + " meet";
    }
  return std::nullopt;
}

inline void require_valid(const Polysegment& c, const std::string& where) {
  if (auto d = polysegment_defect(c)) throw GeometryError(GeometryError::Kind::self_crossing, where + ": " + *d);
}

// All common points of two polysegments, sorted. Throws on collinear overlap.
inline std::vector<Point> segment_crossings(const Polysegment& a, const Polysegment& b) {
  std::set<Point> pts;
  auto segs = [](const Polysegment& c) {
    std::vector<std::pair<Point, Point>> s;
    if (c.points.size() == 1) s.emplace_back(c.points[0], c.points[0]);
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i) s.emplace_back(c.points[i], c.points[i + 1]);
    return s;
  };
  for (const auto& [p0, p1] : segs(a))
    for (const auto& [q0, q1] : segs(b)) {
      SegmentHit h = intersect_segments(p0, p1, q0, q1);
      if (h.kind == SegmentHit::Kind::overlap)
        throw GeometryError(GeometryError::Kind::overlap, "segment_crossings: collinear overlap, intersection is not finite");
      if (h.kind == SegmentHit::Kind::point) pts.insert(h.p);
    }
  return {pts.begin(), pts.end()};
}

// Position of p along c as (segment index, parameter), bends canonicalised
// to the start of the next segment. Throws if p is not on c.
inline std::pair<std::size_t, Rational> locate(const Polysegment& c, const Point& p) {
  if (c.points.size() == 1) {
    if (p == c.points[0]) return {0, Rational(0)};
    throw InvalidInput("locate: point not on polysegment");
  }
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    const Point& a = c.points[i];
    const Point& b = c.points[i + 1];
    if (!on_segment(p, a, b)) continue;
    Rational t = a.x != b.x ? (p.x - a.x) / (b.x - a.x) : (p.y - a.y) / (b.y - a.y);
    if (t == 1 && i + 2 < c.points.size()) return {i + 1, Rational(0)};
    return {i, t};
  }
  throw InvalidInput("locate: point not on polysegment");
}

struct Crossing {
  Point point;
  int a = 0, b = 0;  // polysegment indices, a < b
};

struct Arrangement {
  std::vector<Polysegment> polysegments;
  std::vector<Crossing> crossings;  // sorted by (a, b, point)
};

inline Arrangement build_arrangement(std::vector<Polysegment> polys) {
  Arrangement arr;
  for (std::size_t i = 0; i < polys.size(); ++i) require_valid(polys[i], "build_arrangement: polysegment " + std::to_string(i));
  arr.polysegments = std::move(polys);
  const auto& ps = arr.polysegments;
  std::map<Point, std::set<int>> at;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      std::vector<Point> pts;
      try {
        pts = segment_crossings(ps[i], ps[j]);
      } catch (const GeometryError& e) {
        throw GeometryError(e.kind(), "build_arrangement: polysegments " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
      for (const Point& p : pts) {
        arr.crossings.push_back({p, static_cast<int>(i), static_cast<int>(j)});
        at[p].insert(static_cast<int>(i));
        at[p].insert(static_cast<int>(j));
      }
    }
  for (const auto& [p, who] : at)
    if (who.size() > 2)
      throw GeometryError(GeometryError::Kind::triple_point,
                          "build_arrangement: " + std::to_string(who.size()) + " polysegments meet at (" + p.x.get_str() + ", " + p.y.get_str() + ")");
  return arr;
}

// Crossing points lying on each polysegment.
inline std::vector<std::vector<Point>> crossing_points_per_polysegment(const Arrangement& arr) {
  std::vector<std::set<Point>> sets(arr.polysegments.size());
  for (const Crossing& c : arr.crossings) {
    sets[c.a].insert(c.point);
    sets[c.b].insert(c.point);
  }
  std::vector<std::vector<Point>> out;
  for (auto& s : sets) out.emplace_back(s.begin(), s.end());
  return out;
}

inline int xi(const Arrangement& arr) {
  int best = 0;
  for (const auto& pts : crossing_points_per_polysegment(arr)) best = std::max(best, static_cast<int>(pts.size()));
  return best;
}

// ---------------------------------------------------------------------------
// Simple polygons (closed regions)

struct SimplePolygon {
  std::vector<Point> ring;  // counterclockwise, no repeated closing vertex
};

inline Rational twice_area(const std::vector<Point>& ring) {
  Rational a = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % ring.size()];
    a += p.x * q.y - p.y * q.x;
  }
  return a;
}

// Validates simplicity and positive area; returns the ring counterclockwise.
inline SimplePolygon make_polygon(std::vector<Point> ring) {
  const std::size_t n = ring.size();
  if (n < 3) throw GeometryError(GeometryError::Kind::degenerate_polygon, "make_polygon: fewer than 3 vertices");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (ring[i] == ring[j]) throw GeometryError(GeometryError::Kind::degenerate_polygon, "make_polygon: repeated vertex");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      SegmentHit h = intersect_segments(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n]);
      if (h.kind == SegmentHit::Kind::none) continue;
      if (adjacent && h.kind == SegmentHit::Kind::point) continue;
      throw GeometryError(GeometryError::Kind::degenerate_polygon, "make_polygon: boundary edges " + std::to_string(i) + " and " + std::to_string(j) + " meet");
    }
  Rational a = twice_area(ring);
  if (a == 0) throw GeometryError(GeometryError::Kind::degenerate_polygon, "make_polygon: zero area");
  if (a < 0) std::reverse(ring.begin(), ring.end());
  return SimplePolygon{std::move(ring)};
}

inline bool is_convex(const SimplePolygon& poly) {
  const auto& r = poly.ring;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (orientation(r[i], r[(i + 1) % r.size()], r[(i + 2) % r.size()]) < 0) return false;
  return true;
}

inline bool on_boundary(const SimplePolygon& poly, const Point& p) {
  const auto& r = poly.ring;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (on_segment(p, r[i], r[(i + 1) % r.size()])) return true;
  return false;
}

// Strict interior by crossing parity (half-open edge rule).
inline bool strictly_inside(const SimplePolygon& poly, const Point& p) {
  if (on_boundary(poly, p)) return false;
  const auto& r = poly.ring;
  bool in = false;
  for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++) {
    const Point& a = r[i];
    const Point& b = r[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      Rational xcross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xcross) in = !in;
    }
  }
  return in;
}

inline bool inside_closed(const SimplePolygon& poly, const Point& p) { return on_boundary(poly, p) || strictly_inside(poly, p); }

// Segment pq lies in the closed polygon: cut it at every boundary contact
// and test the midpoint of each piece.
inline bool segment_inside(const SimplePolygon& poly, const Point& p, const Point& q) {
  if (!inside_closed(poly, p) || !inside_closed(poly, q)) return false;
  if (p == q) return true;
  const auto& r = poly.ring;
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  auto param = [&](const Point& x) { return p.x != q.x ? Rational((x.x - p.x) / (q.x - p.x)) : Rational((x.y - p.y) / (q.y - p.y)); };
  for (std::size_t i = 0; i < r.size(); ++i) {
    SegmentHit h = intersect_segments(p, q, r[i], r[(i + 1) % r.size()]);
    if (h.kind == SegmentHit::Kind::point) cuts.push_back(param(h.p));
    if (h.kind == SegmentHit::Kind::overlap) {
      cuts.push_back(param(h.p));
      cuts.push_back(param(h.q));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational t = (cuts[i] + cuts[i + 1]) / 2;
    Point mid(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y));
    if (!inside_closed(poly, mid)) return false;
  }
  return true;
}

inline bool polysegment_inside(const SimplePolygon& poly, const Polysegment& c) {
  if (c.points.size() == 1) return inside_closed(poly, c.points[0]);
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i)
    if (!segment_inside(poly, c.points[i], c.points[i + 1])) return false;
  return true;
}

// Ear clipping. Triangles are counterclockwise index triples into the ring.
inline std::vector<std::array<std::size_t, 3>> triangulate_polygon(const SimplePolygon& poly) {
  const auto& r = poly.ring;
  std::vector<std::size_t> idx(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) idx[i] = i;
  std::vector<std::array<std::size_t, 3>> tris;
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < idx.size() && !clipped; ++k) {
      std::size_t a = idx[(k + idx.size() - 1) % idx.size()], b = idx[k], c = idx[(k + 1) % idx.size()];
      if (orientation(r[a], r[b], r[c]) <= 0) continue;
      bool empty = true;
      for (std::size_t m : idx) {
        if (m == a || m == b || m == c) continue;
        if (orientation(r[a], r[b], r[m]) >= 0 && orientation(r[b], r[c], r[m]) >= 0 && orientation(r[c], r[a], r[m]) >= 0) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<long>(k));
      clipped = true;
    }
    if (!clipped) {
      // Only collinear runs remain: drop a flat vertex.
      for (std::size_t k = 0; k < idx.size(); ++k) {
        std::size_t a = idx[(k + idx.size() - 1) % idx.size()], b = idx[k], c = idx[(k + 1) % idx.size()];
        if (orientation(r[a], r[b], r[c]) == 0) {
          idx.erase(idx.begin() + static_cast<long>(k));
          clipped = true;
          break;
        }
      }
      if (!clipped) throw GeometryError(GeometryError::Kind::degenerate_polygon, "triangulate_polygon: no ear found");
    }
  }
  if (idx.size() == 3 && orientation(r[idx[0]], r[idx[1]], r[idx[2]]) > 0) tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

// Clip a convex counterclockwise polygon by another (Sutherland-Hodgman).
inline std::vector<Point> clip_convex(std::vector<Point> subject, const std::vector<Point>& clip) {
  for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    const Point& a = clip[i];
    const Point& b = clip[(i + 1) % clip.size()];
    std::vector<Point> out;
    for (std::size_t j = 0; j < subject.size(); ++j) {
      const Point& p = subject[j];
      const Point& q = subject[(j + 1) % subject.size()];
      Rational cp = cross(a, b, p), cq = cross(a, b, q);
      if (cp >= 0) out.push_back(p);
      if ((cp > 0 && cq < 0) || (cp < 0 && cq > 0)) {
        Rational t = cp / (cp - cq);
        out.emplace_back(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y));
      }
    }
    std::vector<Point> dedup;
    for (const Point& p : out)
      if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    subject = std::move(dedup);
  }
  return subject;
}

inline Point centroid(const std::vector<Point>& pts) {
  Rational sx = 0, sy = 0;
  for (const Point& p : pts) {
    sx += p.x;
    sy += p.y;
  }
  return {sx / static_cast<long>(pts.size()), sy / static_cast<long>(pts.size())};
}

// ---------------------------------------------------------------------------
// Fatness

struct Circle {
  double x = 0, y = 0, r = 0;
};

namespace detail {

struct DPoint {
  double x, y;
};

inline Circle circle_from(const DPoint& a, const DPoint& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2, std::hypot(a.x - b.x, a.y - b.y) / 2};
}

inline std::optional<Circle> circle_from(const DPoint& a, const DPoint& b, const DPoint& c) {
  double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
  double d = 2 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-300) return std::nullopt;
  double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
  double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
  return Circle{ux + a.x, uy + a.y, std::hypot(ux, uy)};
}

inline bool covers(const Circle& c, const DPoint& p) { return std::hypot(p.x - c.x, p.y - c.y) <= c.r * (1 + 1e-12) + 1e-12; }

}  // namespace detail

// Minimum enclosing circle of the vertices (iterative Welzl over a fixed
// shuffle, so the result is reproducible).
inline Circle min_enclosing_circle(const std::vector<Point>& pts) {
  std::vector<detail::DPoint> p;
  for (const Point& q : pts) p.push_back({q.x.get_d(), q.y.get_d()});
  if (p.empty()) throw InvalidInput("min_enclosing_circle: no points");
  std::mt19937_64 rng(0x5eed);
  for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
  Circle c{p[0].x, p[0].y, 0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (detail::covers(c, p[i])) continue;
    c = {p[i].x, p[i].y, 0};
    for (std::size_t j = 0; j < i; ++j) {
      if (detail::covers(c, p[j])) continue;
      c = detail::circle_from(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (detail::covers(c, p[k])) continue;
        if (auto t = detail::circle_from(p[i], p[j], p[k])) c = *t;
      }
    }
  }
  return c;
}

namespace detail {

inline double boundary_distance(const std::vector<DPoint>& r, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const DPoint& a = r[i];
    const DPoint& b = r[(i + 1) % r.size()];
    double dx = b.x - a.x, dy = b.y - a.y;
    double t = ((x - a.x) * dx + (y - a.y) * dy) / (dx * dx + dy * dy);
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(x - (a.x + t * dx), y - (a.y + t * dy)));
  }
  return best;
}

inline bool inside_double(const std::vector<DPoint>& r, double x, double y) {
  bool in = false;
  for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++)
    if ((r[i].y > y) != (r[j].y > y) && x < r[i].x + (y - r[i].y) * (r[j].x - r[i].x) / (r[j].y - r[i].y)) in = !in;
  return in;
}

}  // namespace detail

// Largest inscribed circle. Convex polygons: exact optimum of the linear
// program max r s.t. the centre is r away from every edge line, found by
// enumerating triples of tight edges. Otherwise a certified lower bound by
// grid sampling of the distance to the boundary plus local refinement.
inline Circle max_inscribed_circle(const SimplePolygon& poly, int samples = 64) {
  std::vector<detail::DPoint> r;
  for (const Point& p : poly.ring) r.push_back({p.x.get_d(), p.y.get_d()});
  const std::size_t n = r.size();
  if (is_convex(poly)) {
    // Edge i: unit inward normal (nx, ny), offset c: nx*x + ny*y - c >= r.
    std::vector<std::array<double, 3>> lines;
    for (std::size_t i = 0; i < n; ++i) {
      double dx = r[(i + 1) % n].x - r[i].x, dy = r[(i + 1) % n].y - r[i].y;
      double len = std::hypot(dx, dy);
      double nx = -dy / len, ny = dx / len;
      lines.push_back({nx, ny, nx * r[i].x + ny * r[i].y});
    }
    Circle best{0, 0, -1};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          // nx x + ny y - r = c for the three lines
          const auto& la = lines[a];
          const auto& lb = lines[b];
          const auto& lc = lines[c];
          double m[3][4] = {{la[0], la[1], -1, la[2]}, {lb[0], lb[1], -1, lb[2]}, {lc[0], lc[1], -1, lc[2]}};
          bool singular = false;
          for (int col = 0; col < 3 && !singular; ++col) {
            int piv = col;
            for (int row = col + 1; row < 3; ++row)
              if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
            if (std::abs(m[piv][col]) < 1e-12) {
              singular = true;
              break;
            }
            std::swap(m[piv], m[col]);
            for (int row = 0; row < 3; ++row) {
              if (row == col) continue;
              double f = m[row][col] / m[col][col];
              for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
            }
          }
          if (singular) continue;
          double x = m[0][3] / m[0][0], y = m[1][3] / m[1][1], rad = m[2][3] / m[2][2];
          if (rad <= best.r) continue;
          bool feasible = true;
          for (const auto& l : lines)
            if (l[0] * x + l[1] * y - l[2] < rad - 1e-9 * std::max(1.0, rad)) {
              feasible = false;
              break;
            }
          if (feasible) best = {x, y, rad};
        }
    if (best.r <= 0) throw GeometryError(GeometryError::Kind::degenerate_polygon, "max_inscribed_circle: no interior");
    return best;
  }
  double minx = r[0].x, maxx = r[0].x, miny = r[0].y, maxy = r[0].y;
  for (const auto& p : r) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  Circle best{0, 0, -1};
  for (int i = 0; i <= samples; ++i)
    for (int j = 0; j <= samples; ++j) {
      double x = minx + (maxx - minx) * i / samples, y = miny + (maxy - miny) * j / samples;
      if (!detail::inside_double(r, x, y)) continue;
      double d = detail::boundary_distance(r, x, y);
      if (d > best.r) best = {x, y, d};
    }
  if (best.r <= 0) throw GeometryError(GeometryError::Kind::degenerate_polygon, "max_inscribed_circle: no interior sample");
  double h = std::max(maxx - minx, maxy - miny) / samples;
  while (h > 1e-9 * std::max(1.0, best.r)) {
    bool moved = false;
    for (auto [dx, dy] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}, {h, h}, {h, -h}, {-h, h}, {-h, -h}}) {
      double x = best.x + dx, y = best.y + dy;
      if (!detail::inside_double(r, x, y)) continue;
      double d = detail::boundary_distance(r, x, y);
      if (d > best.r) {
        best = {x, y, d};
        moved = true;
      }
    }
    if (!moved) h /= 2;
  }
  return best;
}

struct FatnessReport {
  std::vector<double> R;  // circumscribed radius per body
  std::vector<double> r;  // inscribed radius per body
  double alpha = 0;       // max R / min r
};

inline FatnessReport fatness(const std::vector<SimplePolygon>& bodies) {
  if (bodies.empty()) throw InvalidInput("fatness: no bodies");
  FatnessReport rep;
  double max_r = 0, min_r = std::numeric_limits<double>::infinity();
  for (const auto& b : bodies) {
    double big = min_enclosing_circle(b.ring).r;
    double small = max_inscribed_circle(b).r;
    rep.R.push_back(big);
    rep.r.push_back(small);
    max_r = std::max(max_r, big);
    min_r = std::min(min_r, small);
  }
  rep.alpha = max_r / min_r;
  return rep;
}

// ---------------------------------------------------------------------------
// Geodesics

// Shortest polysegment from p to q inside the closed polygon: Dijkstra over
// the visibility graph of p, q and the reflex vertices.
inline Polysegment geodesic_path(const SimplePolygon& poly, const Point& p, const Point& q) {
  if (!inside_closed(poly, p) || !inside_closed(poly, q)) throw GeometryError(GeometryError::Kind::outside, "geodesic_path: endpoint outside polygon");
  if (p == q) return Polysegment{{p}};
  if (segment_inside(poly, p, q)) return Polysegment{{p, q}};
  const auto& r = poly.ring;
  std::vector<Point> nodes{p, q};
  for (std::size_t i = 0; i < r.size(); ++i)
    if (orientation(r[(i + r.size() - 1) % r.size()], r[i], r[(i + 1) % r.size()]) < 0 && r[i] != p && r[i] != q) nodes.push_back(r[i]);
  const std::size_t n = nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n, -1);
  std::vector<char> done(n, 0);
  std::vector<std::vector<signed char>> vis(n, std::vector<signed char>(n, -1));
  auto visible = [&](std::size_t a, std::size_t b) {
    if (vis[a][b] < 0) vis[a][b] = vis[b][a] = segment_inside(poly, nodes[a], nodes[b]) ? 1 : 0;
    return vis[a][b] == 1;
  };
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[0] = 0;
  pq.push({0, 0});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == 1) break;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || v == u || !visible(u, v)) continue;
      double nd = d + distance(nodes[u], nodes[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = static_cast<int>(u);
        pq.push({nd, v});
      }
    }
  }
  if (prev[1] < 0) throw GeometryError(GeometryError::Kind::outside, "geodesic_path: target unreachable");
  std::vector<Point> path;
  for (int v = 1; v >= 0; v = prev[v]) {
    path.push_back(nodes[v]);
    if (v == 0) break;
  }
  std::reverse(path.begin(), path.end());
  Polysegment out{path};
  if (!polysegment_inside(poly, out)) throw GeometryError(GeometryError::Kind::outside, "geodesic_path: result leaves polygon");
  return out;
}

// ---------------------------------------------------------------------------
// General position

// Indices involved in a duplicate or in a collinear triple. Per point, the
// others are sorted by direction; equal neighbours in that order are
// collinear with it.
inline std::set<std::size_t> general_position_defects(const std::vector<Point>& pts) {
  std::set<std::size_t> bad;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (pts[j] == pts[i]) {
        bad.insert(i);
        bad.insert(j);
        continue;
      }
      others.push_back(j);
    }
    // Direction normalised to the upper half-plane, compared by cross product.
    auto dir = [&](std::size_t j) {
      Rational dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
      if (dy < 0 || (dy == 0 && dx < 0)) {
        dx = -dx;
        dy = -dy;
      }
      return std::pair<Rational, Rational>{dx, dy};
    };
    std::vector<std::pair<std::pair<Rational, Rational>, std::size_t>> dirs;
    for (std::size_t j : others) dirs.push_back({dir(j), j});
    auto less = [](const auto& a, const auto& b) { return a.first.first * b.first.second - a.first.second * b.first.first > 0; };
    std::sort(dirs.begin(), dirs.end(), less);
    for (std::size_t t = 0; t + 1 < dirs.size(); ++t)
      if (!less(dirs[t], dirs[t + 1]) && !less(dirs[t + 1], dirs[t])) {
        bad.insert(i);
        bad.insert(dirs[t].second);
        bad.insert(dirs[t + 1].second);
      }
  }
  return bad;
}

inline bool in_general_position(const std::vector<Point>& pts) { return general_position_defects(pts).empty(); }

// Moves offending points by rational offsets in [-epsilon, epsilon]^2 until
// the set is in general position. `keep(i, p)` must accept every new
// position (e.g. staying inside the intended bodies).
inline std::vector<Point> perturb_general_position(std::vector<Point> pts, const Rational& epsilon, std::uint64_t seed,
                                                   const std::function<bool(std::size_t, const Point&)>& keep = {},
                                                   int max_rounds = 64) {
  if (epsilon <= 0) throw PreconditionError("perturb_general_position: epsilon must be positive");
  std::mt19937_64 rng(seed);
  const std::vector<Point> original = pts;
  constexpr long kDen = 1L << 20;
  for (int round = 0; round < max_rounds; ++round) {
    std::set<std::size_t> bad = general_position_defects(pts);
    if (bad.empty()) return pts;
    // Keep one member of each defect fixed where possible: move all but the lowest index.
    bool first = true;
    for (std::size_t i : bad) {
      if (first && round == 0) {
        first = false;
        continue;
      }
      for (int tries = 0; tries < 32; ++tries) {
        Rational ox(static_cast<long>(rng() % (2 * kDen + 1)) - kDen, kDen), oy(static_cast<long>(rng() % (2 * kDen + 1)) - kDen, kDen);
        Point cand(original[i].x + ox * epsilon, original[i].y + oy * epsilon);
        if (!keep || keep(i, cand)) {
          pts[i] = cand;
          break;
        }
      }
    }
  }
  if (!in_general_position(pts))
    throw GeometryError(GeometryError::Kind::general_position, "perturb_general_position: could not reach general position");
  return pts;
}

}  // namespace bidim
