#pragma once

// Independent reference implementations used only by the tests. None of
// them calls the library algorithm it checks.

#include <gmpxx.h>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "bidim/geometry.hpp"
#include "bidim/graph.hpp"
#include "bidim/models.hpp"
#include "bidim/treewidth.hpp"

namespace oracle {

using bidim::Edge;
using bidim::EdgeId;
using bidim::Multigraph;
using bidim::VertexId;

// ---------------------------------------------------------------------------
// Small labelled graphs as bit masks over the pairs u < v.

inline int slot(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline bool has(int n, std::uint32_t mask, int u, int v) { return mask >> slot(n, u, v) & 1u; }

struct Small {
  int n = 0;
  std::uint32_t mask = 0;
  friend auto operator<=>(const Small&, const Small&) = default;
};

// Canonical labelled mask per (n, mask), memoised per n; n <= 6.
class Canon {
 public:
  std::uint32_t operator()(int n, std::uint32_t mask) {
    auto& table = tables_[n];
    if (table.empty()) build(n, table);
    return table[mask];
  }

 private:
  static void build(int n, std::vector<std::uint32_t>& table) {
    const int pairs = n * (n - 1) / 2;
    table.assign(std::size_t{1} << pairs, 0);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (std::uint32_t m = 0; m < table.size(); ++m) {
      std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
      for (const auto& q : perms) {
        std::uint32_t img = 0;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (has(n, m, u, v)) img |= 1u << slot(n, q[u], q[v]);
        best = std::min(best, img);
      }
      table[m] = best;
    }
  }
  std::map<int, std::vector<std::uint32_t>> tables_;
};

inline Canon& canon() {
  static Canon c;
  return c;
}

inline Small canonical(const Small& g) { return {g.n, canon()(g.n, g.mask)}; }

inline Small from_graph(const Multigraph& g) {
  Small s{static_cast<int>(g.num_vertices()), 0};
  for (const Edge& e : g.edges())
    if (!e.is_loop()) s.mask |= 1u << slot(s.n, static_cast<int>(g.index_of(e.u)), static_cast<int>(g.index_of(e.v)));
  return s;
}

inline Multigraph to_graph(const Small& s) {
  Multigraph g = bidim::make_edgeless(s.n);
  for (int u = 0; u < s.n; ++u)
    for (int v = u + 1; v < s.n; ++v)
      if (has(s.n, s.mask, u, v)) g.add_edge(u, v);
  return g;
}

// All graphs on n vertices up to isomorphism, by canonical masks.
inline std::vector<Small> all_graphs(int n) {
  std::set<Small> seen;
  const int pairs = n * (n - 1) / 2;
  for (std::uint32_t m = 0; m < (1u << pairs); ++m) seen.insert(canonical({n, m}));
  return {seen.begin(), seen.end()};
}

inline Small delete_vertex(const Small& g, int x) {
  Small out{g.n - 1, 0};
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (u != x && v != x && has(g.n, g.mask, u, v)) out.mask |= 1u << slot(out.n, u - (u > x), v - (v > x));
  return out;
}

inline Small delete_edge(const Small& g, int u, int v) { return {g.n, g.mask & ~(1u << slot(g.n, u, v))}; }

// Contract uv into u (simple convention).
inline Small contract(const Small& g, int u, int v) {
  Small out{g.n - 1, 0};
  auto rename = [&](int x) { return x == v ? u - (u > v) : x - (x > v); };
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b) {
      if (!has(g.n, g.mask, a, b)) continue;
      int ra = rename(a), rb = rename(b);
      if (ra != rb) out.mask |= 1u << slot(out.n, ra, rb);
    }
  return out;
}

// Every minor with at least one vertex, up to isomorphism.
inline std::set<Small> minor_closure(const Small& g) {
  std::set<Small> seen{canonical(g)};
  std::vector<Small> stack{canonical(g)};
  while (!stack.empty()) {
    Small cur = stack.back();
    stack.pop_back();
    std::vector<Small> next;
    if (cur.n > 1)
      for (int x = 0; x < cur.n; ++x) next.push_back(delete_vertex(cur, x));
    for (int u = 0; u < cur.n; ++u)
      for (int v = u + 1; v < cur.n; ++v)
        if (has(cur.n, cur.mask, u, v)) {
          next.push_back(delete_edge(cur, u, v));
          next.push_back(contract(cur, u, v));
        }
    for (const Small& s : next) {
      Small c = canonical(s);
      if (seen.insert(c).second) stack.push_back(c);
    }
  }
  return seen;
}

// H is a minor of G iff some labelling of V(G) by V(H) or "unused" gives
// nonempty connected classes with an edge between the classes of every H edge.
inline bool minor_by_labels(const Multigraph& h, const Multigraph& g) {
  const int n = static_cast<int>(g.num_vertices()), m = static_cast<int>(h.num_vertices());
  if (m > n) return false;
  if (m == 0) return true;
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    int a = static_cast<int>(g.index_of(e.u)), b = static_cast<int>(g.index_of(e.v));
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  std::vector<std::pair<int, int>> hedges;
  for (const Edge& e : h.edges())
    if (!e.is_loop()) hedges.emplace_back(static_cast<int>(h.index_of(e.u)), static_cast<int>(h.index_of(e.v)));
  auto connected = [&](std::uint32_t set) {
    std::uint32_t reach = set & (~set + 1);
    for (std::uint32_t prev = 0; prev != reach;) {
      prev = reach;
      for (std::uint32_t f = reach; f; f &= f - 1) reach |= adj[std::countr_zero(f)] & set;
    }
    return reach == set;
  };
  std::vector<int> label(n, 0);  // 0 unused, x+1 for H vertex x
  long total = 1;
  for (int i = 0; i < n; ++i) total *= m + 1;
  for (long code = 0; code < total; ++code) {
    long c = code;
    std::vector<std::uint32_t> cls(m, 0);
    for (int i = 0; i < n; ++i, c /= m + 1)
      if (int l = static_cast<int>(c % (m + 1))) cls[l - 1] |= 1u << i;
    bool ok = true;
    for (int x = 0; ok && x < m; ++x) ok = cls[x] && connected(cls[x]);
    for (std::size_t q = 0; ok && q < hedges.size(); ++q) {
      std::uint32_t nb = 0;
      for (std::uint32_t f = cls[hedges[q].first]; f; f &= f - 1) nb |= adj[std::countr_zero(f)];
      ok = (nb & cls[hedges[q].second]) != 0;
    }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Vertex cover by subset enumeration (n <= 20).

inline int vertex_cover_size(const Multigraph& g) {
  const int n = static_cast<int>(g.num_vertices());
  std::vector<std::pair<int, int>> es;
  for (const Edge& e : g.edges()) es.emplace_back(static_cast<int>(g.index_of(e.u)), static_cast<int>(g.index_of(e.v)));
  int best = n;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    int size = std::popcount(s);
    if (size >= best) continue;
    bool ok = std::all_of(es.begin(), es.end(), [s](auto e) { return (s >> e.first & 1u) || (s >> e.second & 1u); });
    if (ok) best = size;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Treewidth as the minimum over all elimination orders (n <= 8).

inline int treewidth_by_orders(const Multigraph& g) {
  const int n = static_cast<int>(g.num_vertices());
  if (n == 0) return -1;
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    int a = static_cast<int>(g.index_of(e.u)), b = static_cast<int>(g.index_of(e.v));
    if (a == b) continue;
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  int best = n - 1;
  do {
    std::vector<std::uint32_t> cur = adj;
    std::uint32_t alive = (1u << n) - 1;
    int width = 0;
    for (int v : order) {
      std::uint32_t nb = cur[v] & alive;
      width = std::max(width, std::popcount(nb));
      if (width >= best) break;
      for (std::uint32_t f = nb; f; f &= f - 1) cur[std::countr_zero(f)] |= nb & ~(1u << std::countr_zero(f));
      alive &= ~(1u << v);
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Tree-decomposition properties checked from scratch.
inline bool decomposition_ok(const Multigraph& g, const bidim::TreeDecomposition& d) {
  const Multigraph& t = d.tree;
  if (t.num_vertices() == 0) return g.num_vertices() == 0;
  if (t.num_edges() + 1 != t.num_vertices()) return false;
  {
    std::set<VertexId> seen{t.vertices().front()};
    std::vector<VertexId> q{t.vertices().front()};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (VertexId y : t.neighbors(q[i]))
        if (seen.insert(y).second) q.push_back(y);
    if (seen.size() != t.num_vertices()) return false;
  }
  std::map<VertexId, std::set<VertexId>> nodes_of;
  int width = -1;
  for (const auto& [node, bag] : d.bags) {
    width = std::max(width, static_cast<int>(bag.size()) - 1);
    for (VertexId v : bag) nodes_of[v].insert(node);
  }
  for (VertexId v : g.vertices())
    if (!nodes_of.contains(v)) return false;
  for (const Edge& e : g.edges()) {
    bool inside = false;
    for (const auto& [node, bag] : d.bags)
      if (std::count(bag.begin(), bag.end(), e.u) && std::count(bag.begin(), bag.end(), e.v)) inside = true;
    if (!inside) return false;
  }
  for (const auto& [v, ns] : nodes_of) {
    VertexId start = *ns.begin();
    std::set<VertexId> seen{start};
    std::vector<VertexId> q{start};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (VertexId y : t.neighbors(q[i]))
        if (ns.contains(y) && seen.insert(y).second) q.push_back(y);
    if (seen.size() != ns.size()) return false;
  }
  return width == d.width;
}

// ---------------------------------------------------------------------------
// φ-model conditions straight from the definitions.

namespace detail {

inline std::map<VertexId, int> bfs(const Multigraph& g, VertexId s) {
  std::map<VertexId, int> d{{s, 0}};
  std::queue<VertexId> q;
  q.push(s);
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop();
    for (VertexId y : g.neighbors(x))
      if (!d.contains(y)) {
        d[y] = d[x] + 1;
        q.push(y);
      }
  }
  return d;
}

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Dist {
  std::map<VertexId, std::map<VertexId, int>> d;
  explicit Dist(const Multigraph& g) {
    for (VertexId v : g.vertices()) d[v] = bfs(g, v);
  }
  int vv(VertexId a, VertexId b) const {
    auto it = d.at(a).find(b);
    return it == d.at(a).end() ? kInf : it->second;
  }
};

// Element: vertex (is_edge false) or non-loop edge (u, v).
struct Element {
  bool is_edge = false;
  VertexId u = -1, v = -1;
  EdgeId id = -1;
};

inline int element_distance(const Dist& dist, const Element& a, const Element& b) {
  if (!a.is_edge && !b.is_edge) return dist.vv(a.u, b.u);
  if (a.is_edge && b.is_edge) {
    if (a.id == b.id) return 1;
    int best = kInf;
    for (VertexId x : {a.u, a.v})
      for (VertexId y : {b.u, b.v}) best = std::min(best, dist.vv(x, y));
    return best >= kInf ? kInf : best + 2;
  }
  const Element& e = a.is_edge ? a : b;
  const Element& v = a.is_edge ? b : a;
  int best = std::min(dist.vv(v.u, e.u), dist.vv(v.u, e.v));
  return best >= kInf ? kInf : best + 1;
}

}  // namespace detail

// Conditions 1-4 (and 5 when `distance`); contraction mode drops 4 and
// forbids the star but needs every target edge hit.
inline bool model_ok(const bidim::MinorModel& m, bool distance = false, bool contraction = false) {
  const auto& gl = m.source;
  const Multigraph& g = gl.base();
  const Multigraph& h = m.target;
  std::map<VertexId, std::vector<EdgeId>> vpre;
  std::map<EdgeId, std::vector<EdgeId>> epre;
  for (const Edge& e : gl.graph().edges()) {
    auto it = m.map.find(e.id);
    if (it == m.map.end()) return false;
    const bidim::Image& im = it->second;
    if (im.is_star()) {
      if (contraction) return false;
    } else if (im.is_vertex()) {
      if (!h.has_vertex(im.id)) return false;
      vpre[im.id].push_back(e.id);
    } else {
      if (!h.has_edge(im.id)) return false;
      epre[im.id].push_back(e.id);
    }
  }
  std::map<VertexId, VertexId> owner;
  for (VertexId x : h.vertices()) {
    const auto& f = vpre[x];
    if (f.empty()) return false;
    std::set<VertexId> covered;
    std::set<EdgeId> fs(f.begin(), f.end());
    for (EdgeId id : f) {
      const Edge& e = gl.graph().edge(id);
      covered.insert(e.u);
      covered.insert(e.v);
    }
    for (VertexId v : covered)
      if (!fs.contains(gl.loop_of(v))) return false;
    std::set<VertexId> seen{*covered.begin()};
    std::vector<VertexId> q{*covered.begin()};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (EdgeId id : f) {
        const Edge& e = gl.graph().edge(id);
        if (e.is_loop() || !e.has_endpoint(q[i])) continue;
        VertexId y = e.other(q[i]);
        if (seen.insert(y).second) q.push_back(y);
      }
    if (seen.size() != covered.size()) return false;
    for (VertexId v : covered)
      if (!owner.emplace(v, x).second) return false;
  }
  for (const Edge& he : h.edges()) {
    const auto& pre = epre[he.id];
    if (pre.empty()) return false;
    if (!contraction && pre.size() != 1) return false;
    for (EdgeId id : pre) {
      const Edge& e = gl.graph().edge(id);
      auto ou = owner.find(e.u), ov = owner.find(e.v);
      if (ou == owner.end() || ov == owner.end()) return false;
      if (!((ou->second == he.u && ov->second == he.v) || (ou->second == he.v && ov->second == he.u))) return false;
    }
  }
  if (!distance) return true;

  detail::Dist dg(g), dh(h);
  std::vector<std::pair<detail::Element, detail::Element>> pairs;  // (G edge, H image)
  for (const Edge& e : gl.graph().edges()) {
    const bidim::Image& im = m.map.at(e.id);
    if (im.is_star() || e.is_loop()) continue;  // loops are not edges of G
    detail::Element ge{true, e.u, e.v, e.id};
    detail::Element he;
    if (im.is_vertex()) he = {false, im.id, im.id, -1};
    else {
      const Edge& x = h.edge(im.id);
      he = {true, x.u, x.v, x.id};
    }
    pairs.emplace_back(ge, he);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (detail::element_distance(dh, pairs[i].second, pairs[j].second) > detail::element_distance(dg, pairs[i].first, pairs[j].first))
        return false;
  return true;
}

// L_2 = C4 is a minor iff some biconnected component has at least 4 vertices.
inline bool has_c4_minor(const Multigraph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                   boost::property<boost::edge_index_t, std::size_t>>;
  Multigraph s = bidim::simplify(g);
  BG bg(s.num_vertices());
  std::size_t idx = 0;
  for (const Edge& e : s.edges()) boost::add_edge(s.index_of(e.u), s.index_of(e.v), idx++, bg);
  std::vector<std::size_t> comp(boost::num_edges(bg));
  auto map = boost::make_iterator_property_map(comp.begin(), boost::get(boost::edge_index, bg));
  std::size_t nc = boost::biconnected_components(bg, map);
  std::vector<std::set<std::size_t>> verts(nc);
  for (auto [it, end] = boost::edges(bg); it != end; ++it) {
    std::size_t c = comp[boost::get(boost::edge_index, bg, *it)];
    verts[c].insert(boost::source(*it, bg));
    verts[c].insert(boost::target(*it, bg));
  }
  return std::any_of(verts.begin(), verts.end(), [](const auto& v) { return v.size() >= 4; });
}

// ---------------------------------------------------------------------------
// Exact geometry from plain mpq arithmetic.

struct Q2 {
  mpq_class x, y;
};

inline mpq_class orient(const Q2& a, const Q2& b, const Q2& c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

inline bool between(const Q2& a, const Q2& b, const Q2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed segments share a point.
inline bool segments_meet(const Q2& a, const Q2& b, const Q2& c, const Q2& d) {
  mpq_class o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  return (o1 == 0 && between(a, b, c)) || (o2 == 0 && between(a, b, d)) || (o3 == 0 && between(c, d, a)) || (o4 == 0 && between(c, d, b));
}

inline Q2 q2(const bidim::Point& p) { return {p.x, p.y}; }

inline bool polysegments_meet(const bidim::Polysegment& a, const bidim::Polysegment& b) {
  auto segs = [](const bidim::Polysegment& c) {
    std::vector<std::pair<Q2, Q2>> out;
    if (c.points.size() == 1) out.emplace_back(q2(c.points[0]), q2(c.points[0]));
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i) out.emplace_back(q2(c.points[i]), q2(c.points[i + 1]));
    return out;
  };
  for (const auto& [p, q] : segs(a))
    for (const auto& [r, s] : segs(b))
      if (segments_meet(p, q, r, s)) return true;
  return false;
}

// Point strictly inside a simple polygon (ray casting on exact rationals;
// boundary points count as outside).
inline bool strictly_inside(const std::vector<bidim::Point>& ring, const Q2& p) {
  bool in = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    Q2 a = q2(ring[i]), b = q2(ring[(i + 1) % n]);
    if (orient(a, b, p) == 0 && between(a, b, p)) return false;
    if ((a.y > p.y) != (b.y > p.y)) {
      mpq_class x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x > p.x) in = !in;
    }
  }
  return in;
}

// Bodies that are disjoint or overlap with interior (no boundary-only
// contact) meet iff boundaries properly cross or one contains a vertex or
// the centroid of a vertex triple of the other.
inline bool bodies_meet(const bidim::SimplePolygon& a, const bidim::SimplePolygon& b) {
  const auto& ra = a.ring;
  const auto& rb = b.ring;
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t j = 0; j < rb.size(); ++j)
      if (segments_meet(q2(ra[i]), q2(ra[(i + 1) % ra.size()]), q2(rb[j]), q2(rb[(j + 1) % rb.size()]))) return true;
  for (const auto& p : ra)
    if (strictly_inside(rb, q2(p))) return true;
  for (const auto& p : rb)
    if (strictly_inside(ra, q2(p))) return true;
  return false;
}

// Pairwise intersection graphs, vertex i for object i.
inline Multigraph segment_graph(const bidim::Arrangement& arr) {
  Multigraph g = bidim::make_edgeless(static_cast<int>(arr.polysegments.size()));
  for (std::size_t i = 0; i < arr.polysegments.size(); ++i)
    for (std::size_t j = i + 1; j < arr.polysegments.size(); ++j)
      if (polysegments_meet(arr.polysegments[i], arr.polysegments[j])) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
  return g;
}

inline Multigraph body_graph(const std::vector<bidim::SimplePolygon>& bodies) {
  Multigraph g = bidim::make_edgeless(static_cast<int>(bodies.size()));
  for (std::size_t i = 0; i < bodies.size(); ++i)
    for (std::size_t j = i + 1; j < bodies.size(); ++j)
      if (bodies_meet(bodies[i], bodies[j])) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
  return g;
}

// Labelled simple edge set.
inline std::set<std::pair<VertexId, VertexId>> edge_pairs(const Multigraph& g) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (const Edge& e : g.edges())
    if (!e.is_loop()) out.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  return out;
}

}  // namespace oracle
