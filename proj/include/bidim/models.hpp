#pragma once

// Edge-mapping certificates for minors, contractions and c-contractions.
//
// A model maps every edge of G^ℓ (G plus one loop per vertex) to a vertex
// of the target, an edge of the target, or the star (discarded). Branch sets
// are read off the loops: vertex x of G belongs to the branch set of v when
// the loop on x maps to v.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bidim/graph.hpp"
#include "bidim/minor_oracle.hpp"
#include "bidim/validation.hpp"

namespace bidim {

enum class ImageKind : std::uint8_t { vertex, edge, star };

struct Image {
  ImageKind kind = ImageKind::star;
  int id = -1;

  static Image vertex(VertexId v) { return {ImageKind::vertex, v}; }
  static Image edge(EdgeId e) { return {ImageKind::edge, e}; }
  static Image star() { return {ImageKind::star, -1}; }

  bool is_vertex() const { return kind == ImageKind::vertex; }
  bool is_edge() const { return kind == ImageKind::edge; }
  bool is_star() const { return kind == ImageKind::star; }

  friend bool operator==(const Image&, const Image&) = default;
};

using EdgeMapping = std::map<EdgeId, Image>;

// φ: E(G^ℓ) -> V(H) ∪ E(H) ∪ {⋆} certifying H ≼ G.
struct MinorModel {
  LoopedGraph source;
  Multigraph target;
  EdgeMapping map;
};

// ψ: E(G^ℓ) -> V(H) ∪ E(H) certifying that H is a contraction of G.
struct ContractionModel {
  LoopedGraph source;
  Multigraph target;
  EdgeMapping map;
};

struct CContractionModel {
  ContractionModel base;
  int c = 0;
};

// ---------------------------------------------------------------------------
// Preimages and branch sets

struct Preimages {
  std::map<VertexId, std::vector<EdgeId>> of_vertex;
  std::map<EdgeId, std::vector<EdgeId>> of_edge;
  std::vector<EdgeId> star;
};

namespace detail {

inline Validation check_totality(const LoopedGraph& source, const Multigraph& target, const EdgeMapping& map) {
  const Multigraph& g = source.graph();
  for (const Edge& e : g.edges()) {
    auto it = map.find(e.id);
    if (it == map.end())
      return Validation::fail(Condition::totality, "edge " + std::to_string(e.id) + " has no image", {}, {e.id});
    const Image& im = it->second;
    if (im.is_vertex() && !target.has_vertex(im.id))
      return Validation::fail(Condition::totality, "image of edge " + std::to_string(e.id) + " is unknown vertex " + std::to_string(im.id), {}, {e.id});
    if (im.is_edge() && !target.has_edge(im.id))
      return Validation::fail(Condition::totality, "image of edge " + std::to_string(e.id) + " is unknown edge " + std::to_string(im.id), {}, {e.id});
  }
  for (const auto& [id, im] : map)
    if (!g.has_edge(id))
      return Validation::fail(Condition::totality, "mapping mentions unknown source edge " + std::to_string(id), {}, {id});
  return Validation::pass();
}

inline Preimages preimages(const LoopedGraph& source, const Multigraph& target, const EdgeMapping& map) {
  Preimages p;
  for (VertexId v : target.vertices()) p.of_vertex[v];
  for (const Edge& e : target.edges()) p.of_edge[e.id];
  for (const auto& [id, im] : map) {
    if (im.is_vertex()) p.of_vertex[im.id].push_back(id);
    else if (im.is_edge()) p.of_edge[im.id].push_back(id);
    else p.star.push_back(id);
  }
  (void)source;
  return p;
}

// Conditions 1-3 shared by minor and contraction models. On success `owner`
// holds, for every source vertex in some branch set, the target vertex.
inline Validation check_branch_conditions(const LoopedGraph& source, const Multigraph& target, const Preimages& pre,
                                          std::map<VertexId, VertexId>& owner) {
  const Multigraph& g = source.graph();
  for (VertexId v : target.vertices())
    if (pre.of_vertex.at(v).empty())
      return Validation::fail(Condition::solid, "preimage of vertex " + std::to_string(v) + " is empty", {v});
  // Sharing is reported before solidity: with loops mapped uniquely, two
  // solid preimages can never share a vertex.
  owner.clear();
  std::map<VertexId, EdgeId> witness_edge;
  for (VertexId v : target.vertices()) {
    for (EdgeId id : pre.of_vertex.at(v)) {
      const Edge& e = g.edge(id);
      for (VertexId x : {e.u, e.v}) {
        auto [it, fresh] = owner.emplace(x, v);
        if (!fresh && it->second != v)
          return Validation::fail(Condition::disjoint,
                                  "source vertex " + std::to_string(x) + " touched by preimages of target vertices " +
                                      std::to_string(it->second) + " and " + std::to_string(v),
                                  {x, it->second, v}, {witness_edge[x], id});
        witness_edge.emplace(x, id);
      }
    }
  }
  for (VertexId v : target.vertices()) {
    const auto& set = pre.of_vertex.at(v);
    if (!is_solid(source, set))
      return Validation::fail(Condition::solid, "preimage of vertex " + std::to_string(v) + " is not solid", {v}, set);
  }
  for (const Edge& te : target.edges()) {
    for (EdgeId id : pre.of_edge.at(te.id)) {
      const Edge& e = g.edge(id);
      if (e.is_loop())
        return Validation::fail(Condition::edge_endpoints, "loop " + std::to_string(id) + " maps to target edge " + std::to_string(te.id), {}, {id, te.id});
      auto ou = owner.find(e.u), ov = owner.find(e.v);
      bool ok = ou != owner.end() && ov != owner.end() &&
                ((ou->second == te.u && ov->second == te.v) || (ou->second == te.v && ov->second == te.u));
      if (!ok)
        return Validation::fail(Condition::edge_endpoints,
                                "edge " + std::to_string(id) + " does not join the branch sets of target edge " + std::to_string(te.id),
                                {e.u, e.v}, {id, te.id});
    }
  }
  return Validation::pass();
}

}  // namespace detail

inline Preimages preimages(const MinorModel& m) { return detail::preimages(m.source, m.target, m.map); }
inline Preimages preimages(const ContractionModel& m) { return detail::preimages(m.source, m.target, m.map); }

// Source vertices whose loop maps to each target vertex.
template <typename Model>
std::map<VertexId, std::vector<VertexId>> branch_sets(const Model& m) {
  std::map<VertexId, std::vector<VertexId>> out;
  for (VertexId v : m.target.vertices()) out[v];
  for (VertexId x : m.source.base().vertices()) {
    const Image& im = m.map.at(m.source.loop_of(x));
    if (im.is_vertex()) out[im.id].push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

inline Validation validate_minor_model(const MinorModel& m) {
  if (auto v = detail::check_totality(m.source, m.target, m.map); !v) return v;
  Preimages pre = preimages(m);
  std::map<VertexId, VertexId> owner;
  if (auto v = detail::check_branch_conditions(m.source, m.target, pre, owner); !v) return v;
  for (const Edge& te : m.target.edges()) {
    const auto& set = pre.of_edge.at(te.id);
    if (set.size() != 1)
      return Validation::fail(Condition::unique_edge,
                              "target edge " + std::to_string(te.id) + " has " + std::to_string(set.size()) + " preimages",
                              {}, set);
  }
  return Validation::pass();
}

inline Validation validate_contraction_model(const ContractionModel& m) {
  if (auto v = detail::check_totality(m.source, m.target, m.map); !v) return v;
  Preimages pre = preimages(m);
  if (!pre.star.empty())
    return Validation::fail(Condition::no_star, "edge " + std::to_string(pre.star.front()) + " maps to the star", {}, pre.star);
  std::map<VertexId, VertexId> owner;
  if (auto v = detail::check_branch_conditions(m.source, m.target, pre, owner); !v) return v;
  for (const Edge& te : m.target.edges())
    if (pre.of_edge.at(te.id).empty())
      return Validation::fail(Condition::edge_coverage, "target edge " + std::to_string(te.id) + " has no preimage", {}, {te.id});
  return Validation::pass();
}

// Largest number of non-loop source edges mapped to one target vertex.
inline int contraction_parameter(const ContractionModel& m) {
  std::map<VertexId, int> count;
  for (const auto& [id, im] : m.map)
    if (im.is_vertex() && !m.source.graph().edge(id).is_loop()) ++count[im.id];
  int c = 0;
  for (const auto& [v, n] : count) c = std::max(c, n);
  return c;
}

inline Validation validate_c_contraction(const ContractionModel& m, int c) {
  if (auto v = validate_contraction_model(m); !v) return v;
  std::map<VertexId, std::vector<EdgeId>> parts;
  for (const auto& [id, im] : m.map)
    if (im.is_vertex() && !m.source.graph().edge(id).is_loop()) parts[im.id].push_back(id);
  for (const auto& [v, edges] : parts)
    if (static_cast<int>(edges.size()) > c)
      return Validation::fail(Condition::part_size,
                              "part of vertex " + std::to_string(v) + " has " + std::to_string(edges.size()) + " edges > c=" + std::to_string(c),
                              {v}, edges);
  return Validation::pass();
}

inline Validation validate_c_contraction(const CContractionModel& m) { return validate_c_contraction(m.base, m.c); }

namespace detail {
inline GraphElement as_element(const Image& im) {
  if (im.is_vertex()) return VertexRef{im.id};
  return EdgeRef{im.id};
}
}  // namespace detail

// Condition 5: dist_H(φ(e1), φ(e2)) <= dist_G(e1, e2) for all non-star edges of G.
inline Validation validate_distance_minor(const MinorModel& m) {
  if (auto v = validate_minor_model(m); !v)
    throw PreconditionError("validate_distance_minor: not a valid minor model (" + v.message() + ")");
  const Multigraph& g = m.source.base();
  std::vector<EdgeId> live;
  std::vector<GraphElement> image;
  for (const Edge& e : g.edges()) {
    const Image& im = m.map.at(e.id);
    if (im.is_star()) continue;
    live.push_back(e.id);
    image.push_back(detail::as_element(im));
  }
  DistanceTable dg(g);
  DistanceTable dh(m.target);
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (std::size_t j = i; j < live.size(); ++j) {
      int d_h = dh.between(image[i], image[j]);
      int d_g = dg.between(EdgeRef{live[i]}, EdgeRef{live[j]});
      if (d_h > d_g)
        return Validation::fail(Condition::distance,
                                "dist_H = " + (d_h == kInfinite ? std::string("inf") : std::to_string(d_h)) + " exceeds dist_G = " +
                                    std::to_string(d_g) + " for edges " + std::to_string(live[i]) + ", " + std::to_string(live[j]),
                                {}, {live[i], live[j]});
    }
  }
  return Validation::pass();
}

// ---------------------------------------------------------------------------
// Constructors

// Each loop to its own vertex, each edge to itself.
inline MinorModel identity_model(const Multigraph& g) {
  MinorModel m{with_loops(g), g, {}};
  for (VertexId v : g.vertices()) m.map[m.source.loop_of(v)] = Image::vertex(v);
  for (const Edge& e : g.edges()) m.map[e.id] = Image::edge(e.id);
  return m;
}

// Contraction model for contracting the edge set `f` of a simple graph g.
// With keep_parallel the target is the multigraph quotient G/F, otherwise the
// simple contraction (dropped parallels map onto their surviving sibling).
inline CContractionModel contraction_model(const Multigraph& g, std::span<const EdgeId> f, bool keep_parallel) {
  Contraction q = keep_parallel ? quotient(g, f) : contract_edge_set(g, f);
  ContractionModel m{with_loops(g), q.graph, {}};
  std::map<std::pair<VertexId, VertexId>, EdgeId> surviving;
  for (const Edge& e : q.graph.edges()) surviving.emplace(e.ends(), e.id);
  for (VertexId v : g.vertices()) m.map[m.source.loop_of(v)] = Image::vertex(q.vertex_map.at(v));
  for (const Edge& e : g.edges()) {
    VertexId a = q.vertex_map.at(e.u), b = q.vertex_map.at(e.v);
    if (a == b) m.map[e.id] = Image::vertex(a);
    else if (q.graph.has_edge(e.id)) m.map[e.id] = Image::edge(e.id);
    else m.map[e.id] = Image::edge(surviving.at(a < b ? std::pair{a, b} : std::pair{b, a}));
  }
  CContractionModel out{std::move(m), 0};
  out.c = contraction_parameter(out.base);
  return out;
}

// Build φ from a branch-set witness: a BFS spanning tree of every branch set
// plus its loops map to the H vertex, branch edges to their H edge, the rest
// to the star.
inline MinorModel model_from_witness(const Multigraph& h, const Multigraph& g, const MinorWitness& w) {
  if (!g.is_simple()) throw InvalidInput("model_from_witness: host graph must be simple");
  MinorModel m{with_loops(g), h, {}};
  for (const Edge& e : m.source.graph().edges()) m.map[e.id] = Image::star();
  std::map<VertexId, VertexId> owner;
  for (VertexId x : h.vertices()) {
    auto it = w.branch_sets.find(x);
    if (it == w.branch_sets.end() || it->second.empty())
      throw InvalidInput("model_from_witness: empty branch set for vertex " + std::to_string(x));
    for (VertexId v : it->second) {
      if (!g.has_vertex(v)) throw InvalidInput("model_from_witness: unknown host vertex " + std::to_string(v));
      if (!owner.emplace(v, x).second) throw InvalidInput("model_from_witness: branch sets overlap at " + std::to_string(v));
    }
  }
  for (VertexId x : h.vertices()) {
    const auto& set = w.branch_sets.at(x);
    std::set<VertexId> members(set.begin(), set.end());
    std::set<VertexId> reached{set.front()};
    std::vector<VertexId> queue{set.front()};
    m.map[m.source.loop_of(set.front())] = Image::vertex(x);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::vector<EdgeId> inc(g.incident(queue[i]).begin(), g.incident(queue[i]).end());
      std::sort(inc.begin(), inc.end());
      for (EdgeId id : inc) {
        VertexId y = g.edge(id).other(queue[i]);
        if (!members.contains(y) || reached.contains(y)) continue;
        reached.insert(y);
        queue.push_back(y);
        m.map[id] = Image::vertex(x);
        m.map[m.source.loop_of(y)] = Image::vertex(x);
      }
    }
    if (reached.size() != members.size())
      throw InvalidInput("model_from_witness: branch set of vertex " + std::to_string(x) + " is disconnected");
  }
  std::set<EdgeId> used;
  for (const Edge& he : h.edges()) {
    auto it = w.branch_edges.find(he.id);
    if (it == w.branch_edges.end()) throw InvalidInput("model_from_witness: no branch edge for H edge " + std::to_string(he.id));
    EdgeId ge = it->second;
    if (!g.has_edge(ge)) throw InvalidInput("model_from_witness: unknown branch edge " + std::to_string(ge));
    const Edge& e = g.edge(ge);
    auto ou = owner.find(e.u), ov = owner.find(e.v);
    bool ok = ou != owner.end() && ov != owner.end() &&
              ((ou->second == he.u && ov->second == he.v) || (ou->second == he.v && ov->second == he.u));
    if (!ok || !used.insert(ge).second)
      throw InvalidInput("model_from_witness: branch edge " + std::to_string(ge) + " does not realise H edge " + std::to_string(he.id));
    m.map[ge] = Image::edge(he.id);
  }
  if (auto v = validate_minor_model(m); !v) throw InvalidInput("model_from_witness: " + v.message());
  return m;
}

inline MinorWitness witness_from_model(const MinorModel& m) {
  if (auto v = validate_minor_model(m); !v) throw InvalidInput("witness_from_model: " + v.message());
  MinorWitness w;
  w.branch_sets = branch_sets(m);
  Preimages pre = preimages(m);
  for (const auto& [he, set] : pre.of_edge) w.branch_edges[he] = set.front();
  return w;
}

// Search for a φ-model of H in G directly: label every vertex of G with a
// vertex of H or the star through its loop, then complete φ canonically and
// run the full condition check.
inline std::optional<MinorModel> find_minor_model(const Multigraph& h, const Multigraph& g, int cap = 10) {
  if (static_cast<int>(g.num_vertices()) > cap)
    throw CapExceeded("find_minor_model", static_cast<long>(g.num_vertices()), cap);
  if (!g.is_simple()) throw InvalidInput("find_minor_model: host graph must be simple");
  const Multigraph hs = simplify(h);
  const detail::MaskGraph gm = detail::to_masks(g);
  const int n = gm.n();
  const int m = static_cast<int>(hs.num_vertices());
  if (m > n) return std::nullopt;
  std::vector<std::pair<int, int>> hedges;
  for (const Edge& e : hs.edges()) hedges.emplace_back(static_cast<int>(hs.index_of(e.u)), static_cast<int>(hs.index_of(e.v)));

  std::vector<std::uint32_t> cls(m, 0);
  std::vector<int> label(n, -1);
  std::optional<MinorModel> result;

  auto complete = [&]() -> std::optional<MinorModel> {
    for (int x = 0; x < m; ++x)
      if (!detail::mask_connected(gm.adj, cls[x])) return std::nullopt;
    for (auto [a, b] : hedges) {
      std::uint32_t nb = 0;
      for (std::uint32_t f = cls[a]; f; f &= f - 1) nb |= gm.adj[std::countr_zero(f)];
      if (!(nb & cls[b])) return std::nullopt;
    }
    MinorModel model{with_loops(g), hs, {}};
    for (const Edge& e : model.source.graph().edges()) model.map[e.id] = Image::star();
    for (int i = 0; i < n; ++i)
      if (label[i] >= 0) model.map[model.source.loop_of(gm.ids[i])] = Image::vertex(hs.vertices()[label[i]]);
    for (const Edge& e : g.edges()) {
      int a = label[g.index_of(e.u)], b = label[g.index_of(e.v)];
      if (a >= 0 && a == b) model.map[e.id] = Image::vertex(hs.vertices()[a]);
    }
    for (const Edge& he : hs.edges()) {
      int a = static_cast<int>(hs.index_of(he.u)), b = static_cast<int>(hs.index_of(he.v));
      EdgeId best = -1;
      for (const Edge& e : g.edges()) {
        int la = label[g.index_of(e.u)], lb = label[g.index_of(e.v)];
        if (((la == a && lb == b) || (la == b && lb == a)) && (best < 0 || e.id < best)) best = e.id;
      }
      model.map[best] = Image::edge(he.id);
    }
    if (!validate_minor_model(model)) return std::nullopt;
    return model;
  };

  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (result) return;
    const int unused = m - std::popcount(static_cast<std::uint32_t>(used));
    if (unused > n - pos) return;
    if (pos == n) {
      result = complete();
      return;
    }
    for (int x = -1; x < m && !result; ++x) {
      label[pos] = x;
      if (x >= 0) cls[x] |= 1u << pos;
      rec(pos + 1, x >= 0 ? used | (1 << x) : used);
      if (x >= 0) cls[x] &= ~(1u << pos);
    }
    label[pos] = -1;
  };
  if (m == 0) {
    MinorModel model{with_loops(g), hs, {}};
    for (const Edge& e : model.source.graph().edges()) model.map[e.id] = Image::star();
    return model;
  }
  rec(0, 0);
  return result;
}

// ---------------------------------------------------------------------------
// Composition of a contraction A -> B with a minor A -> C into a minor B -> C

class CompositionError : public Error {
 public:
  CompositionError(EdgeId c_edge, const std::string& what) : Error(what), c_edge_(c_edge) {}
  EdgeId offending_edge() const { return c_edge_; }

 private:
  EdgeId c_edge_;
};

// Requires |ψ2^{-1}(e) ∩ ψ1^{-1}(E(B))| = 1 for every edge e of C. The edge
// in that intersection is carried to B by ψ1 and labelled e; every B-element
// reached from a branch set of ψ2 is labelled with its C vertex.
inline MinorModel compose_models(const ContractionModel& psi1, const MinorModel& psi2) {
  if (auto v = validate_contraction_model(psi1); !v) throw PreconditionError("compose_models: psi1 invalid (" + v.message() + ")");
  if (auto v = validate_minor_model(psi2); !v) throw PreconditionError("compose_models: psi2 invalid (" + v.message() + ")");
  if (!(psi1.source == psi2.source)) throw PreconditionError("compose_models: models have different sources");
  if (!psi1.target.is_simple()) throw PreconditionError("compose_models: contraction target must be simple");

  const Multigraph& b = psi1.target;
  const Multigraph& c = psi2.target;
  MinorModel phi{with_loops(b), c, {}};
  std::map<EdgeId, Image> assigned;
  auto assign = [&](EdgeId be, Image im) {
    auto [it, fresh] = assigned.emplace(be, im);
    if (!fresh && !(it->second == im))
      throw CertificateError("compose_models: element " + std::to_string(be) + " of B claimed twice");
  };
  Preimages pre2 = preimages(psi2);
  for (const Edge& ce : c.edges()) {
    std::vector<EdgeId> hits;
    for (EdgeId a : pre2.of_edge.at(ce.id))
      if (psi1.map.at(a).is_edge()) hits.push_back(a);
    if (hits.size() != 1)
      throw CompositionError(ce.id, "compose_models: C edge " + std::to_string(ce.id) + " has " + std::to_string(hits.size()) +
                                        " preimages contracted onto B edges (need exactly 1)");
    assign(psi1.map.at(hits.front()).id, Image::edge(ce.id));
  }
  for (VertexId cv : c.vertices()) {
    for (EdgeId a : pre2.of_vertex.at(cv)) {
      const Image& im = psi1.map.at(a);
      if (im.is_vertex()) assign(phi.source.loop_of(im.id), Image::vertex(cv));
      else assign(im.id, Image::vertex(cv));
    }
  }
  for (const Edge& e : phi.source.graph().edges()) {
    auto it = assigned.find(e.id);
    phi.map[e.id] = it == assigned.end() ? Image::star() : it->second;
  }
  if (auto v = validate_minor_model(phi); !v) throw CertificateError("compose_models: composed model invalid (" + v.message() + ")");
  return phi;
}

// ---------------------------------------------------------------------------
// Threading a path through a chain of connected parts

struct ThreadedPath {
  std::vector<VertexId> vertices;   // s = vertices.front(), t = vertices.back()
  std::vector<EdgeId> edges;        // edges[i] joins vertices[i], vertices[i+1]
  std::vector<std::size_t> connector_positions;  // index in `edges` of e_1..e_{r-1}
  std::size_t part_begin = 0;       // marked part = edges[part_begin, part_end)
  std::size_t part_end = 0;

  std::size_t part_length() const { return part_end - part_begin; }
};

// Path s -> t of the form P_1 e_1 P_2 ... e_{r-1} P_r, P_i a shortest path
// inside g[V_i]. The marked part is e_{α-1} P_α ... P_β e_β (1-based part
// indices, α = β allowed); it has length >= β - α + 2 whenever 2 <= α and
// β <= r - 1, and
// avoids every edge inside V_i for i < α or i > β.
// `connectors`, when given, fixes e_i; otherwise the smallest-id edge
// between V_i and V_{i+1} is taken.
inline ThreadedPath threaded_path(const Multigraph& g, const std::vector<std::vector<VertexId>>& parts, VertexId s, VertexId t,
                                  int alpha, int beta, const std::vector<EdgeId>& connectors = {}) {
  const int r = static_cast<int>(parts.size());
  if (!(1 <= alpha && alpha <= beta && beta <= r)) throw PreconditionError("threaded_path: need 1 <= alpha <= beta <= r");
  std::map<VertexId, int> part_of;
  for (int i = 0; i < r; ++i) {
    if (parts[i].empty()) throw InvalidInput("threaded_path: part " + std::to_string(i + 1) + " is empty");
    for (VertexId v : parts[i])
      if (!part_of.emplace(v, i).second) throw InvalidInput("threaded_path: parts overlap at vertex " + std::to_string(v));
    if (!is_connected_set(g, parts[i])) throw InvalidInput("threaded_path: part " + std::to_string(i + 1) + " is disconnected");
  }
  if (!part_of.contains(s) || part_of[s] != 0) throw InvalidInput("threaded_path: s not in the first part");
  if (!part_of.contains(t) || part_of[t] != r - 1) throw InvalidInput("threaded_path: t not in the last part");
  if (!connectors.empty() && static_cast<int>(connectors.size()) != r - 1)
    throw InvalidInput("threaded_path: need exactly r-1 connectors");

  std::vector<EdgeId> link(r - 1, -1);
  std::vector<std::pair<VertexId, VertexId>> ends(r - 1);  // (t_i, s_{i+1})
  for (int i = 0; i + 1 < r; ++i) {
    if (!connectors.empty()) {
      const Edge& e = g.edge(connectors[i]);
      auto pu = part_of.find(e.u), pv = part_of.find(e.v);
      if (pu != part_of.end() && pv != part_of.end() && pu->second == i && pv->second == i + 1) ends[i] = {e.u, e.v};
      else if (pu != part_of.end() && pv != part_of.end() && pv->second == i && pu->second == i + 1) ends[i] = {e.v, e.u};
      else throw InvalidInput("threaded_path: connector " + std::to_string(connectors[i]) + " does not join parts " + std::to_string(i + 1) + ", " + std::to_string(i + 2));
      link[i] = e.id;
      continue;
    }
    for (const Edge& e : g.edges()) {
      auto pu = part_of.find(e.u), pv = part_of.find(e.v);
      if (pu == part_of.end() || pv == part_of.end()) continue;
      std::pair<VertexId, VertexId> oriented;
      if (pu->second == i && pv->second == i + 1) oriented = {e.u, e.v};
      else if (pv->second == i && pu->second == i + 1) oriented = {e.v, e.u};
      else continue;
      if (link[i] < 0 || e.id < link[i]) {
        link[i] = e.id;
        ends[i] = oriented;
      }
    }
    if (link[i] < 0) throw InvalidInput("threaded_path: no edge between parts " + std::to_string(i + 1) + " and " + std::to_string(i + 2));
  }

  // Shortest path inside one part, smallest-id edges first.
  auto inner_path = [&](int i, VertexId from, VertexId to, ThreadedPath& out) {
    std::map<VertexId, std::pair<VertexId, EdgeId>> parent;
    parent[from] = {from, -1};
    std::vector<VertexId> queue{from};
    for (std::size_t q = 0; q < queue.size() && !parent.contains(to); ++q) {
      std::vector<EdgeId> inc(g.incident(queue[q]).begin(), g.incident(queue[q]).end());
      std::sort(inc.begin(), inc.end());
      for (EdgeId id : inc) {
        VertexId y = g.edge(id).other(queue[q]);
        auto py = part_of.find(y);
        if (py == part_of.end() || py->second != i || parent.contains(y)) continue;
        parent[y] = {queue[q], id};
        queue.push_back(y);
      }
    }
    std::vector<std::pair<VertexId, EdgeId>> back;
    for (VertexId x = to; x != from; x = parent.at(x).first) back.emplace_back(x, parent.at(x).second);
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
      out.edges.push_back(it->second);
      out.vertices.push_back(it->first);
    }
  };

  ThreadedPath out;
  out.vertices.push_back(s);
  std::vector<std::size_t> part_start(r), part_stop(r);
  for (int i = 0; i < r; ++i) {
    VertexId from = i == 0 ? s : ends[i - 1].second;
    VertexId to = i == r - 1 ? t : ends[i].first;
    part_start[i] = out.edges.size();
    inner_path(i, from, to, out);
    part_stop[i] = out.edges.size();
    if (i + 1 < r) {
      out.connector_positions.push_back(out.edges.size());
      out.edges.push_back(link[i]);
      out.vertices.push_back(ends[i].second);
    }
  }
  // e_{α-1} precedes part α; e_β follows part β.
  out.part_begin = alpha >= 2 ? out.connector_positions[alpha - 2] : part_start[alpha - 1];
  out.part_end = beta <= r - 1 ? out.connector_positions[beta - 1] + 1 : part_stop[beta - 1];
  return out;
}

// ---------------------------------------------------------------------------
// Contraction-edit distance witnesses

// True iff m1 and m2 are valid contraction models out of `a` whose parts
// have at most c edges each: a certificate for cdist(G1, G2) <= c.
inline bool cdist_witness_check(const Multigraph& a, const ContractionModel& m1, const ContractionModel& m2, int c) {
  if (c < 0) return false;
  if (!a.is_simple()) return false;
  for (const ContractionModel* m : {&m1, &m2}) {
    if (!(m->source.base() == a)) return false;
    if (!validate_c_contraction(*m, c)) return false;
  }
  return true;
}

inline bool cdist_witness_check(const Multigraph& a, const CContractionModel& m1, const CContractionModel& m2, int c) {
  return m1.c <= c && m2.c <= c && cdist_witness_check(a, m1.base, m2.base, c);
}

}  // namespace bidim
