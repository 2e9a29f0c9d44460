#pragma once

// Exhaustive minor testing for small host graphs. Used as ground truth by
// the certificate machinery and the test suites.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "bidim/graph.hpp"

namespace bidim {

// A minor model in branch-set form: disjoint connected vertex sets of G,
// one per vertex of H, and one G-edge realising each edge of H.
struct MinorWitness {
  std::map<VertexId, std::vector<VertexId>> branch_sets;  // H vertex -> G vertices
  std::map<EdgeId, EdgeId> branch_edges;                  // H edge -> G edge
};

namespace detail {

struct MaskGraph {
  std::vector<VertexId> ids;
  std::vector<std::uint32_t> adj;
  int n() const { return static_cast<int>(ids.size()); }
};

inline MaskGraph to_masks(const Multigraph& g) {
  if (g.num_vertices() > 30) throw CapExceeded("mask graph", static_cast<long>(g.num_vertices()), 30);
  MaskGraph m;
  m.ids = g.vertices();
  m.adj.assign(m.ids.size(), 0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    auto a = g.index_of(e.u), b = g.index_of(e.v);
    m.adj[a] |= 1u << b;
    m.adj[b] |= 1u << a;
  }
  return m;
}

inline bool mask_connected(const std::vector<std::uint32_t>& adj, std::uint32_t set) {
  if (set == 0) return true;
  std::uint32_t seen = set & (~set + 1);
  std::uint32_t frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    next &= set & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == set;
}

// Bijective embedding of pattern (m vertices) into a quotient on m blocks:
// every pattern edge must land on a quotient edge.
inline bool embed_spanning(const std::vector<std::uint32_t>& hadj, const std::vector<std::uint32_t>& qadj,
                           std::vector<int>& assign) {
  const int m = static_cast<int>(hadj.size());
  std::vector<int> order;
  std::vector<char> placed(m, 0);
  // BFS order from highest-degree vertex of each component keeps neighbours early.
  while (static_cast<int>(order.size()) < m) {
    int start = -1;
    for (int v = 0; v < m; ++v)
      if (!placed[v] && (start < 0 || std::popcount(hadj[v]) > std::popcount(hadj[start]))) start = v;
    std::vector<int> queue{start};
    placed[start] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      order.push_back(v);
      for (std::uint32_t f = hadj[v]; f; f &= f - 1) {
        int w = std::countr_zero(f);
        if (!placed[w]) {
          placed[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  std::vector<int> hdeg(m), qdeg(m);
  for (int i = 0; i < m; ++i) {
    hdeg[i] = std::popcount(hadj[i]);
    qdeg[i] = std::popcount(qadj[i]);
  }
  assign.assign(m, -1);
  std::uint32_t used = 0;
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == m) return true;
    int hv = order[pos];
    for (int b = 0; b < m; ++b) {
      if (used & (1u << b) || qdeg[b] < hdeg[hv]) continue;
      bool ok = true;
      for (std::uint32_t f = hadj[hv]; f && ok; f &= f - 1) {
        int w = std::countr_zero(f);
        if (assign[w] >= 0 && !(qadj[b] & (1u << assign[w]))) ok = false;
      }
      if (!ok) continue;
      assign[hv] = b;
      used |= 1u << b;
      if (rec(pos + 1)) return true;
      assign[hv] = -1;
      used &= ~(1u << b);
    }
    return false;
  };
  return rec(0);
}

}  // namespace detail

// Decide H ≼ G by enumerating partitions of (unions of components of) G into
// |V(H)| connected blocks and testing whether H embeds into the quotient.
// Unused vertices of a used component can always be absorbed into an
// adjacent branch set, so only whole components are ever deleted.
inline std::optional<MinorWitness> is_minor_brute(const Multigraph& h, const Multigraph& g, int cap = 10) {
  if (static_cast<int>(g.num_vertices()) > cap)
    throw CapExceeded("is_minor_brute", static_cast<long>(g.num_vertices()), cap);
  const Multigraph hs = simplify(h);
  const int m = static_cast<int>(hs.num_vertices());
  if (m == 0) return MinorWitness{};
  const detail::MaskGraph gm = detail::to_masks(g);
  const int n = gm.n();
  if (m > n) return std::nullopt;
  const detail::MaskGraph hm = detail::to_masks(hs);
  const int hedges = static_cast<int>(hs.num_edges());

  std::vector<std::uint32_t> comps;
  for (const auto& c : connected_components(g)) {
    std::uint32_t mask = 0;
    for (VertexId v : c) mask |= 1u << g.index_of(v);
    comps.push_back(mask);
  }
  std::vector<int> comp_of(n);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::uint32_t f = comps[c]; f; f &= f - 1) comp_of[std::countr_zero(f)] = static_cast<int>(c);

  std::vector<std::uint32_t> blocks(m);
  std::vector<int> block_comp(m);
  std::vector<int> assign;
  std::vector<int> verts;
  std::vector<std::uint32_t> found_blocks;
  bool found = false;

  std::function<void(std::size_t, int)> partition = [&](std::size_t pos, int opened) {
    if (found) return;
    const int remaining = static_cast<int>(verts.size() - pos);
    if (opened + remaining < m) return;
    if (pos == verts.size()) {
      for (int b = 0; b < m; ++b)
        if (!detail::mask_connected(gm.adj, blocks[b])) return;
      std::vector<std::uint32_t> qadj(m, 0);
      int qedges = 0;
      for (int a = 0; a < m; ++a) {
        std::uint32_t nb = 0;
        for (std::uint32_t f = blocks[a]; f; f &= f - 1) nb |= gm.adj[std::countr_zero(f)];
        for (int b = 0; b < m; ++b)
          if (b != a && (nb & blocks[b])) qadj[a] |= 1u << b;
        qedges += std::popcount(qadj[a]);
      }
      if (qedges / 2 < hedges) return;
      if (detail::embed_spanning(hm.adj, qadj, assign)) {
        found = true;
        found_blocks = blocks;  // the recursion clears `blocks` on the way out
      }
      return;
    }
    const int v = verts[pos];
    for (int b = 0; b < opened && !found; ++b) {
      if (block_comp[b] != comp_of[v]) continue;
      blocks[b] |= 1u << v;
      partition(pos + 1, opened);
      blocks[b] &= ~(1u << v);
    }
    if (opened < m && !found) {
      blocks[opened] = 1u << v;
      block_comp[opened] = comp_of[v];
      partition(pos + 1, opened + 1);
      blocks[opened] = 0;
    }
  };

  const std::size_t nc = comps.size();
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << nc) && !found; ++subset) {
    std::uint32_t u = 0;
    for (std::size_t c = 0; c < nc; ++c)
      if (subset >> c & 1) u |= comps[c];
    if (std::popcount(u) < m) continue;
    int inner_edges = 0;
    for (std::uint32_t f = u; f; f &= f - 1) inner_edges += std::popcount(gm.adj[std::countr_zero(f)] & u);
    if (inner_edges / 2 < hedges) continue;
    verts.clear();
    for (std::uint32_t f = u; f; f &= f - 1) verts.push_back(std::countr_zero(f));
    std::fill(blocks.begin(), blocks.end(), 0u);
    partition(0, 0);
  }
  if (!found) return std::nullopt;

  MinorWitness w;
  for (int hv = 0; hv < m; ++hv) {
    auto& set = w.branch_sets[hm.ids[hv]];
    for (std::uint32_t f = found_blocks[assign[hv]]; f; f &= f - 1) set.push_back(gm.ids[std::countr_zero(f)]);
    std::sort(set.begin(), set.end());
  }
  std::map<VertexId, VertexId> owner;
  for (const auto& [hv, set] : w.branch_sets)
    for (VertexId v : set) owner[v] = hv;
  for (const Edge& he : hs.edges()) {
    EdgeId best = -1;
    for (const Edge& ge : g.edges()) {
      if (ge.is_loop() || !owner.contains(ge.u) || !owner.contains(ge.v)) continue;
      VertexId a = owner[ge.u], b = owner[ge.v];
      if (((a == he.u && b == he.v) || (a == he.v && b == he.u)) && (best < 0 || ge.id < best)) best = ge.id;
    }
    w.branch_edges[he.id] = best;
  }
  return w;
}

// Non-induced subgraph embedding of `pattern` into `target` (both simple),
// depth-first with a node budget. Returns pattern-index -> target-index.
// Hitting the budget yields nullopt, so callers only ever get sound answers.
inline std::optional<std::vector<int>> find_subgraph_embedding(const Multigraph& pattern, const Multigraph& target,
                                                               long budget = 2'000'000) {
  const int pn = static_cast<int>(pattern.num_vertices());
  const int tn = static_cast<int>(target.num_vertices());
  if (pn == 0) return std::vector<int>{};
  if (pn > tn) return std::nullopt;
  std::vector<std::vector<int>> padj(pn), tadj(tn);
  for (const Edge& e : pattern.edges()) {
    if (e.is_loop()) continue;
    int a = static_cast<int>(pattern.index_of(e.u)), b = static_cast<int>(pattern.index_of(e.v));
    padj[a].push_back(b);
    padj[b].push_back(a);
  }
  std::vector<char> tmat(static_cast<std::size_t>(tn) * tn, 0);
  for (const Edge& e : target.edges()) {
    if (e.is_loop()) continue;
    int a = static_cast<int>(target.index_of(e.u)), b = static_cast<int>(target.index_of(e.v));
    if (!tmat[a * tn + b]) {
      tmat[a * tn + b] = tmat[b * tn + a] = 1;
      tadj[a].push_back(b);
      tadj[b].push_back(a);
    }
  }
  for (auto& l : padj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  std::vector<int> order;
  std::vector<int> anchor(pn, -1);
  std::vector<char> seen(pn, 0);
  while (static_cast<int>(order.size()) < pn) {
    int start = -1;
    for (int v = 0; v < pn; ++v)
      if (!seen[v] && (start < 0 || padj[v].size() > padj[start].size())) start = v;
    std::vector<int> q{start};
    seen[start] = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
      order.push_back(q[i]);
      for (int w : padj[q[i]])
        if (!seen[w]) {
          seen[w] = 1;
          anchor[w] = q[i];
          q.push_back(w);
        }
    }
  }
  std::vector<int> map(pn, -1);
  std::vector<char> used(tn, 0);
  long nodes = 0;
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == pn) return true;
    if (++nodes > budget) return false;
    const int pv = order[pos];
    auto try_candidate = [&](int tv) -> bool {
      if (used[tv] || tadj[tv].size() < padj[pv].size()) return false;
      for (int w : padj[pv])
        if (map[w] >= 0 && !tmat[tv * tn + map[w]]) return false;
      map[pv] = tv;
      used[tv] = 1;
      if (rec(pos + 1)) return true;
      map[pv] = -1;
      used[tv] = 0;
      return false;
    };
    if (anchor[pv] >= 0) {
      for (int tv : tadj[map[anchor[pv]]])
        if (try_candidate(tv)) return true;
    } else {
      for (int tv = 0; tv < tn; ++tv)
        if (try_candidate(tv)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map;
}

}  // namespace bidim
