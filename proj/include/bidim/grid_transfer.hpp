#pragma once

// Carrying a grid distance minor of G over to a c-contraction H of G.
//
// Grid points of L_k at coordinates α(i) = (i-1)·step + 1 become the
// vertices of L_{k'}; consecutive points are joined by paths threaded
// through the branch sets of φ, cut in the middle region U at an edge that
// survives the contraction. The resulting model τ of L_{k'} in G is then
// composed with σ.

#include <map>
#include <set>
#include <vector>

#include "bidim/grid.hpp"
#include "bidim/models.hpp"

namespace bidim {

struct TransferParameters {
  int c = 0;
  int step = 2;    // distance between consecutive chosen grid lines
  int margin = 1;  // U starts `margin` past a chosen line and ends `margin` before the next
  int k_prime = 1;
};

// With odd_variant and odd c the spacing is 2c, giving ⌊(k-1)/(2c)⌋+1;
// otherwise 2(c+1), giving ⌊(k-1)/(2(c+1))⌋+1.
inline TransferParameters transfer_parameters(int k, int c, bool odd_variant = false) {
  if (k < 1 || c < 0) throw PreconditionError("transfer_parameters: need k >= 1, c >= 0");
  TransferParameters p;
  p.c = c;
  const bool odd = c % 2 == 1;
  p.step = (odd_variant && odd) ? 2 * c : 2 * (c + 1);
  const int c_odd = odd ? c : c + 1;
  p.margin = (c_odd + 1) / 2;
  p.k_prime = (k - 1) / p.step + 1;
  return p;
}

struct GridTransferResult {
  TransferParameters params;
  MinorModel model;                // L_{k'} in H
  MinorModel tau;                  // L_{k'} in G
  std::vector<EdgeId> connectors;  // E*: the chosen e^hor / e^ver edges of G
  // Per connector, the L_k vertices of its region U.
  std::vector<std::vector<VertexId>> regions;
};

namespace detail {

struct HalfPaths {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

}  // namespace detail

inline GridTransferResult grid_transfer(const CContractionModel& sigma, const MinorModel& phi, bool odd_variant = false) {
  if (auto v = validate_c_contraction(sigma); !v) throw PreconditionError("grid_transfer: sigma invalid (" + v.message() + ")");
  if (auto v = validate_distance_minor(phi); !v) throw PreconditionError("grid_transfer: phi is not a distance minor (" + v.message() + ")");
  if (!(sigma.base.source == phi.source)) throw PreconditionError("grid_transfer: models have different sources");
  const int k = grid_side(phi.target);
  if (k == 0) throw PreconditionError("grid_transfer: phi target is not a canonical grid");
  if (!sigma.base.target.is_simple()) throw PreconditionError("grid_transfer: contraction target must be simple");

  GridTransferResult out;
  out.params = transfer_parameters(k, sigma.c, odd_variant);
  const TransferParameters& p = out.params;
  const int kp = p.k_prime;
  const GridGraph big = make_grid(k);
  const GridGraph small = make_grid(kp);
  const LoopedGraph& gl = phi.source;
  const Multigraph& g = gl.base();
  auto alpha = [&](int i) { return (i - 1) * p.step + 1; };

  auto branches = branch_sets(phi);
  for (auto& [v, set] : branches) std::sort(set.begin(), set.end());
  Preimages pre = preimages(phi);

  // Only edges that φ sends to a grid element: paths inside a branch set
  // use its own edges, connectors use the grid-edge preimages.
  Multigraph gphi;
  for (VertexId v : g.vertices()) gphi.add_vertex(v);
  for (const Edge& e : g.edges())
    if (!phi.map.at(e.id).is_star()) gphi.add_edge(e.id, e.u, e.v);

  std::map<VertexId, VertexId> sigma_class;
  for (VertexId x : g.vertices()) sigma_class[x] = sigma.base.map.at(gl.loop_of(x)).id;
  auto survives = [&](EdgeId e) { return sigma.base.map.at(e).is_edge(); };

  std::map<VertexId, detail::HalfPaths> half;  // keyed by small-grid vertex
  std::map<VertexId, VertexId> anchor;
  for (int j = 1; j <= kp; ++j)
    for (int i = 1; i <= kp; ++i) {
      VertexId sv = small.id(i, j);
      anchor[sv] = branches.at(big.id(alpha(i), alpha(j))).front();
      half[sv].vertices.push_back(anchor[sv]);
    }

  EdgeMapping tau_map;
  for (const Edge& e : gl.graph().edges()) tau_map[e.id] = Image::star();

  // One grid segment between consecutive chosen points; `horizontal` picks
  // the direction. Returns the connector edge in G.
  auto thread = [&](int i, int j, bool horizontal) {
    const VertexId from = small.id(i, j);
    const VertexId to = horizontal ? small.id(i + 1, j) : small.id(i, j + 1);
    std::vector<std::vector<VertexId>> parts;
    std::vector<EdgeId> links;
    std::vector<VertexId> grid_vertices;
    const int base = horizontal ? alpha(i) : alpha(j);
    for (int s = 0; s <= p.step; ++s) {
      VertexId bv = horizontal ? big.id(base + s, alpha(j)) : big.id(alpha(i), base + s);
      grid_vertices.push_back(bv);
      parts.push_back(branches.at(bv));
      if (s < p.step) {
        EdgeId be = horizontal ? big.horizontal(base + s, alpha(j)) : big.vertical(alpha(i), base + s);
        links.push_back(pre.of_edge.at(be).front());
      }
    }
    const int a = p.margin + 1, b = p.step - p.margin + 1;
    ThreadedPath path = threaded_path(gphi, parts, anchor[from], anchor[to], a, b, links);

    // First surviving edge of the marked part whose two sides share no
    // σ-class along the path.
    std::vector<std::set<VertexId>> prefix(path.vertices.size()), suffix(path.vertices.size());
    for (std::size_t q = 0; q < path.vertices.size(); ++q) {
      if (q) prefix[q] = prefix[q - 1];
      prefix[q].insert(sigma_class.at(path.vertices[q]));
    }
    for (std::size_t q = path.vertices.size(); q-- > 0;) {
      if (q + 1 < path.vertices.size()) suffix[q] = suffix[q + 1];
      suffix[q].insert(sigma_class.at(path.vertices[q]));
    }
    std::size_t cut = path.edges.size();
    for (std::size_t q = path.part_begin; q < path.part_end; ++q) {
      if (!survives(path.edges[q])) continue;
      bool separated = true;
      for (VertexId cls : prefix[q])
        if (suffix[q + 1].contains(cls)) {
          separated = false;
          break;
        }
      if (separated) {
        cut = q;
        break;
      }
    }
    if (cut == path.edges.size())
      throw CertificateError("grid_transfer: no connector edge of sigma^{-1}(E(H)) in the marked part between grid points (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
    for (std::size_t q = 0; q < cut; ++q) {
      half[from].edges.push_back(path.edges[q]);
      half[from].vertices.push_back(path.vertices[q + 1]);
    }
    for (std::size_t q = cut + 1; q < path.edges.size(); ++q) {
      half[to].edges.push_back(path.edges[q]);
      half[to].vertices.push_back(path.vertices[q]);
    }
    const EdgeId connector = path.edges[cut];
    tau_map[connector] = Image::edge(horizontal ? small.horizontal(i, j) : small.vertical(i, j));
    out.connectors.push_back(connector);
    std::vector<VertexId> region(grid_vertices.begin() + (a - 1), grid_vertices.begin() + b);
    out.regions.push_back(std::move(region));
  };

  for (int j = 1; j <= kp; ++j)
    for (int i = 1; i < kp; ++i) thread(i, j, true);
  for (int i = 1; i <= kp; ++i)
    for (int j = 1; j < kp; ++j) thread(i, j, false);

  for (const auto& [sv, hp] : half) {
    for (EdgeId e : hp.edges) tau_map[e] = Image::vertex(sv);
    for (VertexId x : hp.vertices) tau_map[gl.loop_of(x)] = Image::vertex(sv);
  }
  out.tau = MinorModel{gl, small.graph, std::move(tau_map)};
  if (auto v = validate_minor_model(out.tau); !v) throw CertificateError("grid_transfer: tau invalid (" + v.message() + ")");
  out.model = compose_models(sigma.base, out.tau);
  return out;
}

}  // namespace bidim
