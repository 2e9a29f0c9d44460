#pragma once

// Property suites behind `verify`, and the tw / bg ratio experiment.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bidim/generators.hpp"
#include "bidim/grid_transfer.hpp"
#include "bidim/gridminor.hpp"
#include "bidim/intersect.hpp"
#include "bidim/minor_oracle.hpp"
#include "bidim/models.hpp"
#include "bidim/structure.hpp"
#include "bidim/treewidth.hpp"
#include "bidim/vertex_cover.hpp"

namespace bidim::exp {

// ---------------------------------------------------------------------------
// Small graphs up to isomorphism

namespace detail {

// Canonical form: the lexicographically largest adjacency bit string over
// all vertex permutations.
inline std::uint32_t canonical_mask(int n, std::uint32_t mask, const std::vector<std::pair<int, int>>& slots,
                                    const std::vector<std::vector<int>>& perms) {
  std::uint32_t best = 0;
  std::vector<int> index(n * n, -1);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    index[slots[s].first * n + slots[s].second] = static_cast<int>(s);
    index[slots[s].second * n + slots[s].first] = static_cast<int>(s);
  }
  for (const auto& p : perms) {
    std::uint32_t img = 0;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1u) img |= 1u << index[p[slots[s].first] * n + p[slots[s].second]];
    best = std::max(best, img);
  }
  return best;
}

}  // namespace detail

// All simple graphs on exactly n vertices (n <= 6), one per isomorphism class.
inline std::vector<Multigraph> graphs_up_to_isomorphism(int n) {
  if (n < 0 || n > 6) throw CapExceeded("graphs_up_to_isomorphism", n, 6);
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::set<std::uint32_t> seen;
  std::vector<Multigraph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::uint32_t canon = detail::canonical_mask(n, mask, slots, perms);
    if (!seen.insert(canon).second) continue;
    Multigraph g = make_edgeless(n);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (canon >> s & 1u) g.add_edge(slots[s].first, slots[s].second);
    out.push_back(std::move(g));
  }
  return out;
}

inline std::vector<Multigraph> graphs_up_to_isomorphism_range(int lo, int hi) {
  std::vector<Multigraph> out;
  for (int n = lo; n <= hi; ++n)
    for (auto& g : graphs_up_to_isomorphism(n)) out.push_back(std::move(g));
  return out;
}

// ---------------------------------------------------------------------------
// Verify suites

struct VerifyConfig {
  std::uint64_t seed = 1;
  int trials = -1;       // -1: the suite's default
  int max_n = -1;        // -1: the suite's default
  int minor_cap = 10;
  int tw_cap = 16;
  std::vector<int> c_values{1, 2, 5};  // grid transfer
  int k_max = 21;                      // grid transfer: largest grid side
};

struct VerifyReport {
  int suite = 0;
  long cases = 0;
  long violations = 0;
  std::vector<std::string> counterexamples;  // first few only
  std::vector<std::string> notes;
  double seconds = 0;

  bool ok() const { return violations == 0 && cases > 0; }

  void fail(std::string what) {
    ++violations;
    if (counterexamples.size() < 10) counterexamples.push_back(std::move(what));
  }
};

namespace detail {

inline std::string describe(const Multigraph& g) {
  std::ostringstream os;
  os << "n=" << g.num_vertices() << " E=[";
  bool first = true;
  for (const Edge& e : g.edges()) {
    os << (first ? "" : ",") << e.u << "-" << e.v;
    first = false;
  }
  os << "]";
  return os.str();
}

inline void minor_pair(const Multigraph& h, const Multigraph& g, int cap, VerifyReport& rep) {
  ++rep.cases;
  auto brute = is_minor_brute(h, g, cap);
  auto model = find_minor_model(h, g, cap);
  const std::string tag = "H " + describe(h) + " G " + describe(g);
  if (brute.has_value() != model.has_value()) {
    rep.fail(tag + ": oracle says " + (brute ? "minor" : "no minor") + ", model search says " + (model ? "minor" : "no minor"));
    return;
  }
  if (brute) {
    try {
      MinorModel from_w = model_from_witness(simplify(h), g, *brute);
      if (!validate_minor_model(from_w)) rep.fail(tag + ": model built from the oracle witness is invalid");
    } catch (const Error& e) {
      rep.fail(tag + ": oracle witness rejected (" + e.what() + ")");
    }
  }
  if (model) {
    if (auto v = validate_minor_model(*model); !v) {
      rep.fail(tag + ": found model invalid (" + v.message() + ")");
      return;
    }
    MinorModel back = model_from_witness(model->target, g, witness_from_model(*model));
    if (!validate_minor_model(back)) rep.fail(tag + ": witness round trip invalid");
  }
}

}  // namespace detail

// Suite 1: φ-models exist exactly when the oracle finds a minor.
inline VerifyReport verify_minor_oracle(const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.suite = 1;
  const int exhaustive_n = cfg.max_n > 0 ? std::min(cfg.max_n, 6) : 6;
  auto gs = graphs_up_to_isomorphism_range(1, exhaustive_n);
  auto hs = graphs_up_to_isomorphism_range(1, std::min(4, exhaustive_n));
  for (const auto& h : hs)
    for (const auto& g : gs) detail::minor_pair(h, g, cfg.minor_cap, rep);
  rep.notes.push_back("exhaustive: " + std::to_string(hs.size()) + " H x " + std::to_string(gs.size()) + " G");
  const int trials = cfg.trials >= 0 ? cfg.trials : 500;
  gen::Rng rng(cfg.seed);
  for (int t = 0; t < trials; ++t) {
    int gn = static_cast<int>(rng.between(1, 8));
    int hn = static_cast<int>(rng.between(1, std::min(gn, 5)));
    Multigraph g = gen::random_graph(gn, 0.2 + 0.6 * rng.unit(), rng.next());
    Multigraph h = gen::random_graph(hn, 0.2 + 0.6 * rng.unit(), rng.next());
    detail::minor_pair(h, g, cfg.minor_cap, rep);
  }
  rep.notes.push_back("random pairs: " + std::to_string(trials));
  return rep;
}

// Suite 3: the constructor emits distance-minor models of L_k.
inline VerifyReport verify_grid_distance_minor(const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.suite = 3;
  const int trials = cfg.trials >= 0 ? cfg.trials : 50;
  const int kmax = cfg.max_n > 0 ? cfg.max_n : 5;
  for (int k = 1; k <= kmax; ++k)
    for (int t = 0; t < trials; ++t) {
      ++rep.cases;
      const std::uint64_t seed = cfg.seed * 1000003ULL + static_cast<std::uint64_t>(k) * 7919 + t;
      PartialTriangulation p = make_partial_triangulation(4 * k, seed);
      const std::string tag = "k=" + std::to_string(k) + " seed=" + std::to_string(seed);
      if (!is_planar(p.graph)) {
        rep.fail(tag + ": triangulation not planar");
        continue;
      }
      MinorModel m = grid_distance_minor(p);
      if (auto v = validate_distance_minor(m); !v) {
        rep.fail(tag + ": " + v.message());
        continue;
      }
      for (const auto& [x, set] : branch_sets(m))
        if (set.size() != 3) {
          rep.fail(tag + ": branch set of " + std::to_string(x) + " has " + std::to_string(set.size()) + " vertices");
          break;
        }
    }
  return rep;
}

// Suite 4: tw(G) <= (c+1)(tw(H)+1) - 1, and lifted decompositions validate.
inline VerifyReport verify_contraction_treewidth(const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.suite = 4;
  const int trials = cfg.trials >= 0 ? cfg.trials : 500;
  const int max_n = cfg.max_n > 0 ? cfg.max_n : 12;
  gen::Rng rng(cfg.seed);
  for (int t = 0; t < trials; ++t) {
    ++rep.cases;
    int n = static_cast<int>(rng.between(1, max_n));
    int c = static_cast<int>(rng.between(0, 3));
    Multigraph g = gen::random_connected_graph(n, static_cast<int>(rng.between(0, 2 * n)), rng.next());
    CContractionModel psi = gen::random_c_contraction(g, c, rng.next());
    const std::string tag = "trial " + std::to_string(t) + " c=" + std::to_string(c) + " G " + detail::describe(g);
    if (auto v = validate_c_contraction(psi); !v) {
      rep.fail(tag + ": generated contraction invalid (" + v.message() + ")");
      continue;
    }
    TreewidthResult tg = treewidth_exact(g, cfg.tw_cap);
    TreewidthResult th = treewidth_exact(psi.base.target, cfg.tw_cap);
    const int bound = (psi.c + 1) * (th.width + 1) - 1;
    if (tg.width > bound) rep.fail(tag + ": tw(G)=" + std::to_string(tg.width) + " > " + std::to_string(bound));
    TreeDecomposition lifted = lift_decomposition(th.decomposition, psi);
    if (auto v = validate_decomposition(g, lifted); !v) rep.fail(tag + ": lifted decomposition invalid (" + v.message() + ")");
    else if (lifted.width > bound) rep.fail(tag + ": lifted width " + std::to_string(lifted.width) + " > " + std::to_string(bound));
  }
  return rep;
}

// Suite 5: threaded paths are s-t paths whose marked part is long enough
// and avoids the outer parts.
inline VerifyReport verify_threaded_paths(const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.suite = 5;
  const int trials = cfg.trials >= 0 ? cfg.trials : 300;
  gen::Rng rng(cfg.seed);
  for (int t = 0; t < trials; ++t) {
    ++rep.cases;
    const int r = static_cast<int>(rng.between(2, 7));
    Multigraph g;
    std::vector<std::vector<VertexId>> parts(r);
    for (int i = 0; i < r; ++i) {
      int size = static_cast<int>(rng.between(1, 4));
      for (int q = 0; q < size; ++q) {
        VertexId v = g.add_vertex();
        if (q > 0) g.add_edge(parts[i][static_cast<std::size_t>(rng.below(q))], v);
        parts[i].push_back(v);
      }
      if (size > 2 && rng.chance(0.5)) {
        VertexId a = parts[i].front(), b = parts[i].back();
        if (!g.adjacent(a, b)) g.add_edge(a, b);
      }
    }
    for (int i = 0; i + 1 < r; ++i) {
      int links = static_cast<int>(rng.between(1, 2));
      for (int q = 0; q < links; ++q)
        g.add_edge(parts[i][static_cast<std::size_t>(rng.below(static_cast<long>(parts[i].size())))],
                   parts[i + 1][static_cast<std::size_t>(rng.below(static_cast<long>(parts[i + 1].size())))]);
    }
    int extra = static_cast<int>(rng.between(0, 3));
    for (int q = 0; q < extra; ++q) {
      VertexId a = static_cast<VertexId>(rng.below(static_cast<long>(g.num_vertices())));
      VertexId b = static_cast<VertexId>(rng.below(static_cast<long>(g.num_vertices())));
      if (a != b) g.add_edge(a, b);
    }
    const int alpha = static_cast<int>(rng.between(1, r));
    const int beta = static_cast<int>(rng.between(alpha, r));
    VertexId s = parts.front()[static_cast<std::size_t>(rng.below(static_cast<long>(parts.front().size())))];
    VertexId tt = parts.back()[static_cast<std::size_t>(rng.below(static_cast<long>(parts.back().size())))];
    const std::string tag = "trial " + std::to_string(t) + " r=" + std::to_string(r) + " a=" + std::to_string(alpha) + " b=" + std::to_string(beta);
    ThreadedPath p = threaded_path(g, parts, s, tt, alpha, beta);

    std::map<VertexId, int> part_of;
    for (int i = 0; i < r; ++i)
      for (VertexId v : parts[i]) part_of[v] = i + 1;
    bool ok = p.vertices.front() == s && p.vertices.back() == tt && p.edges.size() + 1 == p.vertices.size();
    std::set<VertexId> distinct(p.vertices.begin(), p.vertices.end());
    ok = ok && distinct.size() == p.vertices.size();
    for (std::size_t q = 0; ok && q < p.edges.size(); ++q) {
      const Edge& e = g.edge(p.edges[q]);
      ok = (e.u == p.vertices[q] && e.v == p.vertices[q + 1]) || (e.v == p.vertices[q] && e.u == p.vertices[q + 1]);
    }
    if (!ok) {
      rep.fail(tag + ": not an s-t path");
      continue;
    }
    // One connector per step inside [α, β], plus e_{α-1} and e_β when they exist.
    const std::size_t need = static_cast<std::size_t>(beta - alpha + (alpha >= 2) + (beta <= r - 1));
    if (p.part_length() < need)
      rep.fail(tag + ": marked part has length " + std::to_string(p.part_length()) + " < " + std::to_string(need));
    for (std::size_t q = p.part_begin; q < p.part_end; ++q) {
      const Edge& e = g.edge(p.edges[q]);
      int pu = part_of.at(e.u), pv = part_of.at(e.v);
      if (pu == pv && (pu < alpha || pu > beta)) {
        rep.fail(tag + ": marked part uses an edge inside part " + std::to_string(pu));
        break;
      }
    }
  }
  return rep;
}

// Suite 6: composing a contraction with a minor model.
inline VerifyReport verify_composition(const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.suite = 6;
  const int trials = cfg.trials >= 0 ? cfg.trials : 200;
  const int max_n = cfg.max_n > 0 ? cfg.max_n : 8;
  gen::Rng rng(cfg.seed);
  for (int t = 0; t < trials; ++t) {
    ++rep.cases;
    gen::ComposableInstance inst = gen::random_composable(static_cast<int>(rng.between(1, max_n)), rng.next());
    const std::string tag = "trial " + std::to_string(t) + " A " + detail::describe(inst.a);
    try {
      MinorModel phi = compose_models(inst.psi1.base, inst.psi2);
      if (auto v = validate_minor_model(phi); !v) rep.fail(tag + ": " + v.message());
      else if (!(phi.target == inst.psi2.target)) rep.fail(tag + ": composed target differs");
    } catch (const Error& e) {
      rep.fail(tag + ": " + e.what());
    }
  }
  return rep;
}

// Suite 7: grid transfer through a c-contraction on subdivided grids.
inline VerifyReport verify_grid_transfer(const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.suite = 7;
  const int per = cfg.trials >= 0 ? cfg.trials : 2;
  for (int c : cfg.c_values)
    for (bool odd : {false, true}) {
      if (odd && c % 2 == 0) continue;
      const int step = transfer_parameters(1, c, odd).step;
      std::set<int> ks{step + 1, 2 * step + 1, std::min(cfg.k_max, 21)};
      for (int k : ks) {
        if (k > cfg.k_max || k < 2) continue;
        for (int t = 0; t < per; ++t) {
          ++rep.cases;
          const int sub = t % 3;
          const std::uint64_t seed = cfg.seed * 7919 + static_cast<std::uint64_t>(k * 31 + c * 7 + t);
          gen::TransferInstance inst = gen::subdivided_grid_instance(k, c, sub, seed);
          const std::string tag = "c=" + std::to_string(c) + " k=" + std::to_string(k) + " odd=" + std::to_string(odd) +
                                  " subdivisions=" + std::to_string(sub) + " seed=" + std::to_string(seed);
          try {
            GridTransferResult r = grid_transfer(inst.sigma, inst.phi, odd);
            const int expect = odd && c % 2 == 1 ? (k - 1) / (2 * c) + 1 : (k - 1) / (2 * (c + 1)) + 1;
            if (r.params.k_prime != expect) rep.fail(tag + ": k' = " + std::to_string(r.params.k_prime) + ", expected " + std::to_string(expect));
            if (grid_side(r.model.target) != r.params.k_prime) rep.fail(tag + ": output target is not L_k'");
            if (auto v = validate_minor_model(r.model); !v) rep.fail(tag + ": " + v.message());
            if (c == 5 && k == 21 && odd) rep.notes.push_back("c=5, k=21 (odd variant): k' = " + std::to_string(r.params.k_prime));
          } catch (const Error& e) {
            rep.fail(tag + ": " + e.what());
          }
        }
      }
    }
  return rep;
}

inline VerifyReport verify_suite(int suite, const VerifyConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  VerifyReport rep;
  switch (suite) {
    case 1: rep = verify_minor_oracle(cfg); break;
    case 3: rep = verify_grid_distance_minor(cfg); break;
    case 4: rep = verify_contraction_treewidth(cfg); break;
    case 5: rep = verify_threaded_paths(cfg); break;
    case 6: rep = verify_composition(cfg); break;
    case 7: rep = verify_grid_transfer(cfg); break;
    default: throw InvalidInput("verify: no suite " + std::to_string(suite) + " (have 1, 3, 4, 5, 6, 7)");
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Ratio experiment

enum class Family { segments, polysegments, rho_convex, fat_convex };

inline Family family_from_string(const std::string& s) {
  if (s == "segments") return Family::segments;
  if (s == "polysegments") return Family::polysegments;
  if (s == "rho-convex") return Family::rho_convex;
  if (s == "fat-convex") return Family::fat_convex;
  throw InvalidInput("unknown family '" + s + "' (segments | polysegments | rho-convex | fat-convex)");
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::segments: return "segments";
    case Family::polysegments: return "polysegments";
    case Family::rho_convex: return "rho-convex";
    case Family::fat_convex: return "fat-convex";
  }
  return "unknown";
}

struct ExperimentConfig {
  std::uint64_t seed = 1;
  Family family = Family::segments;
  int trials = 50;
  int n_min = 2;
  int n_max = 10;
  int bends = 2;            // polysegments family
  int rho = 3;              // rho-convex family: largest shape kind
  double alpha = 2.0;       // fat-convex family
  int h = 3;                // fat-convex family
  int tw_exact_cap = 16;
  int bg_exact_cap = 12;
  int bg_kmax = 4;
  int threads = 1;
};

struct RatioRecord {
  int instance = 0;
  std::uint64_t seed = 0;
  int n = 0;                        // bodies / polysegments
  int xi = 0;
  int gb_vertices = 0;
  int gb_edges = 0;
  int tw_lower = 0;
  int tw_upper = 0;
  std::optional<int> tw_exact;
  int bg_lower = 0;
  std::optional<int> bg_exact;
  std::optional<ChainValues> chain;  // only when tw is exact
  std::optional<bool> chain_pass;    // only when tw and bg are exact
  std::optional<double> ratio;       // tw / (max(ξ,1) · bg), certified values only
  // Body families.
  std::optional<int> rho;
  std::optional<int> delta;
  std::optional<double> alpha;
  std::optional<long> crossing_bound;
  std::optional<int> crossing_max;
  std::optional<bool> bound_ok;
  std::string error;
};

inline RatioRecord ratio_instance(const ExperimentConfig& cfg, int index) {
  RatioRecord rec;
  rec.instance = index;
  rec.seed = cfg.seed * 1000003ULL + static_cast<std::uint64_t>(index);
  gen::Rng rng(rec.seed);
  rec.n = static_cast<int>(rng.between(cfg.n_min, cfg.n_max));
  try {
    Arrangement arr;
    switch (cfg.family) {
      case Family::segments: arr = gen::random_segments(rec.n, rng.next()); break;
      case Family::polysegments: arr = gen::random_polysegments(rec.n, cfg.bends, rng.next()); break;
      case Family::rho_convex: {
        gen::BodyFamily fam = gen::random_rho_convex(rec.n, rng.next(), cfg.rho);
        BodyModel m = model_with_retries(fam.bodies, rec.seed, 8,
                                         [&](const ContactPointSet& cs) { return model_rho_convex(fam.bodies, cs, fam.rho); });
        arr = m.arrangement;
        rec.rho = fam.rho;
        rec.delta = m.delta;
        rec.crossing_bound = m.crossing_bound;
        rec.crossing_max = m.crossings.empty() ? 0 : *std::max_element(m.crossings.begin(), m.crossings.end());
        rec.bound_ok = m.crossing_ok && m.length_ok;
        break;
      }
      case Family::fat_convex: {
        gen::BodyFamily fam = gen::random_fat_convex(rec.n, rng.next(), cfg.alpha);
        BodyModel m = model_with_retries(fam.bodies, rec.seed, 8,
                                         [&](const ContactPointSet& cs) { return model_fat_convex(fam.bodies, cs, cfg.h); });
        arr = m.arrangement;
        rec.delta = m.delta;
        rec.alpha = m.alpha;
        rec.crossing_bound = m.crossing_bound;
        rec.crossing_max = m.crossings.empty() ? 0 : *std::max_element(m.crossings.begin(), m.crossings.end());
        rec.bound_ok = fat_degree_check(m.delta, m.alpha, cfg.h);
        break;
      }
    }
    PlanarizationBundle b = planarize(arr);
    rec.xi = b.xi;
    const Multigraph& gb = b.gb;
    rec.gb_vertices = static_cast<int>(gb.num_vertices());
    rec.gb_edges = static_cast<int>(gb.num_edges());
    rec.tw_lower = treewidth_lower(gb);
    rec.tw_upper = treewidth_upper(gb).width;
    if (rec.gb_vertices <= cfg.tw_exact_cap) {
      rec.tw_exact = treewidth_exact(gb, cfg.tw_exact_cap).width;
      rec.chain = grid_chain(*rec.tw_exact, 1, rec.xi + 1);
    }
    if (rec.gb_vertices <= cfg.bg_exact_cap) {
      rec.bg_exact = bg_exact_small(gb, cfg.bg_exact_cap);
      rec.bg_lower = *rec.bg_exact;
    } else {
      BgSearchOptions opt;
      opt.seed = rec.seed;
      rec.bg_lower = bg_lower(gb, cfg.bg_kmax, opt).k;
    }
    if (rec.tw_exact && rec.bg_exact) {
      rec.chain_pass = chain_bound(*rec.tw_exact, *rec.bg_exact, rec.xi).holds;
      if (*rec.bg_exact > 0) rec.ratio = static_cast<double>(*rec.tw_exact) / (std::max(1, rec.xi) * *rec.bg_exact);
    }
  } catch (const Error& e) {
    rec.error = e.what();
  }
  return rec;
}

struct RatioSummary {
  int instances = 0;
  int certified = 0;  // rows with chain_pass computed
  int passed = 0;
  int errors = 0;
  std::optional<double> max_ratio;
  double pass_rate() const { return certified ? static_cast<double>(passed) / certified : 1.0; }
};

inline RatioSummary summarize(const std::vector<RatioRecord>& rows) {
  RatioSummary s;
  s.instances = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    if (!r.error.empty()) ++s.errors;
    if (r.chain_pass) {
      ++s.certified;
      if (*r.chain_pass) ++s.passed;
    }
    if (r.ratio) s.max_ratio = std::max(s.max_ratio.value_or(0.0), *r.ratio);
  }
  return s;
}

// Rows come back in instance order regardless of the thread count.
inline std::vector<RatioRecord> run_ratio_experiment(const ExperimentConfig& cfg) {
  std::vector<RatioRecord> rows(static_cast<std::size_t>(std::max(0, cfg.trials)));
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int i = 0; i < cfg.trials; ++i) rows[i] = ratio_instance(cfg, i);
    return rows;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < cfg.trials; i += threads) rows[i] = ratio_instance(cfg, i);
    });
  for (auto& t : pool) t.join();
  return rows;
}

inline constexpr const char* kRatioSchema = "bidim-ratio/1";

inline void write_ratio_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<RatioRecord>& rows) {
  auto opt = [](const auto& o) {
    std::ostringstream s;
    if (o) s << *o;
    return s.str();
  };
  auto flag = [](const std::optional<bool>& b) { return b ? std::string(*b ? "1" : "0") : std::string(); };
  os << "# schema=" << kRatioSchema << " family=" << to_string(cfg.family) << " seed=" << cfg.seed << " trials=" << cfg.trials << "\n";
  os << "row,instance,seed,n,xi,gb_vertices,gb_edges,tw_lower,tw_upper,tw_exact,bg_lower,bg_exact,r_prime,r_double_prime,"
        "chain_vacuous,chain_pass,ratio,rho,delta,alpha,crossing_bound,crossing_max,bound_ok,error\n";
  os << std::setprecision(6);
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << "instance," << r.instance << "," << r.seed << "," << r.n << "," << r.xi << "," << r.gb_vertices << "," << r.gb_edges << ","
       << r.tw_lower << "," << r.tw_upper << "," << opt(r.tw_exact) << "," << r.bg_lower << "," << opt(r.bg_exact) << ","
       << (r.chain ? std::to_string(r.chain->r_prime) : "") << "," << (r.chain ? std::to_string(r.chain->r_double_prime) : "") << ","
       << (r.chain ? (r.chain->vacuous ? "1" : "0") : "") << "," << flag(r.chain_pass) << "," << opt(r.ratio) << "," << opt(r.rho)
       << "," << opt(r.delta) << "," << opt(r.alpha) << "," << opt(r.crossing_bound) << "," << opt(r.crossing_max) << ","
       << flag(r.bound_ok) << "," << err << "\n";
  }
  RatioSummary s = summarize(rows);
  os << "summary,instances=" << s.instances << ",certified=" << s.certified << ",chain_pass_rate=" << s.pass_rate()
     << ",max_certified_ratio=" << (s.max_ratio ? std::to_string(*s.max_ratio) : std::string()) << ",errors=" << s.errors << "\n";
}

}  // namespace bidim::exp
