// bidim command-line tool. Exit codes: 0 pass, 1 violation found,
// 2 usage or input validation error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bidim/bidim.hpp"

using namespace bidim;
using io::json;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("BIDIM_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric BIDIM_SEED\n";
    }
  }
  return 1;
}

json read_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

bool is_bodies(const json& j) { return j.contains("bodies"); }

Arrangement load_arrangement(const json& j) { return build_arrangement(io::polysegments_from_json(j)); }

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family = "segments";
  int n = 10;
  std::uint64_t seed = 1;
  int bends = 2;
  int rho = 3;
  double alpha = 2.0;
  int sides = 8;
  int k = 4;
  double density = 0.5;
  std::string out;
};

int run_gen(const GenArgs& a) {
  json j;
  if (a.family == "segments") j = io::arrangement_to_json(gen::random_segments(a.n, a.seed).polysegments);
  else if (a.family == "polysegments") j = io::arrangement_to_json(gen::random_polysegments(a.n, a.bends, a.seed).polysegments);
  else if (a.family == "rho-convex") {
    gen::BodyFamily f = gen::random_rho_convex(a.n, a.seed, a.rho);
    j = io::bodies_to_json(f.bodies);
    j["rho"] = f.rho;
  } else if (a.family == "fat-convex") {
    gen::BodyFamily f = gen::random_fat_convex(a.n, a.seed, a.alpha, a.sides);
    j = io::bodies_to_json(f.bodies);
    j["alpha"] = f.alpha;
  } else if (a.family == "triangulated-grid") {
    j = io::to_json(make_partial_triangulation(a.k, a.seed, a.density));
  } else {
    throw InvalidInput("unknown family '" + a.family + "'");
  }
  j["family"] = a.family;
  j["seed"] = a.seed;
  write_json(a.out, j);
  return kPass;
}

// ---------------------------------------------------------------------------

int run_geom(const std::string& what, const std::string& in, bool as_json) {
  json src = read_json(in);
  json out;
  int code = kPass;
  if (what == "validate") {
    try {
      if (is_bodies(src)) {
        auto bodies = io::bodies_from_json(src);
        Multigraph g = body_intersection_graph(bodies);
        out = {{"ok", true}, {"bodies", bodies.size()}, {"touching_pairs", g.num_edges()}};
      } else {
        Arrangement arr = load_arrangement(src);
        out = {{"ok", true}, {"polysegments", arr.polysegments.size()}, {"crossings", arr.crossings.size()}, {"xi", xi(arr)}};
      }
    } catch (const GeometryError& e) {
      out = {{"ok", false}, {"error", e.what()}};
      code = kViolation;
    }
  } else if (what == "xi") {
    Arrangement arr = load_arrangement(src);
    out = {{"xi", xi(arr)}, {"crossings", io::crossings_to_json(arr)}};
  } else if (what == "fatness") {
    FatnessReport f = fatness(io::bodies_from_json(src));
    out = {{"R", f.R}, {"r", f.r}, {"alpha", f.alpha}};
  } else {
    throw InvalidInput("geom: unknown action '" + what + "'");
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  else if (what == "validate") std::cout << (out["ok"].get<bool>() ? "valid" : "invalid: " + out["error"].get<std::string>()) << "\n";
  else if (what == "xi") std::cout << "xi = " << out["xi"] << "\n";
  else std::cout << "alpha = " << out["alpha"] << "\n";
  return code;
}

int run_build(const std::string& from, const std::string& out) {
  json src = read_json(from);
  Multigraph g = is_bodies(src) ? body_intersection_graph(io::bodies_from_json(src)) : intersection_graph(load_arrangement(src));
  write_json(out, io::to_json(g));
  return kPass;
}

int run_planarize(const std::string& in, const std::string& out, bool as_json) {
  Arrangement arr = load_arrangement(read_json(in));
  PlanarizationBundle b = planarize(arr);
  BundleCheck c = check_bundle(b, arr);
  json bundle = io::to_json(b);
  bundle["check"] = {{"h_planar", c.h_planar}, {"quotient_matches", c.quotient_matches}, {"gb_matches", c.gb_matches},
                     {"subdivision_ok", c.subdivision_ok}, {"model_H_ok", c.model_H_ok}, {"model_gb_ok", c.model_gb_ok},
                     {"detail", c.detail}};
  if (!out.empty()) write_json(out, bundle);
  if (as_json && out.empty()) std::cout << bundle.dump(2) << "\n";
  else
    std::cout << "G: " << b.G.num_vertices() << " vertices, " << b.G.num_edges() << " edges; |M| = " << b.M.size()
              << "; xi = " << b.xi << "; bundle " << (c.ok() ? "valid" : "INVALID " + c.detail) << "\n";
  return c.ok() ? kPass : kViolation;
}

int run_model(const std::string& in, const std::string& out, bool rho_convex, bool fat, int rho, int h, std::uint64_t seed,
              bool as_json) {
  if (rho_convex == fat) throw InvalidInput("model: pass exactly one of --rho-convex, --fat");
  json src = read_json(in);
  auto bodies = io::bodies_from_json(src);
  if (rho_convex && rho <= 0) rho = src.value("rho", 3);
  BodyModel m;
  try {
    if (fat) require_fat_degree(bodies, h);
    m = rho_convex ? model_with_retries(bodies, seed, 8, [&](const ContactPointSet& cs) { return model_rho_convex(bodies, cs, rho); })
                   : model_with_retries(bodies, seed, 8, [&](const ContactPointSet& cs) { return model_fat_convex(bodies, cs, h); });
  } catch (const PreconditionError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  }
  Multigraph direct = body_intersection_graph(bodies);
  Multigraph modeled = intersection_graph(m.arrangement);
  std::map<VertexId, VertexId> id;
  for (VertexId v : direct.vertices()) id[v] = v;
  const bool touch_ok = isomorphic_under(modeled, direct, id);
  json arr = io::arrangement_to_json(m.arrangement.polysegments);
  json report = {{"touch_equivalent", touch_ok}, {"delta", m.delta},         {"xi", xi(m.arrangement)},
                 {"length", m.length},           {"crossings", m.crossings}, {"length_bound", m.length_bound},
                 {"crossing_bound", m.crossing_bound}, {"length_ok", m.length_ok}, {"crossing_ok", m.crossing_ok}};
  if (rho_convex) report["rho"] = m.rho;
  else report["alpha"] = m.alpha;
  arr["report"] = report;
  if (!out.empty()) write_json(out, arr);
  if (as_json && out.empty()) std::cout << arr.dump(2) << "\n";
  else std::cout << report.dump() << "\n";
  return touch_ok ? kPass : kViolation;
}

int run_tw(const std::string& in, const std::string& mode, const std::string& out, int cap, bool as_json) {
  Multigraph g = io::graph_from_json(read_json(in));
  json j;
  if (mode == "lower") {
    j = {{"lower", treewidth_lower(g)}};
  } else {
    TreewidthResult r = mode == "exact" ? treewidth_exact(g, cap) : treewidth_upper(g);
    j = {{mode, r.width}, {"decomposition", io::to_json(r.decomposition)}};
    if (!out.empty()) write_json(out, io::to_json(r.decomposition));
  }
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << "tw " << mode << " = " << j[mode] << "\n";
  return kPass;
}

int run_bg(const std::string& in, bool exact, int kmax, std::uint64_t seed, int cap, const std::string& out, bool as_json) {
  Multigraph g = io::graph_from_json(read_json(in));
  json j;
  if (exact) {
    const int k = bg_exact_small(g, cap);
    j = {{"bg_exact", k}};
    if (!out.empty() && k > 0) {
      BgSearchOptions opt;
      opt.brute_cap = cap;
      GridMinorCertificate c = bg_lower(g, k, opt);
      if (c.k != k || !c.model) throw CertificateError("bg: no model for the exact value");
      write_json(out, io::to_json(*c.model));
    }
  } else {
    BgSearchOptions opt;
    opt.seed = seed;
    GridMinorCertificate c = bg_lower(g, kmax, opt);
    j = {{"bg_lower", c.k}};
    if (c.model && !out.empty()) write_json(out, io::to_json(*c.model));
  }
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << j.begin().key() << " = " << j.begin().value() << "\n";
  return kPass;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  int suite = 0;
  std::string model;
  bool distance = false;
  std::string contraction;
  int c = -1;
  std::string decomposition;
  std::string graph;
  int trials = -1;
  int max_n = -1;
  std::uint64_t seed = 1;
};

int report_validation(const Validation& v, const std::string& what, bool as_json) {
  if (as_json) std::cout << io::to_json(v).dump(2) << "\n";
  else std::cout << what << ": " << (v.ok() ? "valid" : "INVALID " + v.message()) << "\n";
  return v.ok() ? kPass : kViolation;
}

int run_verify(const VerifyArgs& a, bool as_json) {
  if (!a.model.empty()) {
    MinorModel m = io::minor_model_from_json(read_json(a.model));
    Validation v = validate_minor_model(m);
    if (v && a.distance) v = validate_distance_minor(m);
    return report_validation(v, a.distance ? "distance minor" : "minor model", as_json);
  }
  if (!a.contraction.empty()) {
    CContractionModel m = io::contraction_model_from_json(read_json(a.contraction));
    if (a.c >= 0) m.c = a.c;
    return report_validation(validate_c_contraction(m), std::to_string(m.c) + "-contraction", as_json);
  }
  if (!a.decomposition.empty()) {
    if (a.graph.empty()) throw InvalidInput("verify: --decomposition needs --graph");
    return report_validation(validate_decomposition(io::graph_from_json(read_json(a.graph)), io::decomposition_from_json(read_json(a.decomposition))),
                             "tree decomposition", as_json);
  }
  if (a.suite == 0) throw InvalidInput("verify: give a suite number or one of --model, --contraction, --decomposition");
  exp::VerifyConfig cfg;
  cfg.seed = a.seed;
  cfg.trials = a.trials;
  cfg.max_n = a.max_n;
  exp::VerifyReport r = exp::verify_suite(a.suite, cfg);
  if (as_json) {
    std::cout << json{{"suite", r.suite},
                      {"ok", r.ok()},
                      {"cases", r.cases},
                      {"violations", r.violations},
                      {"counterexamples", r.counterexamples},
                      {"notes", r.notes},
                      {"seconds", r.seconds}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "suite " << r.suite << ": " << (r.ok() ? "pass" : "FAIL") << " (" << r.cases << " cases, " << r.violations
              << " violations, " << r.seconds << " s)\n";
    for (const auto& n : r.notes) std::cout << "  " << n << "\n";
    for (const auto& c : r.counterexamples) std::cout << "  counterexample: " << c << "\n";
  }
  return r.ok() ? kPass : kViolation;
}

int run_solve_vc(const std::string& in, int k, int xi_value, const std::string& report, std::optional<int> threshold, bool as_json) {
  Multigraph gb = io::graph_from_json(read_json(in));
  WinWinOptions opt;
  opt.t_threshold = threshold;
  WinWinOutcome o = winwin_vc(gb, xi_value, k, opt);
  json j = {{"answer", o.yes ? "YES" : "NO"},
            {"route", to_string(o.route)},
            {"k", o.k},
            {"xi", o.xi},
            {"r_min", o.r_min},
            {"t_threshold", o.t_threshold},
            {"tw_lower", o.tw_lower},
            {"tw_upper", o.tw_upper},
            {"width_used", o.width_used},
            {"chain", {{"t", o.chain.t}, {"c1", o.chain.c1}, {"c2", o.chain.c2}, {"r_prime", o.chain.r_prime},
                       {"r_double_prime", o.chain.r_double_prime}, {"vacuous", o.chain.vacuous}}}};
  if (o.yes) j["cover"] = o.cover;
  if (!report.empty()) write_json(report, j);
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << (o.yes ? "YES" : "NO") << " (route " << to_string(o.route) << ")\n";
  return kPass;
}

int run_experiment(const exp::ExperimentConfig& cfg, const std::string& csv, bool as_json) {
  auto rows = exp::run_ratio_experiment(cfg);
  std::ostringstream os;
  exp::write_ratio_csv(os, cfg, rows);
  exp::RatioSummary s = exp::summarize(rows);
  if (!csv.empty() && csv != "-") write_text(csv, os.str());
  if (as_json)
    std::cout << json{{"instances", s.instances}, {"certified", s.certified}, {"chain_pass_rate", s.pass_rate()},
                      {"max_certified_ratio", s.max_ratio ? json(*s.max_ratio) : json(nullptr)}, {"errors", s.errors}}
                     .dump(2)
              << "\n";
  else if (csv.empty() || csv == "-") std::cout << os.str();
  else std::cout << "chain pass rate " << s.pass_rate() << " over " << s.certified << " certified rows\n";
  return s.passed == s.certified && s.errors == 0 ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bidim: intersection graphs, minor certificates, grid minors and win/win vertex cover"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output on stdout");
  const std::uint64_t seed0 = default_seed();
  std::function<int()> action;

  GenArgs ga;
  ga.seed = seed0;
  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded instance");
  gen_cmd->add_option("--family", ga.family, "segments | polysegments | rho-convex | fat-convex | triangulated-grid")->required();
  gen_cmd->add_option("--n", ga.n, "number of polysegments or bodies");
  gen_cmd->add_option("--seed", ga.seed, "seed (default from BIDIM_SEED)");
  gen_cmd->add_option("--bends", ga.bends, "bends per polysegment");
  gen_cmd->add_option("--rho", ga.rho, "largest rho of generated shapes (1..3)");
  gen_cmd->add_option("--alpha", ga.alpha, "fatness target");
  gen_cmd->add_option("--sides", ga.sides, "sides of fat polygons");
  gen_cmd->add_option("--k", ga.k, "grid side (triangulated-grid)");
  gen_cmd->add_option("--density", ga.density, "diagonal probability (triangulated-grid)");
  gen_cmd->add_option("--out", ga.out, "output file (default stdout)");
  gen_cmd->callback([&] { action = [&] { return run_gen(ga); }; });

  std::string geom_action, geom_in;
  auto* geom_cmd = app.add_subcommand("geom", "geometry checks");
  geom_cmd->add_option("action", geom_action, "validate | xi | fatness")->required();
  geom_cmd->add_option("--in", geom_in, "arrangement or bodies JSON")->required();
  geom_cmd->callback([&] { action = [&] { return run_geom(geom_action, geom_in, as_json); }; });

  std::string build_from, build_out;
  auto* build_cmd = app.add_subcommand("build", "intersection graph of an arrangement or body set");
  build_cmd->add_option("--from", build_from, "arrangement or bodies JSON")->required();
  build_cmd->add_option("--out", build_out, "graph JSON (default stdout)");
  build_cmd->callback([&] { action = [&] { return run_build(build_from, build_out); }; });

  std::string pl_in, pl_out;
  auto* pl_cmd = app.add_subcommand("planarize", "planarization bundle (G, M, H, gb, models)");
  pl_cmd->add_option("--in", pl_in, "arrangement JSON")->required();
  pl_cmd->add_option("--out", pl_out, "bundle JSON");
  pl_cmd->callback([&] { action = [&] { return run_planarize(pl_in, pl_out, as_json); }; });

  std::string mo_in, mo_out;
  bool mo_rho = false, mo_fat = false;
  int mo_rho_value = 0, mo_h = 3;
  std::uint64_t mo_seed = seed0;
  auto* mo_cmd = app.add_subcommand("model", "model bodies by polysegments");
  mo_cmd->add_option("--in", mo_in, "bodies JSON")->required();
  mo_cmd->add_option("--out", mo_out, "arrangement JSON with report");
  mo_cmd->add_flag("--rho-convex", mo_rho, "geodesic-tree construction");
  mo_cmd->add_flag("--fat", mo_fat, "convex chain construction with degree check");
  mo_cmd->add_option("--rho", mo_rho_value, "declared rho (default: the file's, else 3)");
  mo_cmd->add_option("--h", mo_h, "excluded-subgraph size for the degree check");
  mo_cmd->add_option("--seed", mo_seed, "contact-point perturbation seed");
  mo_cmd->callback([&] { action = [&] { return run_model(mo_in, mo_out, mo_rho, mo_fat, mo_rho_value, mo_h, mo_seed, as_json); }; });

  std::string tw_in, tw_out;
  bool tw_exact = false, tw_upper = false, tw_lower = false;
  int tw_cap = 16;
  auto* tw_cmd = app.add_subcommand("tw", "treewidth");
  tw_cmd->add_option("--in", tw_in, "graph JSON")->required();
  auto* fe = tw_cmd->add_flag("--exact", tw_exact);
  auto* fu = tw_cmd->add_flag("--upper", tw_upper);
  auto* fl = tw_cmd->add_flag("--lower", tw_lower);
  fe->excludes(fu)->excludes(fl);
  fu->excludes(fl);
  tw_cmd->add_option("--cap", tw_cap, "vertex cap for --exact");
  tw_cmd->add_option("--out", tw_out, "decomposition JSON");
  tw_cmd->callback([&] {
    action = [&] { return run_tw(tw_in, tw_lower ? "lower" : tw_upper ? "upper" : "exact", tw_out, tw_cap, as_json); };
  });

  std::string bg_in, bg_out;
  bool bg_exact = false, bg_lower_flag = false;
  int bg_kmax = 4, bg_cap = 12;
  std::uint64_t bg_seed = seed0;
  auto* bg_cmd = app.add_subcommand("bg", "largest grid minor");
  bg_cmd->add_option("--in", bg_in, "graph JSON")->required();
  bg_cmd->add_flag("--exact", bg_exact, "exact by the oracle (small graphs)");
  bg_cmd->add_flag("--lower", bg_lower_flag, "certified lower bound (default)");
  bg_cmd->add_option("--kmax", bg_kmax, "largest grid side tried");
  bg_cmd->add_option("--seed", bg_seed, "search seed");
  bg_cmd->add_option("--cap", bg_cap, "vertex cap for --exact");
  bg_cmd->add_option("--out", bg_out, "model JSON of the grid found");
  bg_cmd->callback([&] { action = [&] { return run_bg(bg_in, bg_exact, bg_kmax, bg_seed, bg_cap, bg_out, as_json); }; });

  VerifyArgs va;
  va.seed = seed0;
  auto* ve_cmd = app.add_subcommand("verify", "run a property suite or check a certificate file");
  ve_cmd->add_option("suite", va.suite, "1, 3, 4, 5, 6 or 7");
  ve_cmd->add_option("--model", va.model, "minor model JSON");
  ve_cmd->add_flag("--distance", va.distance, "also check distance domination");
  ve_cmd->add_option("--contraction", va.contraction, "contraction model JSON");
  ve_cmd->add_option("--c", va.c, "override the contraction parameter");
  ve_cmd->add_option("--decomposition", va.decomposition, "tree decomposition JSON");
  ve_cmd->add_option("--graph", va.graph, "graph JSON for --decomposition");
  ve_cmd->add_option("--trials", va.trials, "trial count (suite default if omitted)");
  ve_cmd->add_option("--max-n", va.max_n, "size cap (suite default if omitted)");
  ve_cmd->add_option("--seed", va.seed, "seed");
  ve_cmd->callback([&] { action = [&] { return run_verify(va, as_json); }; });

  std::string vc_in, vc_report;
  int vc_k = 0, vc_xi = 0;
  std::optional<int> vc_threshold;
  auto* solve_cmd = app.add_subcommand("solve", "parameterized solvers");
  solve_cmd->require_subcommand(1);
  auto* vc_cmd = solve_cmd->add_subcommand("vc", "win/win vertex cover");
  vc_cmd->add_option("--in", vc_in, "graph JSON (G_B)")->required();
  vc_cmd->add_option("--k", vc_k, "budget")->required();
  vc_cmd->add_option("--xi", vc_xi, "crossing parameter of the arrangement")->required();
  vc_cmd->add_option("--report", vc_report, "report JSON");
  vc_cmd->add_option("--t-threshold", vc_threshold, "override the treewidth threshold");
  vc_cmd->callback([&] { action = [&] { return run_solve_vc(vc_in, vc_k, vc_xi, vc_report, vc_threshold, as_json); }; });

  exp::ExperimentConfig ec;
  ec.seed = seed0;
  std::string ec_family = "segments", ec_csv;
  auto* ex_cmd = app.add_subcommand("experiment", "experiments");
  ex_cmd->require_subcommand(1);
  auto* ratio_cmd = ex_cmd->add_subcommand("ratio", "tw / (xi * bg) and the exact chain, one CSV row per instance");
  ratio_cmd->add_option("--family", ec_family, "segments | polysegments | rho-convex | fat-convex");
  ratio_cmd->add_option("--trials", ec.trials, "instances");
  ratio_cmd->add_option("--seed", ec.seed, "seed");
  ratio_cmd->add_option("--n-min", ec.n_min, "smallest instance");
  ratio_cmd->add_option("--n-max", ec.n_max, "largest instance");
  ratio_cmd->add_option("--bends", ec.bends, "bends (polysegments)");
  ratio_cmd->add_option("--rho", ec.rho, "largest rho (rho-convex)");
  ratio_cmd->add_option("--alpha", ec.alpha, "fatness target (fat-convex)");
  ratio_cmd->add_option("--h", ec.h, "excluded-subgraph size (fat-convex)");
  ratio_cmd->add_option("--tw-cap", ec.tw_exact_cap, "exact treewidth cap");
  ratio_cmd->add_option("--bg-cap", ec.bg_exact_cap, "exact bg cap");
  ratio_cmd->add_option("--bg-kmax", ec.bg_kmax, "bg lower-bound search limit");
  ratio_cmd->add_option("--threads", ec.threads, "worker threads");
  ratio_cmd->add_option("--csv", ec_csv, "CSV output (default stdout)");
  ratio_cmd->callback([&] {
    action = [&] {
      ec.family = exp::family_from_string(ec_family);
      return run_experiment(ec, ec_csv, as_json);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const CertificateError& e) {
    std::cerr << "certificate failure: " << e.what() << "\n";
    return kViolation;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
