#include <gtest/gtest.h>

#include <sstream>

#include "bidim/bidim.hpp"
#include "oracles.hpp"

using namespace bidim;
using nlohmann::json;

namespace {

json reparse(const json& j) { return json::parse(j.dump()); }

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON

TEST(Io, GraphRoundTrip) {
  Multigraph g;
  for (VertexId v : {3, 10, 7}) g.add_vertex(v);
  g.add_edge(5, 3, 10);
  g.add_edge(9, 10, 7);
  g.add_edge(2, 3, 10);  // parallel
  EXPECT_EQ(io::graph_from_json(reparse(io::to_json(g))), g);

  EXPECT_THROW(io::graph_from_json(json::parse(R"({"vertices":[0,1],"edges":[[0,1]]})")), InvalidInput);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"edges":[]})")), InvalidInput);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"vertices":[0],"edges":[[0,0,4]]})")), Error);
}

TEST(Io, MinorModelRoundTrip) {
  MinorModel m = grid_distance_minor(make_partial_triangulation(8, 3));
  MinorModel back = io::minor_model_from_json(reparse(io::to_json(m)));
  EXPECT_EQ(back.source, m.source);
  EXPECT_EQ(back.target, m.target);
  EXPECT_EQ(back.map, m.map);
  EXPECT_TRUE(validate_distance_minor(back));
  EXPECT_TRUE(oracle::model_ok(back, true));

  json j = io::to_json(m);
  j["map"][std::to_string(m.map.begin()->first)] = "bogus";
  EXPECT_THROW(io::minor_model_from_json(reparse(j)), InvalidInput);
}

TEST(Io, ContractionModelRoundTrip) {
  Multigraph c6 = make_cycle(6);
  std::vector<EdgeId> f{c6.edges()[0].id, c6.edges()[1].id};
  CContractionModel m = contraction_model(c6, f, false);
  json j = reparse(io::to_json(m));
  EXPECT_EQ(j.at("kind"), "contraction");
  CContractionModel back = io::contraction_model_from_json(j);
  EXPECT_EQ(back.c, m.c);
  EXPECT_EQ(back.base.map, m.base.map);
  EXPECT_TRUE(validate_c_contraction(back));

  j.erase("c");
  EXPECT_EQ(io::contraction_model_from_json(j).c, contraction_parameter(m.base));
}

TEST(Io, DecompositionRoundTrip) {
  Multigraph g = make_grid(3).graph;
  TreeDecomposition d = treewidth_exact(g).decomposition;
  TreeDecomposition back = io::decomposition_from_json(reparse(io::to_json(d)));
  EXPECT_EQ(back.bags, d.bags);
  EXPECT_EQ(recompute_width(back), 3);
  EXPECT_TRUE(oracle::decomposition_ok(g, back));
}

TEST(Io, Rationals) {
  mpz_class big = 1;
  big <<= 100;
  std::vector<Rational> values{Rational(0), Rational(-7, 3), Rational(1, 1 << 20), Rational(big, 3), Rational(-big * big + 1, big - 1)};
  for (Rational r : values) {
    r.canonicalize();
    EXPECT_EQ(io::rational_from_json(reparse(io::to_json(r))), r);
  }
  EXPECT_THROW(io::rational_from_json(json::parse("[1, 0]")), InvalidInput);
  EXPECT_EQ(io::rational_from_json(json::parse("[2, -4]")), Rational(-1, 2));
}

TEST(Io, GeometryRoundTrip) {
  Arrangement arr = gen::random_polysegments(8, 2, 11);
  auto polys = io::polysegments_from_json(reparse(io::arrangement_to_json(arr.polysegments)));
  ASSERT_EQ(polys.size(), arr.polysegments.size());
  for (std::size_t i = 0; i < polys.size(); ++i) EXPECT_EQ(polys[i].points, arr.polysegments[i].points);

  gen::BodyFamily fam = gen::random_rho_convex(6, 2);
  auto bodies = io::bodies_from_json(reparse(io::bodies_to_json(fam.bodies)));
  ASSERT_EQ(bodies.size(), fam.bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) EXPECT_EQ(bodies[i].ring, fam.bodies[i].ring);
}

TEST(Io, TriangulationRoundTrip) {
  PartialTriangulation p = make_partial_triangulation(6, 9, 0.7);
  PartialTriangulation back = io::triangulation_from_json(reparse(io::to_json(p)));
  EXPECT_EQ(back.faces, p.faces);
  EXPECT_EQ(back.graph, p.graph);
  EXPECT_THROW(io::triangulation_from_json(json::parse(R"({"k":3,"diagonals":[[3,1,"main"]]})")), InvalidInput);
  EXPECT_THROW(io::triangulation_from_json(json::parse(R"({"k":3,"diagonals":[[1,1,"up"]]})")), InvalidInput);
}

TEST(Io, Bundle) {
  PlanarizationBundle b = planarize(gen::random_segments(9, 4));
  json j = reparse(io::to_json(b));
  for (const char* key : {"G", "M", "H", "gb", "xi", "model_H", "model_gb"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("xi").get<int>(), b.xi);
  EXPECT_EQ(io::graph_from_json(j.at("gb")), b.gb);
  CContractionModel m = io::contraction_model_from_json(j.at("model_gb"));
  EXPECT_TRUE(validate_c_contraction(m));
  EXPECT_LE(m.c, b.xi + 1);
}

// ---------------------------------------------------------------------------
// generators

TEST(Generators, Deterministic) {
  auto dump = [](std::uint64_t seed) { return io::arrangement_to_json(gen::random_segments(10, seed).polysegments).dump(); };
  EXPECT_EQ(dump(1), dump(1));
  EXPECT_NE(dump(1), dump(2));
  EXPECT_EQ(io::bodies_to_json(gen::random_fat_convex(8, 3).bodies), io::bodies_to_json(gen::random_fat_convex(8, 3).bodies));
  EXPECT_EQ(gen::random_graph(9, 0.4, 5), gen::random_graph(9, 0.4, 5));
}

TEST(Generators, Families) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    gen::BodyFamily fat = gen::random_fat_convex(10, seed);
    EXPECT_NEAR(fatness(fat.bodies).alpha, fat.alpha, 1e-9);
    EXPECT_LE(fat.alpha, 2.0);
    gen::BodyFamily rho = gen::random_rho_convex(10, seed);
    EXPECT_GE(rho.rho, 1);
    EXPECT_LE(rho.rho, 3);
    Multigraph g = gen::random_connected_graph(10, 4, seed);
    EXPECT_TRUE(is_connected(g));
  }
}

TEST(Generators, GraphsUpToIsomorphism) {
  const std::size_t counts[] = {1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n) {
    auto gs = exp::graphs_up_to_isomorphism(n);
    ASSERT_EQ(gs.size(), counts[n - 1]) << n;
    EXPECT_EQ(gs.size(), oracle::all_graphs(n).size());
    std::set<oracle::Small> classes;
    for (const auto& g : gs) classes.insert(oracle::canonical(oracle::from_graph(g)));
    EXPECT_EQ(classes.size(), gs.size());
  }
  EXPECT_THROW(exp::graphs_up_to_isomorphism(7), CapExceeded);
}

// ---------------------------------------------------------------------------
// suites and the ratio experiment

TEST(Suites, SmallRuns) {
  exp::VerifyConfig cfg;
  cfg.trials = 8;
  cfg.max_n = 5;
  cfg.k_max = 9;
  for (int suite : {1, 3, 4, 5, 6, 7}) {
    exp::VerifyReport rep = exp::verify_suite(suite, cfg);
    EXPECT_EQ(rep.suite, suite);
    EXPECT_TRUE(rep.ok()) << suite << ": " << (rep.counterexamples.empty() ? "no cases" : rep.counterexamples.front());
  }
  EXPECT_THROW(exp::verify_suite(2, cfg), InvalidInput);
}

TEST(Experiment, RatioCsv) {
  exp::ExperimentConfig cfg;
  cfg.trials = 12;
  cfg.n_max = 8;
  cfg.seed = 3;
  auto rows = exp::run_ratio_experiment(cfg);
  std::ostringstream os;
  exp::write_ratio_csv(os, cfg, rows);
  auto lines = lines_of(os.str());
  ASSERT_EQ(lines.size(), rows.size() + 3);
  EXPECT_EQ(lines[0].rfind("# schema=bidim-ratio/1 family=segments seed=3 trials=12", 0), 0u);
  const std::size_t width = fields(lines[1]).size();
  for (std::size_t i = 2; i + 1 < lines.size(); ++i) EXPECT_EQ(fields(lines[i]).size(), width) << lines[i];
  EXPECT_EQ(lines.back().rfind("summary,instances=12,", 0), 0u);

  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_LE(r.tw_lower, r.tw_upper);
    if (r.tw_exact) {
      EXPECT_LE(r.tw_lower, *r.tw_exact);
      EXPECT_LE(*r.tw_exact, r.tw_upper);
    }
    if (r.xi == 0) {
      // crossing-free: gb has no edges
      EXPECT_EQ(r.gb_edges, 0);
      EXPECT_LE(r.tw_exact.value_or(0), 1);
      EXPECT_EQ(r.bg_exact.value_or(1), 1);
    }
    EXPECT_TRUE(r.chain_pass.value_or(true));
  }

  cfg.threads = 2;
  std::ostringstream again;
  exp::write_ratio_csv(again, cfg, exp::run_ratio_experiment(cfg));
  EXPECT_EQ(again.str(), os.str());
}

TEST(Experiment, ChainHoldsOnSegments) {
  exp::ExperimentConfig cfg;
  cfg.trials = 50;
  cfg.n_max = 10;
  exp::RatioSummary s = exp::summarize(exp::run_ratio_experiment(cfg));
  EXPECT_EQ(s.errors, 0);
  EXPECT_GT(s.certified, 0);
  EXPECT_EQ(s.passed, s.certified);
}
