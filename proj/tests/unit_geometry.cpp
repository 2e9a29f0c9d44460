#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bidim/bidim.hpp"
#include "oracles.hpp"

using namespace bidim;

namespace {

Polysegment seg(long ax, long ay, long bx, long by) { return Polysegment{{Point(ax, ay), Point(bx, by)}}; }

Polysegment chain(std::initializer_list<std::pair<long, long>> pts) {
  Polysegment c;
  for (auto [x, y] : pts) c.points.push_back(Point(x, y));
  return c;
}

SimplePolygon rect(long x0, long y0, long x1, long y1) { return make_polygon({Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)}); }

SimplePolygon l_body(long x, long y) {
  // arms of length 10, width 2
  return make_polygon({Point(x, y), Point(x + 10, y), Point(x + 10, y + 2), Point(x + 2, y + 2), Point(x + 2, y + 10), Point(x, y + 10)});
}

bool same_labelled(const Multigraph& a, const Multigraph& b) {
  std::map<VertexId, VertexId> id;
  for (VertexId v : a.vertices()) id[v] = v;
  return isomorphic_under(simplify(a), simplify(b), id);
}

}  // namespace

// ---------------------------------------------------------------------------
// geometry

TEST(Geometry, CrossingPoints) {
  auto x = segment_crossings(seg(0, 0, 1, 1), seg(0, 1, 1, 0));
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x[0], Point(Rational(1, 2), Rational(1, 2)));

  EXPECT_TRUE(segment_crossings(seg(0, 0, 4, 0), seg(0, 1, 4, 1)).empty());

  auto skew = segment_crossings(seg(0, 0, 3, 1), seg(0, 1, 2, 0));
  ASSERT_EQ(skew.size(), 1u);
  EXPECT_EQ(skew[0], Point(Rational(6, 5), Rational(2, 5)));

  auto zig = segment_crossings(chain({{0, 0}, {1, 2}, {2, 0}, {3, 2}}), seg(-1, 1, 4, 1));
  ASSERT_EQ(zig.size(), 3u);
  EXPECT_EQ(zig[0], Point(Rational(1, 2), Rational(1)));
  EXPECT_EQ(zig[1], Point(Rational(3, 2), Rational(1)));
  EXPECT_EQ(zig[2], Point(Rational(5, 2), Rational(1)));

  EXPECT_THROW(segment_crossings(seg(0, 0, 2, 2), seg(1, 1, 3, 3)), GeometryError);
}

TEST(Geometry, PolysegmentValidity) {
  EXPECT_FALSE(polysegment_defect(chain({{0, 0}, {2, 0}, {2, 2}})));
  EXPECT_TRUE(polysegment_defect(chain({{0, 0}, {2, 2}, {2, 0}, {0, 2}})));  // bow tie
  EXPECT_THROW(build_arrangement({chain({{0, 0}, {2, 2}, {2, 0}, {0, 2}})}), GeometryError);
}

TEST(Geometry, Arrangements) {
  Arrangement two = build_arrangement({seg(0, 0, 2, 2), seg(0, 2, 2, 0)});
  EXPECT_EQ(two.crossings.size(), 1u);
  EXPECT_EQ(xi(two), 1);

  try {
    build_arrangement({seg(0, 0, 2, 2), seg(0, 2, 2, 0), seg(1, 0, 1, 2)});
    FAIL() << "triple point accepted";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), GeometryError::Kind::triple_point);
  }

  std::vector<Polysegment> spine{seg(0, 0, 100, 0)};
  for (int i = 0; i < 5; ++i) spine.push_back(seg(10 + 20 * i, -5, 12 + 20 * i, 5));
  EXPECT_EQ(xi(build_arrangement(spine)), 5);

  for (int r : {2, 3, 5}) {
    std::vector<Polysegment> grid;
    for (int i = 0; i < r; ++i) grid.push_back(seg(0, 2 * i + 1, 2 * r, 2 * i + 1));
    for (int i = 0; i < r; ++i) grid.push_back(seg(2 * i + 1, 0, 2 * i + 1, 2 * r));
    EXPECT_EQ(xi(build_arrangement(grid)), r);
  }
}

TEST(Geometry, RandomArrangementsAgreeWithPairwiseOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Arrangement arr = gen::random_segments(20, seed, 200);
    Multigraph ref = oracle::segment_graph(arr);
    EXPECT_TRUE(same_labelled(intersection_graph(arr), ref));
    // straight segments cross at most once per pair and never three at a point
    int max_deg = 0;
    for (VertexId v : ref.vertices()) max_deg = std::max(max_deg, ref.degree(v));
    EXPECT_EQ(xi(arr), max_deg);
  }
}

TEST(Geometry, GeneralPosition) {
  std::vector<Point> generic{Point(0, 0), Point(5, 1), Point(2, 7), Point(9, 4)};
  EXPECT_TRUE(in_general_position(generic));
  EXPECT_EQ(perturb_general_position(generic, Rational(1, 100), 3), generic);

  std::vector<Point> line{Point(0, 0), Point(1, 1), Point(2, 2), Point(7, 3)};
  EXPECT_EQ(general_position_defects(line), (std::set<std::size_t>{0, 1, 2}));
  auto moved = perturb_general_position(line, Rational(1, 100), 3);
  EXPECT_TRUE(in_general_position(moved));
  EXPECT_NE(orientation(moved[0], moved[1], moved[2]), 0);
  for (std::size_t i = 0; i < line.size(); ++i) {
    EXPECT_LE(abs(moved[i].x - line[i].x), Rational(1, 100));
    EXPECT_LE(abs(moved[i].y - line[i].y), Rational(1, 100));
  }

  std::vector<Point> dup{Point(1, 1), Point(1, 1), Point(4, 0)};
  EXPECT_FALSE(in_general_position(dup));
  auto apart = perturb_general_position(dup, Rational(1, 10), 5);
  EXPECT_NE(apart[0], apart[1]);
}

TEST(Geometry, Fatness) {
  FatnessReport sq = fatness({rect(0, 0, 1, 1)});
  EXPECT_NEAR(sq.alpha, std::sqrt(2.0), 1e-6);
  for (int n : {4, 6, 8}) {
    FatnessReport r = fatness({gen::regular_polygon(n, 0, 0, 1.0, 0.3)});
    EXPECT_NEAR(r.alpha, 1 / std::cos(std::numbers::pi / n), 1e-6) << n << "-gon";
  }
  EXPECT_NEAR(fatness({gen::regular_polygon(64, 0, 0, 1.0)}).alpha, 1.0, 0.02);
  FatnessReport mixed = fatness({rect(0, 0, 10, 1), rect(20, 0, 21, 1)});
  EXPECT_NEAR(mixed.alpha, std::sqrt(101.0), 1e-6);
}

TEST(Geometry, GeodesicPaths) {
  SimplePolygon sq = rect(0, 0, 4, 4);
  Polysegment straight = geodesic_path(sq, Point(1, 1), Point(3, 2));
  EXPECT_EQ(straight.length(), 1u);

  SimplePolygon l = l_body(0, 0);
  Polysegment bend = geodesic_path(l, Point(9, 1), Point(1, 9));
  ASSERT_EQ(bend.length(), 2u);
  EXPECT_EQ(bend.points[1], Point(2, 2));
  EXPECT_TRUE(polysegment_inside(l, bend));

  Polysegment still = geodesic_path(sq, Point(2, 2), Point(2, 2));
  EXPECT_EQ(still.length(), 0u);
}

TEST(Geometry, PolygonPredicates) {
  SimplePolygon l = l_body(0, 0);
  EXPECT_FALSE(is_convex(l));
  EXPECT_TRUE(is_convex(rect(0, 0, 3, 1)));
  EXPECT_TRUE(strictly_inside(l, Point(1, 5)));
  EXPECT_FALSE(strictly_inside(l, Point(5, 5)));
  EXPECT_FALSE(strictly_inside(l, Point(0, 5)));
  EXPECT_TRUE(on_boundary(l, Point(0, 5)));
  for (const Point& p : {Point(1, 5), Point(5, 5), Point(0, 5), Point(2, 2), Point(6, 1)})
    EXPECT_EQ(strictly_inside(l, p), oracle::strictly_inside(l.ring, oracle::q2(p)));
}

// ---------------------------------------------------------------------------
// intersect-build

TEST(IntersectBuild, IntersectionGraphs) {
  Multigraph k2 = intersection_graph(build_arrangement({seg(0, 0, 2, 2), seg(0, 2, 2, 0)}));
  EXPECT_EQ(k2.num_edges(), 1u);

  Arrangement tri = build_arrangement({seg(0, 0, 10, 0), seg(1, -1, 6, 9), seg(9, -1, 4, 9)});
  Multigraph k3 = intersection_graph(tri);
  EXPECT_EQ(k3.num_edges(), 3u);

  Arrangement twice = build_arrangement({chain({{0, 0}, {2, 2}, {4, 0}}), seg(0, 1, 4, 1)});
  EXPECT_EQ(twice.crossings.size(), 2u);
  Multigraph g = intersection_graph(twice);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.is_simple());
}

TEST(IntersectBuild, PlanarizeTwoSegments) {
  Arrangement arr = build_arrangement({seg(0, 0, 2, 2), seg(0, 2, 2, 0)});
  PlanarizationBundle b = planarize(arr);
  EXPECT_EQ(b.G.num_vertices(), 6u);
  EXPECT_EQ(b.M.size(), 1u);
  EXPECT_TRUE(is_planar(b.H));
  EXPECT_EQ(b.gb.num_vertices(), 2u);
  EXPECT_EQ(b.gb.num_edges(), 1u);
  EXPECT_TRUE(check_bundle(b, arr).ok());
}

TEST(IntersectBuild, PlanarizeCrossingFree) {
  Arrangement arr = build_arrangement({seg(0, 0, 1, 0), seg(0, 2, 1, 2), seg(0, 4, 1, 4)});
  PlanarizationBundle b = planarize(arr);
  EXPECT_TRUE(b.M.empty());
  EXPECT_EQ(b.G.num_edges(), 3u);
  EXPECT_EQ(b.gb.num_edges(), 0u);
  EXPECT_TRUE(check_bundle(b, arr).ok());
}

TEST(IntersectBuild, PlanarizeTriangle) {
  Arrangement arr = build_arrangement({seg(0, 0, 10, 0), seg(1, -1, 6, 9), seg(9, -1, 4, 9)});
  PlanarizationBundle b = planarize(arr);
  EXPECT_EQ(b.xi, 2);
  EXPECT_EQ(b.gb.num_edges(), 3u);
  EXPECT_TRUE(is_planar(b.H));
  EXPECT_EQ(b.model_H.c, 1);
  EXPECT_LE(b.model_gb.c, 3);
  EXPECT_TRUE(oracle::model_ok(MinorModel{b.model_H.base.source, b.model_H.base.target, b.model_H.base.map}, false, true));
  EXPECT_TRUE(oracle::model_ok(MinorModel{b.model_gb.base.source, b.model_gb.base.target, b.model_gb.base.map}, false, true));
  EXPECT_TRUE(check_bundle(b, arr).ok());
}

TEST(IntersectBuild, PlanarizeRandomPolysegments) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Arrangement arr = gen::random_polysegments(12, 2, seed, 300);
    PlanarizationBundle b = planarize(arr);
    EXPECT_TRUE(check_bundle(b, arr).ok()) << "seed " << seed;
    EXPECT_TRUE(same_labelled(b.gb, oracle::segment_graph(arr)));
  }
}

TEST(IntersectBuild, ContactPoints) {
  std::vector<SimplePolygon> two{rect(0, 0, 4, 4), rect(2, 1, 6, 3)};
  ContactPointSet cs = contact_points(two);
  ASSERT_EQ(cs.pair_point.size(), 1u);
  const Point& p = cs.pair_point.begin()->second;
  SimplePolygon overlap = rect(2, 1, 4, 3);
  EXPECT_TRUE(strictly_inside(overlap, p));
  EXPECT_TRUE(oracle::strictly_inside(overlap.ring, oracle::q2(p)));
  EXPECT_EQ(cs.delta, 1);

  ContactPointSet apart = contact_points({rect(0, 0, 1, 1), rect(3, 3, 4, 4)});
  EXPECT_TRUE(apart.pair_point.empty());
  EXPECT_EQ(apart.body_point.size(), 2u);

  try {
    contact_points({rect(0, 0, 2, 2), rect(2, 0, 4, 2)});
    FAIL() << "boundary-only contact accepted";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), GeometryError::Kind::empty_interior);
  }
}

TEST(IntersectBuild, RhoConvexModels) {
  std::vector<SimplePolygon> pair{rect(0, 0, 4, 4), rect(3, 1, 8, 3)};
  BodyModel m = model_rho_convex(pair, contact_points(pair), 1);
  EXPECT_TRUE(same_labelled(intersection_graph(m.arrangement), body_intersection_graph(pair)));

  std::vector<SimplePolygon> alone{rect(0, 0, 2, 2)};
  BodyModel single = model_rho_convex(alone, contact_points(alone), 1);
  EXPECT_TRUE(single.arrangement.polysegments[0].is_point());

  // three L-shapes in a chain
  std::vector<SimplePolygon> ls{l_body(0, 0), l_body(8, 1), l_body(16, 2)};
  ContactPointSet cs = contact_points(ls);
  EXPECT_EQ(cs.delta, 2);
  BodyModel lm = model_rho_convex(ls, cs, 2);
  EXPECT_TRUE(same_labelled(intersection_graph(lm.arrangement), body_intersection_graph(ls)));
  EXPECT_TRUE(same_labelled(body_intersection_graph(ls), oracle::body_graph(ls)));
  for (int c : lm.crossings) EXPECT_LE(c, lm.crossing_bound);
  for (std::size_t i = 0; i < ls.size(); ++i) EXPECT_TRUE(polysegment_inside(ls[i], lm.arrangement.polysegments[i]));
}

TEST(IntersectBuild, FatConvexModels) {
  std::vector<SimplePolygon> squares;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) squares.push_back(rect(3 * i, 3 * j, 3 * i + 2, 3 * j + 2));
  squares.push_back(rect(1, 1, 4, 4));
  ContactPointSet cs = contact_points(squares);
  BodyModel m = model_fat_convex(squares, cs, 3);
  EXPECT_TRUE(fat_degree_check(m.delta, m.alpha, 3));
  EXPECT_TRUE(same_labelled(intersection_graph(m.arrangement), body_intersection_graph(squares)));

  std::vector<SimplePolygon> isolated{rect(0, 0, 1, 1), rect(5, 5, 6, 6)};
  BodyModel iso = model_fat_convex(isolated, contact_points(isolated), 1);
  EXPECT_EQ(iso.delta, 0);
  EXPECT_EQ(intersection_graph(iso.arrangement).num_edges(), 0u);

  EXPECT_THROW(require_fat_degree(gen::disk_stack(50), 3), PreconditionError);
  EXPECT_THROW(model_fat_convex({l_body(0, 0)}, contact_points({l_body(0, 0)}), 3), PreconditionError);
}

TEST(IntersectBuild, GeneratedFamiliesTouchEquivalent) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    gen::BodyFamily rho = gen::random_rho_convex(8, seed);
    EXPECT_TRUE(same_labelled(body_intersection_graph(rho.bodies), oracle::body_graph(rho.bodies)));
    BodyModel rm = model_with_retries(rho.bodies, seed, 8, [&](const ContactPointSet& cs) { return model_rho_convex(rho.bodies, cs, rho.rho); });
    EXPECT_TRUE(same_labelled(intersection_graph(rm.arrangement), oracle::body_graph(rho.bodies)));

    gen::BodyFamily fat = gen::random_fat_convex(8, seed, 1.5);
    EXPECT_LE(fat.alpha, 1.5);
    EXPECT_TRUE(same_labelled(body_intersection_graph(fat.bodies), oracle::body_graph(fat.bodies)));
    BodyModel fm = model_with_retries(fat.bodies, seed, 8, [&](const ContactPointSet& cs) { return model_fat_convex(fat.bodies, cs, 3); });
    EXPECT_TRUE(same_labelled(intersection_graph(fm.arrangement), oracle::body_graph(fat.bodies)));
  }
}
