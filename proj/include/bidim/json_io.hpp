#pragma once

// JSON encodings of graphs, models, decompositions, geometry and bundles.

#include "json.hpp"

#include <string>
#include <vector>

#include "bidim/geometry.hpp"
#include "bidim/gridminor.hpp"
#include "bidim/intersect.hpp"
#include "bidim/models.hpp"
#include "bidim/treewidth.hpp"

namespace bidim::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Graphs

inline json to_json(const Multigraph& g) {
  json j;
  j["vertices"] = g.vertices();
  j["edges"] = json::array();
  for (const Edge& e : g.edges()) j["edges"].push_back({e.id, e.u, e.v});
  return j;
}

inline Multigraph graph_from_json(const json& j) {
  try {
    Multigraph g;
    for (const auto& v : j.at("vertices")) g.add_vertex(v.get<VertexId>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw InvalidInput("graph JSON: edge must be [id, u, v]");
      g.add_edge(e[0].get<EdgeId>(), e[1].get<VertexId>(), e[2].get<VertexId>());
    }
    return g;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("graph JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Models

inline json to_json(const Image& im) {
  if (im.is_vertex()) return json{{"v", im.id}};
  if (im.is_edge()) return json{{"e", im.id}};
  return "star";
}

inline Image image_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "star") return Image::star();
  if (j.is_object() && j.contains("v")) return Image::vertex(j.at("v").get<int>());
  if (j.is_object() && j.contains("e")) return Image::edge(j.at("e").get<int>());
  throw InvalidInput("model JSON: image must be {\"v\":id}, {\"e\":id} or \"star\"");
}

inline json mapping_to_json(const EdgeMapping& m) {
  json j = json::object();
  for (const auto& [id, im] : m) j[std::to_string(id)] = to_json(im);
  return j;
}

inline EdgeMapping mapping_from_json(const json& j) {
  EdgeMapping m;
  for (const auto& [key, val] : j.items()) {
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size()) throw InvalidInput("model JSON: map key '" + key + "' is not an edge id");
    m[id] = image_from_json(val);
  }
  return m;
}

// Source is stored as its base graph; loop ids follow deterministically.
inline json to_json(const MinorModel& m) {
  return json{{"kind", "minor"}, {"source", to_json(m.source.base())}, {"target", to_json(m.target)}, {"map", mapping_to_json(m.map)}};
}

inline json to_json(const ContractionModel& m, int c = -1) {
  json j{{"kind", "contraction"}, {"source", to_json(m.source.base())}, {"target", to_json(m.target)}, {"map", mapping_to_json(m.map)}};
  if (c >= 0) j["c"] = c;
  return j;
}

inline json to_json(const CContractionModel& m) { return to_json(m.base, m.c); }

inline MinorModel minor_model_from_json(const json& j) {
  try {
    return MinorModel{with_loops(graph_from_json(j.at("source"))), graph_from_json(j.at("target")), mapping_from_json(j.at("map"))};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("model JSON: ") + e.what());
  }
}

inline CContractionModel contraction_model_from_json(const json& j) {
  try {
    ContractionModel base{with_loops(graph_from_json(j.at("source"))), graph_from_json(j.at("target")), mapping_from_json(j.at("map"))};
    CContractionModel m{std::move(base), 0};
    m.c = j.contains("c") ? j.at("c").get<int>() : contraction_parameter(m.base);
    return m;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("model JSON: ") + e.what());
  }
}

inline json to_json(const Validation& v) {
  if (v.ok()) return json{{"ok", true}};
  const Violation& x = v.violation();
  return json{{"ok", false},
              {"condition", static_cast<int>(x.condition)},
              {"condition_name", to_string(x.condition)},
              {"detail", x.detail},
              {"vertices", x.vertices},
              {"edges", x.edges}};
}

// ---------------------------------------------------------------------------
// Tree decompositions

inline json to_json(const TreeDecomposition& d) {
  json j;
  j["nodes"] = d.tree.vertices();
  j["tree_edges"] = json::array();
  for (const Edge& e : d.tree.edges()) j["tree_edges"].push_back({e.u, e.v});
  j["bags"] = json::object();
  for (const auto& [node, bag] : d.bags) j["bags"][std::to_string(node)] = bag;
  j["width"] = d.width;
  return j;
}

inline TreeDecomposition decomposition_from_json(const json& j) {
  try {
    TreeDecomposition d;
    for (const auto& n : j.at("nodes")) d.tree.add_vertex(n.get<int>());
    for (const auto& e : j.at("tree_edges")) d.tree.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& [key, bag] : j.at("bags").items()) d.bags[std::stoi(key)] = bag.get<std::vector<VertexId>>();
    d.width = j.contains("width") ? j.at("width").get<int>() : recompute_width(d);
    return d;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("decomposition JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Geometry

namespace detail {

inline json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw InvalidInput("geometry JSON: rational parts must be integers or integer strings");
}

}  // namespace detail

inline json to_json(const Rational& r) { return json::array({detail::integer_json(r.get_num()), detail::integer_json(r.get_den())}); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(detail::integer_from_json(j));
  if (!j.is_array() || j.size() != 2) throw InvalidInput("geometry JSON: rational must be [num, den]");
  mpz_class den = detail::integer_from_json(j[1]);
  if (den == 0) throw InvalidInput("geometry JSON: zero denominator");
  Rational r(detail::integer_from_json(j[0]), den);
  r.canonicalize();
  return r;
}

inline json to_json(const Point& p) { return json::array({to_json(p.x), to_json(p.y)}); }

inline Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("geometry JSON: point must be [x, y]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

inline json to_json(const Polysegment& c) {
  json j = json::array();
  for (const Point& p : c.points) j.push_back(to_json(p));
  return j;
}

inline Polysegment polysegment_from_json(const json& j) {
  Polysegment c;
  for (const auto& p : j) c.points.push_back(point_from_json(p));
  return c;
}

inline json arrangement_to_json(const std::vector<Polysegment>& polys) {
  json j;
  j["polysegments"] = json::array();
  for (const auto& c : polys) j["polysegments"].push_back(to_json(c));
  return j;
}

inline std::vector<Polysegment> polysegments_from_json(const json& j) {
  std::vector<Polysegment> out;
  for (const auto& c : j.at("polysegments")) out.push_back(polysegment_from_json(c));
  return out;
}

inline json crossings_to_json(const Arrangement& arr) {
  json j = json::array();
  for (const Crossing& c : arr.crossings) j.push_back({{"a", c.a}, {"b", c.b}, {"point", to_json(c.point)}});
  return j;
}

inline json bodies_to_json(const std::vector<SimplePolygon>& bodies) {
  json j;
  j["bodies"] = json::array();
  for (const auto& b : bodies) {
    json ring = json::array();
    for (const Point& p : b.ring) ring.push_back(to_json(p));
    j["bodies"].push_back(ring);
  }
  return j;
}

inline std::vector<SimplePolygon> bodies_from_json(const json& j) {
  std::vector<SimplePolygon> out;
  for (const auto& ring : j.at("bodies")) {
    std::vector<Point> pts;
    for (const auto& p : ring) pts.push_back(point_from_json(p));
    out.push_back(make_polygon(std::move(pts)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Triangulations and bundles

inline json to_json(const PartialTriangulation& p) {
  json j;
  j["k"] = p.base.k;
  j["diagonals"] = json::array();
  for (int y = 1; y < p.base.k; ++y)
    for (int x = 1; x < p.base.k; ++x) {
      Diagonal d = p.face(x, y);
      if (d != Diagonal::none) j["diagonals"].push_back({x, y, d == Diagonal::main ? "main" : "anti"});
    }
  return j;
}

inline PartialTriangulation triangulation_from_json(const json& j) {
  const int k = j.at("k").get<int>();
  if (k < 2) throw InvalidInput("triangulation JSON: k must be >= 2");
  std::vector<Diagonal> faces(static_cast<std::size_t>((k - 1) * (k - 1)), Diagonal::none);
  for (const auto& d : j.at("diagonals")) {
    int x = d.at(0).get<int>(), y = d.at(1).get<int>();
    std::string kind = d.at(2).get<std::string>();
    if (x < 1 || x >= k || y < 1 || y >= k) throw InvalidInput("triangulation JSON: face out of range");
    if (kind != "main" && kind != "anti") throw InvalidInput("triangulation JSON: diagonal must be main or anti");
    faces[(y - 1) * (k - 1) + (x - 1)] = kind == "main" ? Diagonal::main : Diagonal::anti;
  }
  return triangulate(k, std::move(faces));
}

inline json to_json(const PlanarizationBundle& b) {
  return json{{"G", to_json(b.G)},   {"M", b.M},
              {"H", to_json(b.H)},   {"gb", to_json(b.gb)},
              {"xi", b.xi},          {"model_H", to_json(b.model_H)},
              {"model_gb", to_json(b.model_gb)}};
}

}  // namespace bidim::io
