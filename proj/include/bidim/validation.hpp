#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace bidim {

// Which rule a certificate broke. The numbered minor-model conditions keep
// their numbers; the rest are structural or come from other certificates.
enum class Condition {
  totality = 0,            // mapping not total / refers to unknown ids
  solid = 1,               // preimage of a target vertex empty or not solid
  disjoint = 2,            // two branch sets share a vertex
  edge_endpoints = 3,      // preimage of a target edge does not join the right branch sets
  unique_edge = 4,         // target edge without exactly one preimage
  distance = 5,            // distance domination fails
  no_star = 6,             // contraction model maps something to the star
  edge_coverage = 7,       // contraction model leaves a target edge without preimage
  part_size = 8,           // c-contraction part has more than c edges
  cover = 9,               // tree decomposition: vertex in no bag
  edge_in_bag = 10,        // tree decomposition: edge in no bag
  connected_occurrence = 11,  // tree decomposition: bags holding a vertex not a subtree
  tree_shape = 12,         // tree decomposition: tree not a tree / bag keys mismatch
  width = 13,              // declared width differs from recomputed width
};

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::totality: return "totality";
    case Condition::solid: return "condition 1 (solid preimage)";
    case Condition::disjoint: return "condition 2 (disjoint branch sets)";
    case Condition::edge_endpoints: return "condition 3 (edge endpoints)";
    case Condition::unique_edge: return "condition 4 (unique edge preimage)";
    case Condition::distance: return "condition 5 (distance domination)";
    case Condition::no_star: return "contraction: star in range";
    case Condition::edge_coverage: return "contraction: target edge without preimage";
    case Condition::part_size: return "c-contraction: part too large";
    case Condition::cover: return "decomposition property 1 (cover)";
    case Condition::edge_in_bag: return "decomposition property 2 (edge in bag)";
    case Condition::connected_occurrence: return "decomposition property 3 (subtree)";
    case Condition::tree_shape: return "decomposition tree shape";
    case Condition::width: return "decomposition width";
  }
  return "unknown";
}

struct Violation {
  Condition condition = Condition::totality;
  std::string detail;
  std::vector<int> vertices;
  std::vector<int> edges;
};

inline std::ostream& operator<<(std::ostream& os, const Violation& v) {
  os << to_string(v.condition) << ": " << v.detail;
  return os;
}

// Result of checking a certificate: ok, or the first violated rule.
class Validation {
 public:
  static Validation pass() { return Validation{}; }
  static Validation fail(Violation v) {
    Validation r;
    r.violation_ = std::move(v);
    return r;
  }
  static Validation fail(Condition c, std::string detail, std::vector<int> vertices = {}, std::vector<int> edges = {}) {
    return fail(Violation{c, std::move(detail), std::move(vertices), std::move(edges)});
  }

  bool ok() const { return !violation_.has_value(); }
  explicit operator bool() const { return ok(); }
  const Violation& violation() const { return *violation_; }
  Condition condition() const { return violation_->condition; }

  std::string message() const {
    if (ok()) return "ok";
    return std::string(to_string(violation_->condition)) + ": " + violation_->detail;
  }

 private:
  std::optional<Violation> violation_;
};

}  // namespace bidim
