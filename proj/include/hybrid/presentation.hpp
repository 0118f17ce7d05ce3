#pragma once

#include "hybrid/path.hpp"
#include "hybrid/quiver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hybrid {

// quadratic:   a f(a) (minus a scalar times A_{bar a} when a is in T)
// loop_square: a^2 for an f-fixed loop, with socle and border terms
// zeta, xi:    the length-three zero relations
// socle:       c_a B_a - c_{bar a} B_{bar a}
enum class RelationKind { quadratic, loop_square, zeta, xi, socle };
std::string to_string(RelationKind k);

struct Relation {
  LinComb generator;
  RelationKind kind;
  ArrowId anchor;
};

// A zeta/xi relation that is not imposed because `witness` is virtual or critical.
struct RelationException {
  RelationKind kind;
  ArrowId anchor;
  ArrowId witness;
  bool witness_critical;
};

struct RelationSet {
  std::vector<Relation> relations;
  std::vector<RelationException> exceptions;
};

struct SpecialPaths {
  Path zeta;  // a f(a) g(f(a))
  Path xi;    // a g(a) f(g(a))
  std::optional<ArrowId> zeta_witness;
  std::optional<ArrowId> xi_witness;
};

SpecialPaths special_paths(const BiserialQuiverData& data, const ArrowClassification& cls, ArrowId a);

RelationSet generate_relations(const BiserialQuiverData& data, const ArrowClassification& cls);
inline RelationSet generate_relations(const BiserialQuiverData& data) {
  return generate_relations(data, classify_arrows(data));
}

}  // namespace hybrid
