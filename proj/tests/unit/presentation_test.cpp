#include "fixtures.hpp"

#include <doctest.h>

#include <set>

using namespace hybrid;

namespace {

std::multiset<std::string> kinds(const RelationSet& r) {
  std::multiset<std::string> out;
  for (const auto& rel : r.relations) out.insert(to_string(rel.kind));
  return out;
}

std::string generator_of(const BiserialQuiverData& d, const RelationSet& r, RelationKind kind, const std::string& anchor) {
  for (const auto& rel : r.relations) {
    if (rel.kind == kind && d.quiver().arrow(rel.anchor).name == anchor) return d.quiver().format(rel.generator);
  }
  return "";
}

}  // namespace

TEST_CASE("relations without triangles") {
  const auto d = fixtures::data("local_dihedral");
  const RelationSet r = generate_relations(d);
  CHECK(kinds(r) == std::multiset<std::string>{"quadratic", "quadratic", "zeta", "zeta", "xi", "xi", "socle"});
  CHECK(r.exceptions.empty());
  CHECK(generator_of(d, r, RelationKind::quadratic, "alpha") == "alpha.beta");
  CHECK(generator_of(d, r, RelationKind::socle, "alpha") == "alpha.alpha - beta.beta");
}

TEST_CASE("a triangle contributes the socle prefix of the other arrow") {
  const auto d = fixtures::data("disc_quaternion_31");
  const RelationSet r = generate_relations(d);
  CHECK(generator_of(d, r, RelationKind::quadratic, "alpha") == "alpha.beta - 2*beta.sigma");
  CHECK(generator_of(d, r, RelationKind::loop_square, "sigma") == "-2*gamma.beta + sigma.sigma");
}

TEST_CASE("virtual arrows lift zeta and xi relations") {
  const auto d = fixtures::data("triangle_221");
  const RelationSet r = generate_relations(d);
  REQUIRE(r.exceptions.size() == 4);
  for (const auto& e : r.exceptions) {
    CHECK_FALSE(e.witness_critical);
    const std::string w = d.quiver().arrow(e.witness).name;
    CHECK((w == "a3" || w == "b3"));
  }
  CHECK(generator_of(d, r, RelationKind::zeta, "a1").empty());
  CHECK(generator_of(d, r, RelationKind::xi, "a1") == "a1.b1.b3");
}

TEST_CASE("special paths") {
  const auto d = fixtures::data("triangle_221");
  const auto cls = classify_arrows(d);
  const Quiver& q = d.quiver();
  const SpecialPaths sp = special_paths(d, cls, q.arrow_id("a1"));
  CHECK(q.format(sp.zeta) == "a1.a2.b2");
  CHECK(q.format(sp.xi) == "a1.b1.b3");
  REQUIRE(sp.zeta_witness.has_value());
  CHECK(q.arrow(*sp.zeta_witness).name == "b3");
  CHECK_FALSE(sp.xi_witness.has_value());
}

TEST_CASE("relation kind names") {
  CHECK(to_string(RelationKind::loop_square) == "loop-square");
  CHECK(to_string(RelationKind::socle) == "socle");
}
