#include "fixtures.hpp"

#include <doctest.h>

using namespace hybrid;

namespace {

Quiver triangle() {
  return Quiver({"1", "2", "3"}, {{{"a1", "1", "2"}}, {{"a2", "2", "3"}}, {{"a3", "3", "1"}}, {{"b1", "2", "1"}},
                                  {{"b3", "1", "3"}}, {{"b2", "3", "2"}}});
}

}  // namespace

TEST_CASE("quiver stores arrows in name order") {
  const Quiver q({"x", "y"}, {{{"zeta", "x", "y"}}, {{"alpha", "y", "x"}}});
  CHECK(q.arrow(0).name == "alpha");
  CHECK(q.arrow(1).name == "zeta");
  CHECK(q.vertex("y") == 1);
  CHECK(q.outgoing(0) == std::vector<ArrowId>{1});
  CHECK_FALSE(q.find_arrow("beta").has_value());
  CHECK_THROWS_AS(q.arrow_id("beta"), std::out_of_range);
}

TEST_CASE("quiver rejects duplicates and unknown endpoints") {
  CHECK_THROWS_AS(Quiver({"1", "1"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Quiver({"1"}, {{{"a", "1", "1"}}, {{"a", "1", "1"}}}), std::invalid_argument);
  CHECK_THROWS_AS(Quiver({"1"}, {{{"a", "1", "2"}}}), std::invalid_argument);
}

TEST_CASE("two-regularity and connectivity") {
  const Quiver q = triangle();
  CHECK(q.is_two_regular());
  CHECK(q.is_connected());
  const Quiver split({"1", "2"}, {{{"a", "1", "1"}}, {{"b", "2", "2"}}});
  CHECK_FALSE(split.is_two_regular());
  CHECK_FALSE(split.is_connected());
}

TEST_CASE("paths compose only along matching endpoints") {
  const Quiver q = triangle();
  const Path p = q.path_from_names({"a1", "a2", "a3"});
  CHECK(p.source == 0);
  CHECK(p.target == 0);
  CHECK(q.format(p) == "a1.a2.a3");
  CHECK(q.format(stationary_path(1)) == "e_2");
  CHECK_THROWS_AS(q.path_from_names({"a1", "a1"}), CompositionError);
  CHECK_THROWS_AS(concat(q.path_from_names({"a1"}), q.path_from_names({"a1"})), CompositionError);
}

TEST_CASE("path order is by length, then arrow names") {
  const Quiver q = triangle();
  CHECK(q.path_from_names({"b3"}) < q.path_from_names({"a1", "a2"}));
  CHECK(q.path_from_names({"a1"}) < q.path_from_names({"b1"}));
}

TEST_CASE("linear combinations cancel and multiply") {
  const Quiver q = triangle();
  const Path a = q.path_from_names({"a1"}), b = q.path_from_names({"a2"});
  LinComb x(a, 2);
  x.add(a, -2);
  CHECK(x.empty());
  const LinComb prod = LinComb(a, 3) * LinComb(b, Rational(1, 3));
  REQUIRE(prod.size() == 1);
  CHECK(prod.terms().begin()->first == q.path_from_names({"a1", "a2"}));
  CHECK(prod.terms().begin()->second == 1);
  CHECK((LinComb(b) * LinComb(b)).empty());
  CHECK(prod.max_length() == 2);
}

TEST_CASE("permutations") {
  const Permutation p = {1, 2, 0, 3};
  CHECK(compose(p, inverse(p)) == Permutation{0, 1, 2, 3});
  CHECK(orbits(p) == std::vector<std::vector<ArrowId>>{{0, 1, 2}, {3}});
}

TEST_CASE("bar swaps arrows with a common source and g = bar f") {
  const Quiver q = triangle();
  const Permutation bar = bar_involution(q);
  CHECK(bar[q.arrow_id("a1")] == q.arrow_id("b3"));
  CHECK(bar[q.arrow_id("a2")] == q.arrow_id("b1"));
  Permutation f(6);
  f[q.arrow_id("a1")] = q.arrow_id("a2");
  f[q.arrow_id("a2")] = q.arrow_id("a3");
  f[q.arrow_id("a3")] = q.arrow_id("a1");
  f[q.arrow_id("b1")] = q.arrow_id("b3");
  f[q.arrow_id("b3")] = q.arrow_id("b2");
  f[q.arrow_id("b2")] = q.arrow_id("b1");
  const Permutation g = derive_g(f, q);
  CHECK(g[q.arrow_id("a1")] == q.arrow_id("b1"));
  Permutation broken = f;
  std::swap(broken[q.arrow_id("a1")], broken[q.arrow_id("a2")]);
  CHECK_THROWS_AS(derive_g(broken, q), std::invalid_argument);
}

TEST_CASE("structural data of a corpus entry") {
  const auto d = fixtures::data("disc_quaternion_31");
  const Quiver& q = d.quiver();
  const ArrowId alpha = q.arrow_id("alpha"), sigma = q.arrow_id("sigma");
  CHECK(d.f(sigma) == sigma);
  CHECK(d.f_orbit_length(sigma) == 1);
  CHECK(d.socle_length(alpha) == 3);
  CHECK(q.format(d.socle_path(alpha)) == "alpha.alpha.alpha");
  CHECK(q.format(d.socle_prefix(alpha)) == "alpha.alpha");
  CHECK(d.all_triangles());
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    CHECK(d.g(d.g_inv(a)) == a);
    CHECK(d.bar(d.bar(a)) == a);
    CHECK(d.g(a) == d.bar(d.f(a)));
  }
}

TEST_CASE("canonical spec round trips") {
  for (const char* name : {"disc_mixed_21", "five_vertex_mixed", "local_semidihedral_virtual"}) {
    const auto d = fixtures::data(name);
    const PresentationSpec canon = d.to_spec();
    CHECK(BiserialQuiverData::from_spec(canon).to_spec() == canon);
  }
}

TEST_CASE("arrow classification") {
  const auto loops = fixtures::data("local_two_virtual_loops");
  const auto cls = classify_arrows(loops);
  CHECK(cls[0].virtual_kind == VirtualKind::biserial_loop);
  CHECK(cls[1].virtual_kind == VirtualKind::biserial_loop);

  const auto tri = fixtures::data("triangle_221");
  const auto tcls = classify_arrows(tri);
  CHECK(tcls[tri.quiver().arrow_id("a3")].virtual_kind == VirtualKind::beside_triangle);
  CHECK_FALSE(tcls[tri.quiver().arrow_id("a1")].is_virtual());
  for (VertexKind k : classify_vertices(tri)) CHECK(k == VertexKind::quaternion);
  CHECK(to_string(VertexKind::hybrid) == "hybrid");

  const auto dihedral = fixtures::data("local_dihedral");
  CHECK(classify_vertices(dihedral)[0] == VertexKind::biserial);
}

TEST_CASE("structural validation reports every violation") {
  PresentationSpec s = fixtures::spec("triangle_nakayama");
  s.m["a1"] = 0;
  s.triangles = {"b1"};
  const ValidationReport r = validate_structural(s);
  CHECK(fixtures::has_rule(r, rules::kWeights));
  CHECK_THROWS_AS(BiserialQuiverData::from_spec(s), InvalidPresentation);

  PresentationSpec missing = fixtures::spec("triangle_nakayama");
  missing.arrows.pop_back();
  CHECK(fixtures::has_rule(validate_structural(missing), rules::kTwoRegular));
}

TEST_CASE("shape exclusions") {
  CHECK(fixtures::has_rule(validate_structural(fixtures::spec("local_quaternion_unit_weight")),
                           rules::kLocalAllTriangles));
  CHECK(fixtures::has_rule(validate_structural(fixtures::spec("local_semidihedral_border")), rules::kLocalBorder));
  CHECK(fixtures::has_rule(validate_structural(fixtures::spec("disc_quaternion_21")), rules::kDiscVirtualLoop));
  CHECK(fixtures::has_rule(validate_structural(fixtures::spec("triangle_all_virtual")), rules::kTriangleAllVirtual));
  CHECK(validate_structural(fixtures::spec("five_vertex_surface")).ok());
}
