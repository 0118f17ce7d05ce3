#include "fixtures.hpp"

#include "hybrid/module.hpp"

#include <doctest.h>

using namespace hybrid;

TEST_CASE("basic modules") {
  const auto h = fixtures::algebra("triangle_nakayama");
  for (VertexId v = 0; v < 3; ++v) {
    const RightModule p = projective_module(h, v);
    CHECK(p.dim() == 4);
    CHECK(is_module(h, p));
    CHECK(top_dimension(h, p) == 1);
    CHECK(socle_dimension(h, p) == 1);
    CHECK(simple_module(h, v).dim() == 1);
    CHECK(middle_module(h, v).dim() == 2);
  }
  CHECK(zero_module(h).dim() == 0);
  CHECK(direct_sum(simple_module(h, 0), simple_module(h, 1)).dim() == 2);
}

TEST_CASE("Hom from a projective evaluates at its top") {
  const auto h = fixtures::algebra("five_vertex_surface");
  const RightModule m = middle_module(h, 1);
  for (VertexId v = 0; v < 5; ++v) CHECK(hom_dim(h, projective_module(h, v), m) == m.dims[static_cast<size_t>(v)]);
}

TEST_CASE("syzygies in a local dihedral algebra") {
  const auto h = fixtures::algebra("local_dihedral");
  const RightModule s = simple_module(h, 0);
  const RightModule om = omega(h, s);
  CHECK(om.dim() == 3);
  CHECK(is_indecomposable(h, om));
  const RightModule a = arrow_module(h, 0);
  const OmegaOrbit orbit = omega_orbit(h, a);
  REQUIRE(orbit.period.has_value());
  CHECK(*orbit.period == 2);
}

TEST_CASE("isomorphism test returns a checked witness") {
  const auto h = fixtures::algebra("triangle_nakayama");
  const RightModule p = projective_module(h, 0);
  const IsoResult same = iso_test(h, p, p);
  CHECK(same.isomorphic);
  REQUIRE(same.witness.has_value());
  CHECK(is_homomorphism(h, p, p, *same.witness));
  CHECK(is_invertible(*same.witness));
  CHECK_FALSE(iso_test(h, simple_module(h, 0), simple_module(h, 1)).isomorphic);
}

TEST_CASE("stable Hom kills projectives") {
  const auto h = fixtures::algebra("local_dihedral");
  CHECK(stable_hom_dim(h, projective_module(h, 0), simple_module(h, 0)) == 0);
  CHECK(stable_hom_dim(h, simple_module(h, 0), simple_module(h, 0)) == 1);
  CHECK(ext1_dim(h, simple_module(h, 0), simple_module(h, 0)) == 2);
}

TEST_CASE("module specs and elements parse") {
  const auto d = fixtures::data("local_dihedral");
  const auto h = build_algebra(d);
  const LinComb x = parse_element(d.quiver(), "alpha.alpha - 2/3*beta");
  CHECK(x.size() == 2);
  CHECK(parse_module_spec(h, "simple:1").dim() == 1);
  CHECK(parse_module_spec(h, "cyclic:alpha").dim() == 2);
  CHECK(parse_module_spec(h, "arrow:beta").dim() == 2);
  CHECK_THROWS(parse_module_spec(h, "simple:9"));
  CHECK_THROWS(parse_module_spec(h, "bogus:1"));
}

TEST_CASE("submodules and quotients") {
  const auto h = fixtures::algebra("local_dihedral");
  const RightModule p = projective_module(h, 0);
  const GradedSubspace rad = radical_of(h, p);
  CHECK(rad.dim() == 3);
  CHECK(is_submodule(h, p, rad));
  CHECK(quotient(h, p, rad).dim() == 1);
  CHECK(restrict_to(h, p, socle_of(h, p)).dim() == 1);
  CHECK(socle_annihilates(h, simple_module(h, 0)));
  CHECK_FALSE(socle_annihilates(h, p));
}
