#include "fixtures.hpp"

#include "hybrid/constructions.hpp"
#include "hybrid/detectors.hpp"

#include <doctest.h>

using namespace hybrid;

TEST_CASE("star splits every arrow outside the triangles") {
  const auto d = fixtures::data("local_dihedral");
  const StarResult s = star(d);
  CHECK(s.splits.size() == 2);
  CHECK(s.data.quiver().vertex_count() == 3);
  CHECK(s.data.quiver().arrow_count() == 6);
  CHECK(s.data.all_triangles());
  CHECK(split_first_name("alpha") == "alpha'");
  CHECK(split_second_name("alpha") == "alpha''");
  CHECK(closing_name("alpha") == "eps_alpha");
  CHECK(split_vertex_name("alpha") == "x_alpha");
  CHECK(validate(s.data, ValidationLevel::full).ok());
}

TEST_CASE("star leaves an all-triangle presentation alone") {
  const auto d = fixtures::data("triangle_nakayama");
  // b-orbit is outside T
  const StarResult s = star(d);
  CHECK(s.splits.size() == 3);
  const auto surface = fixtures::data("five_vertex_surface");
  const StarResult same = star(surface);
  CHECK(same.splits.empty());
  CHECK(same.data.quiver().vertex_count() == 5);
}

TEST_CASE("the closing parameter moves off 1 when needed") {
  const StarResult s = star(fixtures::data("local_truncated_cube"));
  CHECK(validate(s.data, ValidationLevel::full).ok());
  bool moved = false;
  for (const auto& cc : s.closing_cycles) moved = moved || cc.parameter != 1;
  CHECK(moved);
}

TEST_CASE("contracting to every vertex is the identity") {
  const auto d = fixtures::data("disc_mixed_21");
  const auto h = build_algebra(d);
  const ContractionResult r = contract(d, h, {0, 1});
  CHECK(r.is_full);
  REQUIRE(r.blocks.size() == 1);
  CHECK(r.blocks[0].dimensions_match);
  CHECK(r.ok());
  CHECK_THROWS_AS(contract(d, h, {}), std::invalid_argument);
  CHECK_THROWS_AS(contract(d, h, {7}), std::invalid_argument);
}

TEST_CASE("a proper contraction of a surface algebra") {
  const auto d = fixtures::data("triangle_brauer");
  const auto h = build_algebra(d);
  const ContractionResult r = contract(d, h, {0, 1});
  CHECK(r.ok());
  for (const auto& b : r.blocks) {
    CHECK(b.generates);
    CHECK(b.relations_vanish);
    CHECK(b.dims == b.corner_dims);
  }
}

TEST_CASE("round trip through the star") {
  const RoundtripReport r = roundtrip_verify(fixtures::data("local_dihedral"));
  CHECK(r.star_valid);
  CHECK(r.ok());
  CHECK(r.h_dims == r.block_dims);
}

TEST_CASE("separated quiver components") {
  const auto d = fixtures::data("triangle_nakayama");
  const auto comps = separated_components(d.quiver());
  int arrows = 0;
  for (const auto& c : comps) {
    arrows += 2 * c.rank();
    CHECK(c.alpha.front() <= c.beta.front());
  }
  CHECK(arrows == 6);
  CHECK_FALSE(gabriel_quiver_is_two_regular(d, build_algebra(d)));
  const auto b = fixtures::data("triangle_brauer");
  CHECK(gabriel_quiver_is_two_regular(b, build_algebra(b)));
  const auto v = fixtures::data("triangle_221");
  CHECK_FALSE(gabriel_quiver_is_two_regular(v, build_algebra(v)));
}

TEST_CASE("detector pair products vanish") {
  const auto d = fixtures::data("four_vertex_brauer");
  const auto h = build_algebra(d);
  for (const auto& c : separated_components(d.quiver())) {
    if (c.rank() < 2) continue;
    const DetectorPair pair = build_detecting_pair(d, h, c, Rational(2));
    CHECK(pair.st_zero);
    CHECK(pair.ts_zero);
    const RightModule m = simple_module(h, c.i.front());
    const ExactnessReport rep = check_detector_exactness(h, pair, m);
    CHECK(rep.socle_annihilates);
  }
  CHECK_FALSE(detector_parameters().empty());
}
