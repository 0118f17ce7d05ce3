#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hybrid;

TEST_CASE("small algebras have the expected dimensions") {
  CHECK(fixtures::algebra("local_dihedral").dim() == 4);
  CHECK(dimension_vector(fixtures::algebra("triangle_nakayama")) == std::vector<int>{4, 4, 4});
  CHECK(dimension_vector(fixtures::algebra("five_vertex_surface")) == std::vector<int>{8, 10, 7, 8, 5});
  CHECK(fixtures::algebra("local_two_virtual_loops").dim() == 2);
}

TEST_CASE("normal forms respect the relations") {
  const auto d = fixtures::data("local_dihedral");
  const auto h = build_algebra(d);
  const Quiver& q = d.quiver();
  CHECK(is_zero(h.normal_form(q.path_from_names({"alpha", "beta"}))));
  CHECK(h.normal_form(q.path_from_names({"alpha", "alpha"})) == h.normal_form(q.path_from_names({"beta", "beta"})));
  CHECK(is_zero(h.normal_form(q.path_from_names({"alpha", "alpha", "alpha"}))));
  CHECK(h.multiply(h.one(), h.arrow(0)) == h.arrow(0));
  CHECK(h.nilpotency_length() >= 3);
}

TEST_CASE("Cartan matrices") {
  const auto c = cartan_matrix(fixtures::algebra("triangle_nakayama"));
  CHECK(c == std::vector<std::vector<int>>{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
}

TEST_CASE("a singular Cartan matrix") {
  const auto c = cartan_matrix(fixtures::algebra("third_singular_cartan"));
  MatrixQ m(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = c[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  CHECK(determinant(m) == 0);
}

TEST_CASE("symmetric form detection") {
  const auto yes = symmetric_form_exists(fixtures::algebra("local_semidihedral"));
  CHECK(yes.symmetric);
  CHECK(yes.functional.size() > 0);
  const auto no = symmetric_form_exists(fixtures::algebra("linear_sigma_1"));
  CHECK_FALSE(no.symmetric);
  CHECK_FALSE(no.certificate.empty());
  CHECK(symmetric_form_exists(fixtures::algebra("linear_sigma_2")).symmetric);
}

TEST_CASE("full validation") {
  CHECK(validate(fixtures::data("linear_sigma_minus1"), ValidationLevel::full).violations.front().rule ==
        rules::kNotSymmetric);
  CHECK(validate(fixtures::data("linear_sigma_minus1"), ValidationLevel::structural).ok());
  CHECK(validate(fixtures::data("four_vertex_mixed"), ValidationLevel::full).ok());
}

TEST_CASE("the cap is enforced") {
  PresentationSpec s = fixtures::spec("triangle_all_virtual");
  const auto d = BiserialQuiverData::from_spec(s);
  CHECK_THROWS_AS(build_algebra(d), CapExceeded);
  // the shape exclusion is reported before any build is attempted
  const ValidationReport r = validate(d, ValidationLevel::full);
  CHECK(fixtures::has_rule(r, rules::kTriangleAllVirtual));
  CHECK_FALSE(fixtures::has_rule(r, rules::kNotFinite));
}

TEST_CASE("blocks of a degenerate triangle") {
  const auto h = fixtures::algebra("triangle_degenerate_311");
  const auto blocks = block_decomposition(h);
  REQUIRE(blocks.size() == 2);
  std::vector<int> dims = {blocks[0].dim(), blocks[1].dim()};
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{1, 10});
}

TEST_CASE("Gabriel quiver drops virtual arrows") {
  const auto h = fixtures::algebra("triangle_221");
  const auto gq = gabriel_quiver(h);
  CHECK(gq.arrows.size() == 4);
  // every arrow of a Brauer graph algebra on a triangle is irreducible
  CHECK(gabriel_quiver(fixtures::algebra("triangle_brauer")).arrows.size() == 6);
  // in the Nakayama triangle the arrows outside T factor through the triangle
  CHECK(gabriel_quiver(fixtures::algebra("triangle_nakayama")).arrows.size() == 3);
}

TEST_CASE("corner algebras") {
  const auto h = fixtures::algebra("five_vertex_surface");
  const auto e = h.corner({0, 1});
  CHECK(e.dim() == static_cast<int>(h.basis_between(0, 0).size() + h.basis_between(0, 1).size() +
                                    h.basis_between(1, 0).size() + h.basis_between(1, 1).size()));
  CHECK(e.has_vertex(1));
  CHECK_FALSE(e.has_vertex(2));
}

TEST_CASE("radical layers and socle") {
  const auto h = fixtures::algebra("local_dihedral");
  CHECK(rank(h.radical_power(0)) == 4);
  CHECK(rank(h.radical_power(1)) == 3);
  CHECK(rank(h.radical_power(2)) == 1);
  CHECK(rank(h.radical_power(3)) == 0);
  CHECK(rank(h.right_socle()) == 1);
}
