#include "fixtures.hpp"

#include <doctest.h>

using namespace hybrid;

TEST_CASE("rationals") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("4") == 4);
  CHECK(to_string(Rational(6, -4)) == "-3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("presentations parse and serialize") {
  const PresentationSpec s = fixtures::spec("disc_mixed_21");
  const std::string text = dump(to_json(s));
  CHECK(parse_presentation(text) == s);
  CHECK(dump(to_json(parse_presentation(text))) == text);
  CHECK(text.back() == '\n');
}

TEST_CASE("malformed input reports a line") {
  try {
    parse_presentation("{\n  \"vertices\": [\"1\"],\n  \"arrows\": [ oops ]\n}\n");
    FAIL("expected an InputError");
  } catch (const InputError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_presentation("{\"vertices\": 3}"), InputError);
  CHECK_THROWS_AS(parse_presentation("{\"vertices\": [\"1\"], \"arrows\": [], \"c\": {\"a\": \"1/0\"}}"), InputError);
  CHECK_THROWS_AS(load_presentation("/nonexistent/file.json"), InputError);
}

TEST_CASE("relations serialize with their exceptions") {
  const auto d = fixtures::data("triangle_221");
  const auto j = to_json(d, generate_relations(d));
  CHECK(j.at("exceptions").size() == 4);
  CHECK(j.at("relations").at(0).contains("generator"));
}
