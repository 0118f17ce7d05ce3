#include "fixtures.hpp"

#include "hybrid/corpus.hpp"

#include <doctest.h>

using namespace hybrid;

TEST_CASE("a corpus entry checks against its expected file") {
  const std::string name = "triangle_nakayama";
  const auto expected = nlohmann::json::parse(read_file(std::string(HYBRID_CORPUS_DIR) + "/expected/" + name + ".json"));
  const CorpusEntryReport ok = check_entry(name, fixtures::spec(name), expected);
  CHECK(ok.pass());

  auto perturbed = expected;
  perturbed["dimension_vector"][0] = 5;
  const CorpusEntryReport bad = check_entry(name, fixtures::spec(name), perturbed);
  CHECK_FALSE(bad.pass());
  bool named = false;
  for (const auto& c : bad.checks) named = named || (!c.pass && c.name == "dimension_vector");
  CHECK(named);
}
