#pragma once

#include "hybrid/quiver.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hybrid {

struct CorpusCheck {
  std::string name;
  bool pass = false;
  nlohmann::json expected, actual;
};

struct CorpusEntryReport {
  std::string name;
  std::vector<CorpusCheck> checks;
  bool pass() const;
};

struct CorpusReport {
  std::vector<CorpusEntryReport> entries;  // sorted by name
  bool pass() const;
  std::vector<std::string> failing_entries() const;
  nlohmann::json to_json() const;  // entry -> check -> {pass, expected, actual}
  std::string table() const;
};

// Compares one presentation against its expected-results document. Checks are
// emitted only for keys present in the expectation, except "serialization"
// and "violations" which always run.
CorpusEntryReport check_entry(const std::string& name, const PresentationSpec& spec, const nlohmann::json& expected);

// Every <dir>/*.json with its expectation at <dir>/expected/<same name>.
// A missing expectation or an unreadable presentation fails that entry.
CorpusReport run_corpus(const std::string& dir);

}  // namespace hybrid
