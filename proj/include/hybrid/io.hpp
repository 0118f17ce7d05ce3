#pragma once

#include "hybrid/presentation.hpp"
#include "hybrid/quiver.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace hybrid {

// Malformed input file: carries the 1-based line (0 if unknown) and a rule id.
class InputError : public std::runtime_error {
 public:
  InputError(int line, std::string rule, const std::string& message);
  int line() const { return line_; }
  const std::string& rule() const { return rule_; }

 private:
  int line_;
  std::string rule_;
};

PresentationSpec parse_presentation(const std::string& text);
PresentationSpec load_presentation(const std::string& path);
nlohmann::json to_json(const PresentationSpec& spec);
// {"relations": [{kind, anchor, generator}], "exceptions": [{kind, anchor, witness, critical}]}
nlohmann::json to_json(const BiserialQuiverData& data, const RelationSet& relations);
// Canonical text: two-space indent, keys sorted, trailing newline.
std::string dump(const nlohmann::json& j);
std::string read_file(const std::string& path);

}  // namespace hybrid
