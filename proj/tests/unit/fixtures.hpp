#pragma once

#include "hybrid/algebra.hpp"
#include "hybrid/io.hpp"

#include <string>

namespace fixtures {

inline std::string corpus_path(const std::string& name) { return std::string(HYBRID_CORPUS_DIR) + "/" + name + ".json"; }

inline hybrid::PresentationSpec spec(const std::string& name) { return hybrid::load_presentation(corpus_path(name)); }

inline hybrid::BiserialQuiverData data(const std::string& name) {
  return hybrid::BiserialQuiverData::from_spec(spec(name));
}

inline hybrid::FiniteDimAlgebra algebra(const std::string& name) { return hybrid::build_algebra(data(name)); }

inline bool has_rule(const hybrid::ValidationReport& r, const std::string& rule) {
  for (const auto& v : r.violations) {
    if (v.rule == rule) return true;
  }
  return false;
}

}  // namespace fixtures
