#include "hybrid/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace hybrid {

using nlohmann::json;

InputError::InputError(int line, std::string rule, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "[" + rule + "] " + message),
      line_(line),
      rule_(std::move(rule)) {}

namespace {

int line_of(const std::string& text, size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Line of the first occurrence of "key", to locate semantic errors.
int line_of_key(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 0 : line_of(text, pos);
}

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  throw std::invalid_argument(where + ": expected a rational string or an integer");
}

}  // namespace

PresentationSpec parse_presentation(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), "input.json", e.what());
  }
  std::string section = "vertices";
  PresentationSpec spec;
  try {
    if (!doc.is_object()) throw std::invalid_argument("top level must be an object");
    for (const auto& [key, value] : doc.items()) {
      static const std::set<std::string> known = {"vertices", "arrows", "f", "m", "c", "b", "T", "name", "description"};
      if (!known.count(key)) {
        section = key;
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    }
    section = "vertices";
    for (const auto& v : doc.at("vertices")) spec.vertices.push_back(v.get<std::string>());
    section = "arrows";
    for (const auto& a : doc.at("arrows")) {
      spec.arrows.push_back({a.at("name").get<std::string>(), a.at("source").get<std::string>(),
                             a.at("target").get<std::string>()});
    }
    section = "f";
    if (doc.contains("f")) {
      for (const auto& cyc : doc.at("f")) spec.f.push_back(cyc.get<std::vector<std::string>>());
    }
    section = "m";
    if (doc.contains("m")) {
      for (const auto& [k, v] : doc.at("m").items()) {
        if (!v.is_number_integer()) throw std::invalid_argument("weight of '" + k + "' must be an integer");
        spec.m[k] = v.get<int>();
      }
    }
    section = "c";
    if (doc.contains("c")) {
      for (const auto& [k, v] : doc.at("c").items()) spec.c[k] = rational_field(v, "c." + k);
    }
    section = "b";
    if (doc.contains("b")) {
      for (const auto& [k, v] : doc.at("b").items()) spec.b[k] = rational_field(v, "b." + k);
    }
    section = "T";
    if (doc.contains("T")) spec.triangles = doc.at("T").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(line_of_key(text, section), "input.schema", section + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(line_of_key(text, section), "input.schema", e.what());
  }
  return spec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(0, "input.file", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PresentationSpec load_presentation(const std::string& path) { return parse_presentation(read_file(path)); }

json to_json(const PresentationSpec& spec) {
  json j;
  j["vertices"] = spec.vertices;
  j["arrows"] = json::array();
  for (const auto& a : spec.arrows) j["arrows"].push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}});
  j["f"] = spec.f;
  j["m"] = json::object();
  for (const auto& [k, v] : spec.m) j["m"][k] = v;
  j["c"] = json::object();
  for (const auto& [k, v] : spec.c) j["c"][k] = to_string(v);
  j["b"] = json::object();
  for (const auto& [k, v] : spec.b) j["b"][k] = to_string(v);
  j["T"] = spec.triangles;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const BiserialQuiverData& data, const RelationSet& relations) {
  const Quiver& q = data.quiver();
  json out = {{"relations", json::array()}, {"exceptions", json::array()}};
  for (const auto& r : relations.relations) {
    out["relations"].push_back(
        {{"kind", to_string(r.kind)}, {"anchor", q.arrow(r.anchor).name}, {"generator", q.format(r.generator)}});
  }
  for (const auto& e : relations.exceptions) {
    out["exceptions"].push_back({{"kind", to_string(e.kind)},
                                 {"anchor", q.arrow(e.anchor).name},
                                 {"witness", q.arrow(e.witness).name},
                                 {"critical", e.witness_critical}});
  }
  return out;
}

}  // namespace hybrid
