#include "hybrid/corpus.hpp"

#include "hybrid/algebra.hpp"
#include "hybrid/io.hpp"
#include "hybrid/module.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <iomanip>
#include <set>
#include <sstream>

namespace hybrid {

using nlohmann::json;

bool CorpusEntryReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CorpusCheck& c) { return c.pass; });
}

bool CorpusReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const CorpusEntryReport& e) { return e.pass(); });
}

std::vector<std::string> CorpusReport::failing_entries() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (!e.pass()) out.push_back(e.name);
  }
  return out;
}

json CorpusReport::to_json() const {
  json out = json::object();
  for (const auto& e : entries) {
    json row = json::object();
    for (const auto& c : e.checks) row[c.name] = {{"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}};
    out[e.name] = row;
  }
  return out;
}

std::string CorpusReport::table() const {
  size_t width = 5;
  for (const auto& e : entries) width = std::max(width, e.name.size());
  std::ostringstream os;
  int passed = 0;
  for (const auto& e : entries) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << e.name << (e.pass() ? "pass" : "FAIL");
    for (const auto& c : e.checks) {
      if (!c.pass) os << "  " << c.name << ": expected " << c.expected.dump() << ", got " << c.actual.dump();
    }
    os << "\n";
    passed += e.pass() ? 1 : 0;
  }
  os << passed << "/" << entries.size() << " entries pass\n";
  return os.str();
}

namespace {

void add(CorpusEntryReport& r, const std::string& name, const json& expected, const json& actual) {
  r.checks.push_back({name, expected == actual, expected, actual});
}

json rule_set(const ValidationReport& report) {
  std::set<std::string> rules;
  for (const auto& v : report.violations) rules.insert(v.rule);
  return json(std::vector<std::string>(rules.begin(), rules.end()));
}

json sorted(json rules) {
  std::vector<std::string> v = rules.get<std::vector<std::string>>();
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return json(v);
}

}  // namespace

CorpusEntryReport check_entry(const std::string& name, const PresentationSpec& spec, const json& expected) {
  CorpusEntryReport r{name, {}};
  bool reparsed = false;
  try {
    reparsed = parse_presentation(dump(to_json(spec))) == spec;
  } catch (const InputError&) {
  }
  r.checks.push_back({"serialization", reparsed, true, reparsed});

  add(r, "violations", sorted(expected.value("violations", json::array())), rule_set(validate(spec, ValidationLevel::full)));

  std::optional<BiserialQuiverData> data;
  try {
    data = BiserialQuiverData::from_spec(spec);
  } catch (const InvalidPresentation&) {
  }
  const bool wants_algebra = expected.contains("finite") || expected.contains("dimension_vector");
  if (!data || !wants_algebra) return r;

  std::optional<FiniteDimAlgebra> h;
  try {
    h = build_algebra(*data);
  } catch (const CapExceeded&) {
  }
  if (expected.contains("finite")) add(r, "finite", expected["finite"], h.has_value());
  if (!h) return r;

  if (expected.contains("dimension_vector")) add(r, "dimension_vector", expected["dimension_vector"], dimension_vector(*h));
  if (expected.contains("cartan")) add(r, "cartan", expected["cartan"], cartan_matrix(*h));
  if (expected.contains("blocks")) add(r, "blocks", expected["blocks"], block_vertex_sets(*h).size());
  if (expected.contains("symmetric")) add(r, "symmetric", expected["symmetric"], symmetric_form_exists(*h).symmetric);
  if (expected.contains("periodicity")) {
    json actual = json::object();
    for (const auto& [arrow, period] : expected["periodicity"].items()) {
      const auto id = data->quiver().find_arrow(arrow);
      if (!id) {
        actual[arrow] = nullptr;
        continue;
      }
      const auto orbit = omega_orbit(*h, arrow_module(*h, *id), 12);
      actual[arrow] = orbit.period ? json(*orbit.period) : json(nullptr);
    }
    add(r, "periodicity", expected["periodicity"], actual);
  }
  return r;
}

CorpusReport run_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());

  auto run_one = [](const fs::path& path) {
    const std::string name = path.stem().string();
    const fs::path expected_path = path.parent_path() / "expected" / path.filename();
    CorpusEntryReport failed{name, {}};
    json expected;
    try {
      expected = json::parse(read_file(expected_path.string()));
    } catch (const std::exception& e) {
      failed.checks.push_back({"expected-file", false, expected_path.string(), e.what()});
      return failed;
    }
    try {
      return check_entry(name, load_presentation(path.string()), expected);
    } catch (const InputError& e) {
      failed.checks.push_back({"parse", false, "parses", e.what()});
      return failed;
    }
  };

  std::vector<std::future<CorpusEntryReport>> pending;
  for (const auto& p : paths) pending.push_back(std::async(std::launch::async, run_one, p));
  CorpusReport report;
  for (auto& f : pending) report.entries.push_back(f.get());
  return report;
}

}  // namespace hybrid
