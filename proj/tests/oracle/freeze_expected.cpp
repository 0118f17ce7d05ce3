// Writes corpus/expected/<entry>.json from the brute-force oracle, keeping the
// hand-maintained "violations" list of an existing file. With --check it only
// reports entries whose frozen values differ from a fresh computation.

#include "naive_algebra.hpp"

#include "hybrid/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Period of beta H under Omega: the f-orbit length, 2 for a loop with a
// border value, shortened when f^k(beta) H is literally the same right ideal.
json periodicity(const hybrid::PresentationSpec& spec, const oracle::NaiveAlgebra& alg) {
  std::map<std::string, std::string> f;
  for (const auto& cycle : spec.f) {
    for (size_t k = 0; k < cycle.size(); ++k) f[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  for (const auto& a : spec.arrows) f.emplace(a.name, a.name);
  std::set<std::string> in_t;
  for (const auto& t : spec.triangles) {
    std::string x = t;
    do {
      in_t.insert(x);
      x = f.at(x);
    } while (x != t);
  }
  auto word = [&](const std::string& arrow) {
    const int a = alg.arrow_index(arrow);
    const int s = alg.vertex_index(spec.arrows[static_cast<size_t>(a)].source);
    return *alg.find(s, {a});
  };
  json out = json::object();
  for (const auto& a : spec.arrows) {
    if (in_t.count(a.name)) continue;
    if (f.at(a.name) == a.name) {
      auto b = spec.b.find(a.name);
      out[a.name] = b != spec.b.end() && b->second != 0 ? 2 : 1;
      continue;
    }
    const int own = alg.right_ideal_rank({word(a.name)});
    int period = 0;
    std::string x = a.name;
    do {
      ++period;
      x = f.at(x);
    } while (x != a.name && !(alg.right_ideal_rank({word(x)}) == own &&
                              alg.right_ideal_rank({word(a.name), word(x)}) == own));
    out[a.name] = period;
  }
  return out;
}

json expected_for(const hybrid::PresentationSpec& spec, const json& previous) {
  json out;
  out["violations"] = previous.value("violations", json::array());
  out["valid"] = out["violations"].empty();
  out["source"] = {{"violations", "maintained by hand"}, {"other", "brute-force oracle"}};
  auto alg = oracle::NaiveAlgebra::build(spec, 6);
  out["finite"] = alg.has_value();
  if (!alg) return out;
  std::vector<int> dims;
  for (const auto& row : alg->cartan()) {
    int total = 0;
    for (int x : row) total += x;
    dims.push_back(total);
  }
  out["dimension_vector"] = dims;
  out["cartan"] = alg->cartan();
  out["blocks"] = alg->block_count();
  out["symmetric"] = alg->symmetric_form_found();
  if (out["valid"].get<bool>() && alg->block_count() == 1) out["periodicity"] = periodicity(spec, *alg);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Freeze corpus expectations from the brute-force oracle"};
  std::string corpus = "corpus";
  bool check = false;
  app.add_option("corpus", corpus, "corpus directory")->check(CLI::ExistingDirectory);
  app.add_flag("--check", check, "compare instead of writing");
  CLI11_PARSE(app, argc, argv);

  const fs::path dir(corpus);
  fs::create_directories(dir / "expected");
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") entries.push_back(e.path());
  }
  std::sort(entries.begin(), entries.end());
  int differing = 0;
  for (const auto& path : entries) {
    const fs::path target = dir / "expected" / path.filename();
    json previous = json::object();
    if (fs::exists(target)) previous = json::parse(hybrid::read_file(target.string()));
    const json fresh = expected_for(hybrid::load_presentation(path.string()), previous);
    if (check) {
      if (fresh != previous) {
        ++differing;
        std::cout << "differs: " << path.filename().string() << "\n";
      }
    } else {
      std::ofstream(target) << hybrid::dump(fresh);
    }
  }
  if (check) std::cout << differing << " of " << entries.size() << " entries differ\n";
  return differing == 0 ? 0 : 1;
}
