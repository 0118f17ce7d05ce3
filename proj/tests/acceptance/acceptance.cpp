// One PASS/FAIL line per acceptance criterion over the bundled corpus.
// Exit status is nonzero when any criterion fails.

#include "criteria.hpp"

#include <chrono>
#include <functional>
#include <iostream>

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "corpus";
  const auto corpus = acceptance::load_corpus(dir);

  struct Criterion {
    const char* name;
    std::function<acceptance::Outcome(const std::vector<acceptance::Entry>&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"dimension formula", acceptance::dimension_formula},
      {"socle behaviour", acceptance::socle_behavior},
      {"zeta/xi table", acceptance::zeta_xi_table},
      {"symmetry gate", acceptance::symmetry_gate},
      {"degenerate triangle", acceptance::degeneration},
      {"star triangulation", acceptance::star_triangulation},
      {"round trip", acceptance::round_trip},
      {"contraction closure", acceptance::contraction_closure},
      {"periodicity", acceptance::periodicity},
      {"detectors", acceptance::detectors},
      {"oracle equivalence", acceptance::oracle_equivalence},
  };

  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    const auto outcome = criteria[k].run(corpus);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << (k + 1) << ". " << criteria[k].name << "  ("
              << outcome.checked << " checks, " << static_cast<int>(seconds * 1000) << " ms)\n";
    for (const auto& note : outcome.notes) std::cout << "      " << note << "\n";
    failed += outcome.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
