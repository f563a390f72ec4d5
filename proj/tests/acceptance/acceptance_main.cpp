// Acceptance suite: one PASS/FAIL line per criterion.

#include <CLI11.hpp>

#include <iostream>

#include "ergopt/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ergopt acceptance criteria"};
  std::vector<int> criteria;
  std::uint64_t seed = 7;
  app.add_option("--criterion", criteria, "criterion ids (default all)")->delimiter(',');
  app.add_option("--seed", seed, "seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (const auto& r : ergopt::run_acceptance(seed, criteria)) {
    std::cout << ergopt::format_line(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
