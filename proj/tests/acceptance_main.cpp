// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <cstdlib>
#include <iostream>
#include <string>

#include "vrs/tools/acceptance.hpp"

int main(int argc, char** argv) {
  vrs::tools::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  const auto results = vrs::tools::run_acceptance(opts, [](const vrs::tools::CriterionResult& r) {
    std::cout << vrs::tools::format_line(r) << std::endl;
  });
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << " (" << results.size()
            << " criteria)" << std::endl;
  return failed == 0 ? 0 : 1;
}
