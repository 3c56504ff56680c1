#include <iostream>
#include <string>

#include "speclab/acceptance.hpp"

// Runs A1..A13 (or the ids given on the command line), one line each.
int main(int argc, char** argv) {
  using namespace speclab::acceptance;
  std::vector<std::string> ids(argv + 1, argv + argc);
  if (ids.empty()) ids = criterion_ids();
  int failed = 0;
  for (const std::string& id : ids) {
    const CriterionResult r = run_criterion(id);
    std::cout << format_line(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
