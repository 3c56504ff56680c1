#pragma once

#include <string>
#include <vector>

#include "speclab/io.hpp"

namespace speclab::acceptance {

struct CriterionResult {
  std::string id;       // "A1" .. "A13"
  std::string title;
  bool passed = false;
  std::string summary;  // measured values against their thresholds
  Json metrics;
  double seconds = 0.0;
};

const std::vector<std::string>& criterion_ids();
CriterionResult run_criterion(const std::string& id);

/// oracle, derivatives, gap, transfer, examples, optimizer.
const std::vector<std::string>& suite_names();
/// Throws InvalidConfig for an unknown suite.
const std::vector<std::string>& suite_criteria(const std::string& suite);
std::vector<CriterionResult> run_suite(const std::string& suite);

/// "A1 PASS oracle torsion: ... [1.2 s]".
std::string format_line(const CriterionResult& r);
Json to_json(const std::vector<CriterionResult>& results, const std::string& suite);

}  // namespace speclab::acceptance
