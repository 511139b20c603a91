#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hatlab {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  // Runs only criteria whose id starts with this prefix; empty runs all.
  std::string only;
};

std::vector<std::string> acceptance_ids();

/// Runs the acceptance criteria; every tolerance and time limit is fixed here.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One line per criterion, e.g. "PASS  hnsa-block-mod-sum  (0.01 s)  ...".
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace hatlab
