#pragma once

#include <string>
#include <vector>

namespace bellstruct::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Each suite runs the corresponding set of published-value checks and
// returns one result per check.  `seed` drives every randomized piece.

std::vector<CheckResult> appendix_a(unsigned seed, int consistency_restarts = 1000);
std::vector<CheckResult> appendix_b(unsigned seed);
std::vector<CheckResult> appendix_c(unsigned seed, int probe_restarts = 10000,
                                    int property_draws = 100000);
std::vector<CheckResult> scbi_certificate_suite(unsigned seed, int scenario_draws = 1000);
std::vector<CheckResult> frustration_suite();
std::vector<CheckResult> facet_suite();

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace bellstruct::verify
