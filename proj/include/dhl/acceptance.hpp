#pragma once

// The acceptance battery: one check per numbered criterion.

#include <set>
#include <string>
#include <vector>

namespace dhl::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  bool full = true;          // quick skips the N = 128 scan
  std::set<int> only;        // empty: all
  bool kernel_sign_fault = false;
};

constexpr int kCriteria = 16;

std::vector<CriterionResult> run_acceptance(const Options& opt);
CriterionResult run_criterion(int id, const Options& opt);
/// "PASS [ 3] name: detail", with the runtime appended when timing is set.
std::string format_line(const CriterionResult& r, bool timing);

}  // namespace dhl::acceptance
