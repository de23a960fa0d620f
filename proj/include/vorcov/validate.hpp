#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vorcov {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidateOptions {
  bool quick = false;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  // Test hook: perturbs the closed-form side of the chain-equality check,
  // which must then fail.
  bool inject_kappa_error = false;
};

// Full invariant battery: quadrature oracles, formula cross-checks,
// geometry laws (KS, intensity, brute-force Delaunay), Monte-Carlo vs
// analytic agreement, and determinism.
std::vector<CheckResult> run_validation(const ValidateOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);
void print_validation_report(std::ostream& os,
                             const std::vector<CheckResult>& results);

}  // namespace vorcov
