#pragma once

#include <string>
#include <vector>

// Named self-check battery behind `periodkit verify`: each check exercises
// one mathematical invariant of the library (constant orderings, exact norms
// against brute-force scans, bound validity on manufactured orbits, ...) at a
// size controlled by quick/full.
namespace periodkit::checks {

struct CheckOptions {
  bool quick = false;
  unsigned seed = 42;
};

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<std::string> check_names();
CheckResult run_check(const std::string& name, const CheckOptions& opt);
std::vector<CheckResult> run_all(const CheckOptions& opt);

}  // namespace periodkit::checks
