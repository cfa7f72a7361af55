#pragma once

#include <string>
#include <vector>

namespace qb {

/// One verification check: name, outcome, and a short machine-friendly detail
/// (e.g. the lowest offending height on failure).
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  long millis = 0;
};

struct CheckReport {
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(CheckResult c) { checks.push_back(std::move(c)); }
};

}  // namespace qb
