#pragma once

#include <string>
#include <vector>

#include "cascade/io.hpp"

namespace cascade {

/// A "check" must hold within `tolerance`; a "finding" records a measured
/// gap between a printed formula and its oracle and never fails.
struct CheckResult {
  std::string name;
  std::string kind;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckResult> results;

  bool passed() const;
  Json to_json() const;
};

struct ValidationOptions {
  int workers = 1;
  /// Include the time-evolution and stationary-state checks (seconds).
  bool dynamics = true;
};

ValidationReport validate_all(const ValidationOptions& options = {});

}  // namespace cascade
