#pragma once

#include <string>
#include <vector>

namespace ebnet {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs every protocol grid and invariant suite for dimensions 2..d_max
/// (d_max in {2, 3, 4}). Butterfly checks run at d = 2 only.
std::vector<CheckResult> run_verify_all(int d_max, bool parallel = false);

}  // namespace ebnet
