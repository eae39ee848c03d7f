#pragma once

#include <string>
#include <vector>

namespace ratindex {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Known-answer checks across all modules.
std::vector<SelftestCheck> run_selftest();

}  // namespace ratindex
