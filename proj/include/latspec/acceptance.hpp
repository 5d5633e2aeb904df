#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace latspec {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the verification suite. `filter` is a substring match on criterion
// names ("" runs everything). `fast` shrinks the two optimizer scans so the
// whole suite stays desk-scale; the full ranges are used by default.
std::vector<CriterionResult> run_acceptance(const std::string& filter = "",
                                            std::uint64_t seed = 0,
                                            bool fast = false);

}  // namespace latspec
