// Acceptance suite: runs every cited-bound check at its stated tolerance and
// prints one pass/fail line per criterion.
#include "foms/verify.hpp"

#include <cstdio>

int main() {
  int failures = 0;
  int index = 0;
  for (const std::string& bound : foms::known_bounds()) {
    ++index;
    foms::VerifyOutcome outcome;
    try {
      outcome = foms::verify_bound(bound, 7);
    } catch (const std::exception& e) {
      std::printf("[%02d] FAIL %-18s exception: %s\n", index, bound.c_str(), e.what());
      ++failures;
      continue;
    }
    std::printf("[%02d] %s %-18s %s\n", index, outcome.pass ? "PASS" : "FAIL", bound.c_str(),
                outcome.details.c_str());
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
