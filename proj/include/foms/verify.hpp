#pragma once

#include "foms/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace foms {

/// Result of checking one cited bound empirically.
struct VerifyOutcome {
  std::string bound;
  std::string spec_tag;
  std::string solver;
  bool pass = false;
  long violations = 0;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  std::string details;
};

/// Known bound tags, in acceptance order.
const std::vector<std::string>& known_bounds();

/// Run one named bound check with a seed offset.
VerifyOutcome verify_bound(const std::string& bound, std::uint64_t seed);

/// Run the whole suite (every known bound).
std::vector<VerifyOutcome> verify_all(std::uint64_t seed);

}  // namespace foms
