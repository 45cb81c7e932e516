#pragma once

#include "foms/trace.hpp"

#include <utility>

namespace foms {

/// Log-log least-squares fit of gap vs iteration over a window, plus the
/// violation count of a cited bound when a checker fills it in.
struct RateReport {
  double slope = 0.0;
  double theory_slope = 0.0;
  long bound_violations = 0;
  std::pair<long, long> window{0, 0};
  long points = 0;
};

/// Least squares on (ln k, ln gap) for rows with k in [window.first,
/// window.second]. Rows with non-positive or non-finite gaps are skipped
/// (the window shrinks); an empty window is an error.
RateReport fit_rate(const SolverTrace& trace, std::pair<long, long> window);

}  // namespace foms
