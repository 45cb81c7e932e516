#pragma once

#include "foms/instances.hpp"
#include "foms/trace.hpp"

#include <string>
#include <vector>

namespace foms {

const std::vector<std::string>& known_solvers();

struct SolveOptions {
  int steps = 1000;
  double gamma0 = 1.0;     // mirror-descent scale
  double eps = 1e-3;       // universal target accuracy
  double L0 = 1.0;         // universal initial estimate
  double c = 1.0;          // splitting penalty
  double theta = 1.0;      // Chambolle-Pock extrapolation
};

/// Dispatch one named solver onto a generated instance. Geometry defaults:
/// entropy on the simplex for md/da, euclidean elsewhere.
SolverTrace run_solver(const std::string& solver, const GeneratedInstance& inst,
                       const SolveOptions& opts);

/// CLI entry (subcommands solve | compare | rates | verify). Returns the
/// process exit code: 0 success, 1 usage error, 2 bound violation.
int run_cli(const std::vector<std::string>& args);

}  // namespace foms
