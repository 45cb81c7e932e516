#pragma once

#include "foms/geometry.hpp"
#include "foms/problem.hpp"
#include "foms/trace.hpp"

namespace foms {

struct GeneralizedLinearOracle;

enum class StepKind { constant_smooth, nolips, md_decreasing };

/// Step-size policies of the Bregman proximal gradient family:
///   constant_smooth   gamma = alpha / L_f
///   nolips            gamma = (1 + nu) / (2 L_f^h)
///   md_decreasing     gamma_k = gamma0 / sqrt(k + 1)
struct StepPolicy {
  StepKind kind = StepKind::constant_smooth;
  double gamma0 = 1.0;  // md_decreasing scale

  static StepPolicy constant_smooth();
  static StepPolicy nolips();
  static StepPolicy md(double gamma0);

  double at(int k, const CompositeProblem& problem, const DistanceGenerator& h) const;
};

/// Bregman proximal gradient: x+ = prox-map(x, gamma * grad f(x)) with the
/// constant step alpha/L_f. Monotone in the objective by construction; an
/// increase beyond tolerance reports a wrong L_f or a prox bug.
SolverResult bpgm_run(const CompositeProblem& problem, const DistanceGenerator& h,
                      const StepPolicy& policy, const Vec& x0, int steps,
                      const GeneralizedLinearOracle* glo = nullptr, double eps = 0.0);

/// Mirror descent for subgradient-only f over a bounded set; returns the best
/// iterate by objective value.
SolverResult mirror_descent_run(const CompositeProblem& problem, const DistanceGenerator& h,
                                const Vec& x0, int steps, double gamma0);

/// Relative-smoothness gradient scheme: step (1 + nu)/(2 L_f^h) with
/// L_f^h = h.rel_smooth_const and nu = h.symmetry (0 when unknown).
SolverResult nolips_run(const CompositeProblem& problem, const DistanceGenerator& h, const Vec& x0,
                        int steps);

}  // namespace foms
