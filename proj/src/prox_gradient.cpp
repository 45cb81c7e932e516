#include "foms/prox_gradient.hpp"

#include "foms/conditional_gradient.hpp"

#include <cmath>

namespace foms {

StepPolicy StepPolicy::constant_smooth() { return StepPolicy{StepKind::constant_smooth, 1.0}; }
StepPolicy StepPolicy::nolips() { return StepPolicy{StepKind::nolips, 1.0}; }
StepPolicy StepPolicy::md(double gamma0) { return StepPolicy{StepKind::md_decreasing, gamma0}; }

double StepPolicy::at(int k, const CompositeProblem& problem, const DistanceGenerator& h) const {
  switch (kind) {
    case StepKind::constant_smooth: {
      require(problem.f.lipschitz_grad.has_value() && *problem.f.lipschitz_grad > 0.0,
              "constant-smooth step needs L_f > 0");
      return h.modulus / *problem.f.lipschitz_grad;
    }
    case StepKind::nolips: {
      require(h.rel_smooth_const.has_value() && *h.rel_smooth_const > 0.0,
              "nolips step needs L_f^h > 0");
      const double nu = h.symmetry.value_or(0.0);
      return (1.0 + nu) / (2.0 * *h.rel_smooth_const);
    }
    case StepKind::md_decreasing:
      return gamma0 / std::sqrt(static_cast<double>(k) + 1.0);
  }
  return 0.0;
}

namespace {

double reference_gap(const CompositeProblem& problem, double psi) {
  return problem.reference ? psi - problem.reference->psi_min
                           : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SolverResult bpgm_run(const CompositeProblem& problem, const DistanceGenerator& h,
                      const StepPolicy& policy, const Vec& x0, int steps,
                      const GeneralizedLinearOracle* glo, double eps) {
  Stopwatch clock;
  const ProxMapping pm{h, problem.r, problem.X, 0.0, nullptr};
  Vec x = x0;
  double psi = evaluate_objective(problem, x);
  require(psi < kInf, "bpgm_run: x0 not in dom r");

  long grad_calls = 0, prox_calls = 0, lo_calls = 0;
  SolverTrace trace;
  trace.push({0, psi, reference_gap(problem, psi), 0.0, 0, 0, 0, clock.elapsed_ns()});

  for (int k = 0; k < steps; ++k) {
    const double gamma = policy.at(k, problem, h);
    const Vec g = problem.f.gradient(x);
    ++grad_calls;
    x = prox_map(pm, x, Vec(gamma * g), gamma);
    ++prox_calls;
    const double next = evaluate_objective(problem, x);
    if (next > psi + 1e-9 * (1.0 + std::abs(psi)))
      throw internal_fault("bpgm_run: objective increased (wrong L_f or prox bug)");
    psi = next;
    trace.push({k + 1, psi, reference_gap(problem, psi), gamma, grad_calls, prox_calls, lo_calls,
                clock.elapsed_ns()});
    if (glo != nullptr && eps > 0.0) {
      const GapReport gap = merit_gap(problem, *glo, x);
      ++lo_calls;
      if (gap.e < eps) break;
    }
  }
  return {std::move(x), std::move(trace)};
}

SolverResult mirror_descent_run(const CompositeProblem& problem, const DistanceGenerator& h,
                                const Vec& x0, int steps, double gamma0) {
  if (!problem.f.subgradient)
    throw unsupported_error("mirror_descent_run: f has no subgradient oracle");
  require(problem.X.bounded(), "mirror_descent_run: feasible set must be bounded");
  Stopwatch clock;
  const ProxMapping pm{h, problem.r, problem.X, 0.0, nullptr};
  const StepPolicy policy = StepPolicy::md(gamma0);

  Vec x = x0;
  Vec best_x = x;
  double best = evaluate_objective(problem, x);
  long grad_calls = 0, prox_calls = 0;
  SolverTrace trace;
  trace.push({0, best, reference_gap(problem, best), 0.0, 0, 0, 0, clock.elapsed_ns()});

  for (int k = 0; k < steps; ++k) {
    const double gamma = policy.at(k, problem, h);
    const Vec g = problem.f.subgradient(x);
    ++grad_calls;
    x = prox_map(pm, x, Vec(gamma * g), gamma);
    ++prox_calls;
    const double psi = evaluate_objective(problem, x);
    if (psi < best) {
      best = psi;
      best_x = x;
    }
    trace.push({k + 1, psi, reference_gap(problem, psi), gamma, grad_calls, prox_calls, 0,
                clock.elapsed_ns()});
  }
  return {std::move(best_x), std::move(trace)};
}

SolverResult nolips_run(const CompositeProblem& problem, const DistanceGenerator& h, const Vec& x0,
                        int steps) {
  Stopwatch clock;
  const ProxMapping pm{h, problem.r, problem.X, 0.0, nullptr};
  const StepPolicy policy = StepPolicy::nolips();
  const double gamma = policy.at(0, problem, h);

  Vec x = x0;
  double psi = evaluate_objective(problem, x);
  require(psi < kInf, "nolips_run: x0 not in dom r");
  long grad_calls = 0, prox_calls = 0;
  SolverTrace trace;
  trace.push({0, psi, reference_gap(problem, psi), 0.0, 0, 0, 0, clock.elapsed_ns()});

  for (int k = 0; k < steps; ++k) {
    const Vec g = problem.f.gradient(x);
    ++grad_calls;
    x = prox_map(pm, x, Vec(gamma * g), gamma);
    ++prox_calls;
    const double next = evaluate_objective(problem, x);
    if (next > psi + 1e-9 * (1.0 + std::abs(psi)))
      throw internal_fault("nolips_run: objective increased (wrong L_f^h?)");
    psi = next;
    trace.push({k + 1, psi, reference_gap(problem, psi), gamma, grad_calls, prox_calls, 0,
                clock.elapsed_ns()});
  }
  return {std::move(x), std::move(trace)};
}

}  // namespace foms
