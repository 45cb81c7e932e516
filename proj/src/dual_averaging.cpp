#include "foms/dual_averaging.hpp"

#include <cmath>

namespace foms {

DASchedule DASchedule::constant_beta_sqrt(double beta) {
  require(beta > 0.0, "da schedule: beta must be positive");
  return DASchedule{[beta](int) { return beta; },
                    [](int k) { return 1.0 / std::sqrt(static_cast<double>(k) + 1.0); }};
}

DASchedule DASchedule::fixed_horizon(double beta, double alpha, double omega_h, double M_f,
                                     int N) {
  require(beta > 0.0 && alpha > 0.0 && omega_h > 0.0 && M_f > 0.0 && N >= 0,
          "da schedule: fixed-horizon parameters must be positive");
  const double lam = std::sqrt(2.0 * alpha * beta * omega_h) /
                     (std::sqrt(static_cast<double>(N) + 1.0) * M_f);
  return DASchedule{[beta](int) { return beta; }, [lam](int) { return lam; }};
}

Vec mirror_map(const DistanceGenerator& h, const NonsmoothPart& r, const FeasibleSet& X,
               double beta, double gamma, const Vec& y) {
  require(beta > 0.0 || gamma * r.strong_convexity > 0.0,
          "mirror_map: needs beta > 0 or a strongly convex r with gamma > 0");
  const bool trivial_r = r.is_trivial() || r.kind == RegularizerKind::indicator_of_set;
  if (h.kind == DgfKind::entropy_simplex && trivial_r) {
    // softmax(y / beta), stabilized
    Vec t = y / beta;
    const double m = t.maxCoeff();
    Vec u = (t.array() - m).exp();
    return u / u.sum();
  }
  if (h.kind == DgfKind::euclidean && trivial_r && X.projection) {
    return X.projection(Vec(y / beta));
  }
  throw unsupported_error("mirror_map: no closed form for this (h, r, X) combination");
}

DAResult da_run(const CompositeProblem& problem, const DistanceGenerator& h,
                const DASchedule& schedule, int steps) {
  if (!problem.X.bounded()) throw unsupported_error("da_run: feasible set must be bounded");
  Stopwatch clock;
  const VectorFn& fprime = problem.f.subgradient ? problem.f.subgradient : problem.f.gradient;

  DAState s;
  s.y = Vec::Zero(problem.X.dimension);
  s.x = mirror_map(h, problem.r, problem.X, schedule.beta(0), 0.0, s.y);
  s.xbar = Vec::Zero(problem.X.dimension);
  s.Lambda = 0.0;

  long grad_calls = 0;
  SolverTrace trace;
  auto ergodic_gap = [&](const Vec& xbar) {
    if (!problem.reference) return std::numeric_limits<double>::quiet_NaN();
    return evaluate_objective(problem, xbar) - problem.reference->psi_min;
  };
  trace.push({0, evaluate_objective(problem, s.x),
              problem.reference
                  ? evaluate_objective(problem, s.x) - problem.reference->psi_min
                  : std::numeric_limits<double>::quiet_NaN(),
              0.0, 0, 0, 0, clock.elapsed_ns()});

  double gamma_k = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double lam = schedule.lambda(k);
    s.xbar += lam * s.x;
    s.Lambda += lam;

    const Vec g = fprime(s.x);
    ++grad_calls;
    s.y -= lam * g;
    gamma_k += lam;
    s.x = mirror_map(h, problem.r, problem.X, schedule.beta(k + 1), gamma_k, s.y);

    // running average includes the newest iterate with its pending weight
    const double lam_next = schedule.lambda(k + 1);
    const Vec xbar_k = (s.xbar + lam_next * s.x) / (s.Lambda + lam_next);
    trace.push({k + 1, evaluate_objective(problem, s.x), ergodic_gap(xbar_k), lam, grad_calls, 0,
                0, clock.elapsed_ns()});
  }
  const double lam_last = schedule.lambda(steps);
  s.xbar = (s.xbar + lam_last * s.x) / (s.Lambda + lam_last);
  s.Lambda += lam_last;
  return {s.xbar, s, std::move(trace)};
}

double da_md_equivalence_check(const CompositeProblem& problem, const DistanceGenerator& h,
                               int steps, const std::function<double(int)>& lambda) {
  require(h.kind == DgfKind::entropy_simplex,
          "da_md_equivalence_check: shipped for the entropy-simplex geometry");
  const VectorFn& fprime = problem.f.subgradient ? problem.f.subgradient : problem.f.gradient;
  const ProxMapping pm{h, problem.r, problem.X, 0.0, nullptr};

  Vec y = Vec::Zero(problem.X.dimension);
  Vec x_da = mirror_map(h, problem.r, problem.X, 1.0, 0.0, y);
  Vec x_md = x_da;
  double deviation = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double lam = lambda(k);
    const Vec g_da = fprime(x_da);
    y -= lam * g_da;
    x_da = mirror_map(h, problem.r, problem.X, 1.0, 0.0, y);

    const Vec g_md = fprime(x_md);
    x_md = prox_map(pm, x_md, Vec(lam * g_md), lam);

    deviation = std::max(deviation, (x_da - x_md).norm());
  }
  return deviation;
}

}  // namespace foms
