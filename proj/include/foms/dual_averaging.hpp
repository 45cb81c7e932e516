#pragma once

#include "foms/geometry.hpp"
#include "foms/problem.hpp"
#include "foms/trace.hpp"

namespace foms {

/// Learning / step-size sequences of dual averaging: beta_k non-decreasing,
/// lambda_k non-increasing, gamma_{k+1} = gamma_k + lambda_k with gamma_0 = 0.
struct DASchedule {
  std::function<double(int)> beta;
  std::function<double(int)> lambda;

  /// beta_k = beta, lambda_k = 1/sqrt(k+1).
  static DASchedule constant_beta_sqrt(double beta);
  /// beta_k = beta, lambda_k = sqrt(2 alpha beta Omega_h) / (sqrt(N+1) M_f)
  /// for a window fixed to N in advance.
  static DASchedule fixed_horizon(double beta, double alpha, double omega_h, double M_f, int N);
};

struct DAState {
  Vec y;       // dual accumulator
  Vec x;       // current primal
  Vec xbar;    // ergodic average
  double Lambda = 0.0;
};

/// argmax_x { <y, x> - beta h(x) - gamma r(x) } over X. Shipped closed forms:
/// entropy-simplex with trivial r (softmax(y/beta)), euclidean with trivial r
/// (projection of y/beta onto X).
Vec mirror_map(const DistanceGenerator& h, const NonsmoothPart& r, const FeasibleSet& X,
               double beta, double gamma, const Vec& y);

struct DAResult {
  Vec xbar;
  DAState state;
  SolverTrace trace;
};

/// Composite dual averaging; the trace's gap column follows the ergodic
/// average (the object the complexity bound speaks about).
DAResult da_run(const CompositeProblem& problem, const DistanceGenerator& h,
                const DASchedule& schedule, int steps);

/// Runs dual averaging (beta = 1) and mirror descent side by side from the
/// same start with the same lambda schedule; returns the largest iterate
/// deviation across the run. Exact agreement is a theorem for Legendre h.
double da_md_equivalence_check(const CompositeProblem& problem, const DistanceGenerator& h,
                               int steps, const std::function<double(int)>& lambda);

}  // namespace foms
