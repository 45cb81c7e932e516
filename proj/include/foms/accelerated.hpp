#pragma once

#include "foms/conditional_gradient.hpp"
#include "foms/geometry.hpp"
#include "foms/problem.hpp"
#include "foms/trace.hpp"

#include <vector>

namespace foms {

/// The (A_k, alpha_{k+1}, x, u, y) bookkeeping shared by the accelerated
/// variants. A_k + alpha_{k+1} = L * alpha_{k+1}^2 defines each new weight.
struct AccelState {
  double A = 0.0;
  double alpha = 0.0;
  Vec x, u, y;
  double L_work = 0.0;
};

struct AccelResult {
  Vec x;
  Vec u_final;
  SolverTrace trace;
  std::vector<double> A_history;  // A_k for k = 0..N
};

/// Accelerated Bregman proximal gradient. alpha_{k+1} solves the quadratic
/// A_k + alpha = L_f alpha^2 (positive root); y and x are the stated convex
/// combinations of (u, x) with weights alpha_{k+1}/A_{k+1} and A_k/A_{k+1}.
AccelResult abpgm_run(const CompositeProblem& problem, const DistanceGenerator& h, double L_f,
                      const Vec& x0, int steps);

struct RestartConfig {
  double mu = 0.0;     // quadratic error bound constant
  double R0 = 0.0;     // ||z0 - x*||^2 <= R0^2
  double Omega = 1.0;  // h bounded on the unit ball: h((x-x*)/R) <= Omega/2
  int max_epochs = 0;  // optional cap on the number of restarts (0 = by eps)
  int inner_steps(double L_f) const;  // ceil(2 sqrt(Omega L_f / mu)) - 1
};

struct RestartResult {
  Vec z;
  SolverTrace trace;
  int epochs = 0;
  std::vector<double> epoch_gaps;
};

/// Restarted accelerated method under a quadratic error bound: each epoch
/// runs inner_steps of abpgm with the DGF rescaled to the shrinking radius
/// R_p = R0 2^-p, halving R and quartering the guaranteed gap per epoch.
RestartResult restart_run(const CompositeProblem& problem, const DistanceGenerator& h,
                          const RestartConfig& cfg, const Vec& z0, double eps);

struct UniversalConfig {
  double eps = 1e-6;  // target accuracy
  double L0 = 1.0;    // initial smoothness estimate
  int max_doublings = 60;
};

struct UniversalResult {
  Vec x;
  SolverTrace trace;
  long oracle_calls = 0;  // first-order query points (value+gradient pairs)
  int outer_steps = 0;
  double L_final = 0.0;
};

/// Universal accelerated method: per step the smallest i_k >= 0 passing the
/// shifted descent test with constant 2^{i_k - 1} L_k is accepted; no Holder
/// parameters are consumed. Stops early when the reference gap falls under
/// eps.
UniversalResult universal_run(const CompositeProblem& problem, const DistanceGenerator& h,
                              const UniversalConfig& cfg, const Vec& x0, int steps);

enum class SmoothingVariant { softmax_uniform_fit, huber_l1_fit };

/// tau-smoothed surrogate of a piecewise-linear fit objective, together with
/// the constants its accelerated solve needs.
struct SmoothedProblem {
  SmoothingVariant variant = SmoothingVariant::softmax_uniform_fit;
  Mat A;
  Vec b;
  double tau = 1.0;
  double op_norm = 0.0;  // max row norm: ||A|| between (V, l2) and (E, dual geometry)
  double D_W = 0.0;      // max of the dual DGF over W
  double L_tau = 0.0;    // L_f + ||A||^2 / tau (here L_f = 0)
  ValueFn value;         // Psi_tau
  VectorFn gradient;
  ValueFn original;      // Psi (the unsmoothed objective)
  VectorFn argmax_oracle;  // hat w_tau(x) in the dual domain
};

SmoothedProblem build_smoothed(SmoothingVariant variant, const Mat& A, const Vec& b, double tau);

/// tau = (2 ||A|| / (N+1)) sqrt(D_X / D_W), the minimizer of the smoothed
/// rate bound 4||A|| sqrt(D_X D_W)/(N+1) + 4 L_f D_X/(N+1)^2.
double choose_tau(double norm_A, int N, double D_X, double D_W);

/// A-BPGM whose Bregman proximal step is replaced by one generalized
/// linear-oracle call (inexactness 2 D_X); no prox oracle is ever invoked.
AccelResult cg_inexact_abpgm_run(const CompositeProblem& problem,
                                 const GeneralizedLinearOracle& glo, double D_X, const Vec& x0,
                                 int steps);

}  // namespace foms
