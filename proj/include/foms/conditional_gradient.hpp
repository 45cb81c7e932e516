#pragma once

#include "foms/problem.hpp"
#include "foms/trace.hpp"
#include "foms/types.hpp"

#include <optional>
#include <vector>

namespace foms {

/// Vertex/atom minimizer of <y, s> over a bounded feasible set. Ties break to
/// the lowest index so side-by-side runs are reproducible.
struct LinearOracle {
  FeasibleSet domain;
  Vec answer(const Vec& y) const;

  static LinearOracle over(FeasibleSet domain);
};

/// Minimizer of <y, x> + s * r(x) over the domain. Shipped combinations:
/// any linear-oracle domain with trivial r, and a box with a separable l1
/// term (per-coordinate closed form, ties resolve to 0).
struct GeneralizedLinearOracle {
  FeasibleSet domain;
  NonsmoothPart r;
  double l1_weight = 0.0;  // lambda when r is the l1 kind

  Vec answer(const Vec& y, double r_scale = 1.0) const;

  static GeneralizedLinearOracle over(FeasibleSet domain, NonsmoothPart r, double l1_weight = 0.0);
};

/// x = sum_a lambda_a * a with lambda > 0 summing to one; the active-set
/// bookkeeping of the away-step and pairwise variants.
struct AtomState {
  std::vector<Vec> atoms;
  std::vector<double> weights;

  Vec iterate() const;
  double weight_sum() const;
  void compact(double drop_tol = 1e-15);
  /// Index of `a` in the atom list (inf-norm match), or -1.
  int find(const Vec& a, double tol = 1e-12) const;

  static AtomState single(const Vec& a);
};

enum class CGStep { standard, exact_line_search, adaptive, backtracking };

struct CGStepRule {
  CGStep kind = CGStep::adaptive;
  // backtracking state: estimate M_k grows by `growth` on failure and is
  // relaxed by `shrink` at the start of every iteration
  double M = 1.0;
  double growth = 2.0;
  double shrink = 0.9;
  /// When set, the adaptive rule uses e / (L_f^h * Omega_h^2) instead of
  /// e / (L_f ||x-p||^2)  (relative-smoothness geometry with finite curvature).
  std::optional<std::pair<double, double>> relative;  // (L_f^h, Omega_h^2)
};

struct GCGResult {
  Vec x;
  SolverTrace trace;
};

/// Generalized conditional gradient; classical CG is the r = 0 special case.
GCGResult gcg_run(const CompositeProblem& problem, const GeneralizedLinearOracle& glo,
                  CGStepRule rule, const Vec& x0, int steps);

enum class AwayVariant { away, pairwise };

struct AWCGResult {
  Vec x;
  AtomState atoms;
  SolverTrace trace;
};

/// Away-step / pairwise conditional gradient over a polytope with exact line
/// search capped at the variant's maximal step.
AWCGResult awcg_run(const CompositeProblem& problem, const LinearOracle& lo, AtomState atoms0,
                    int steps, AwayVariant variant);

struct CndGResult {
  Vec u;
  int lo_calls = 0;
};

/// Inner conditional-gradient loop: returns u+ with
/// V_{g,u,beta}(u+) = <g + beta(u+ - u), u+ - v> <= eta, at most
/// ceil(6 beta Omega^2 / eta) linear-oracle calls.
CndGResult cndg_inner(const Vec& g, const Vec& u, double beta, double eta,
                      const LinearOracle& lo);

/// Parameter sequences of conditional gradient sliding.
struct SCGParams {
  double lipschitz = 1.0;  // L_f
  double omega_sq = 1.0;   // Omega^2 of the domain
  double beta(int k) const { return 3.0 * lipschitz / (k + 1); }
  double gamma(int k) const { return 3.0 / (k + 2); }
  double eta(int k) const {
    return lipschitz * omega_sq / (static_cast<double>(k) * (k + 1));
  }
};

struct SCGResult {
  Vec y;
  SolverTrace trace;
  std::vector<int> lo_calls_per_epoch;
};

/// Conditional gradient sliding for r = 0; one gradient per outer step, the
/// prox step replaced by the CndG inner loop.
SCGResult scg_run(const CompositeProblem& problem, const LinearOracle& lo, const SCGParams& params,
                  const Vec& x0, int steps);

}  // namespace foms
