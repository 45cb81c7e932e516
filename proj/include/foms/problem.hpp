#pragma once

#include "foms/types.hpp"

#include <limits>
#include <optional>
#include <utility>

namespace foms {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Smooth part f of the composite objective. `gradient` is the oracle every
/// solver consumes; `subgradient` is an optional selection for non-smooth f
/// (mirror descent, dual averaging, the universal method with nu = 0).
struct SmoothPart {
  ValueFn value;
  VectorFn gradient;
  VectorFn subgradient;                       // optional, defaults to unset
  std::optional<double> lipschitz_grad;       // L_f
  std::optional<std::pair<double, double>> holder;  // (nu, L_nu)
  std::optional<double> subgrad_bound;        // M_f

  static SmoothPart zero();
  /// f(x) = 1/2 ||A x - b||^2 with L_f supplied by the caller (||A||^2).
  static SmoothPart least_squares(const Mat& A, const Vec& b, double lipschitz);
  /// f(x) = <c, x>.
  static SmoothPart linear(const Vec& c);
};

enum class RegularizerKind { zero, l1, indicator_of_set, separable_custom };

/// Non-smooth part r. `prox(v, gamma)` solves argmin_u gamma*r(u) + 1/2||u-v||^2.
struct NonsmoothPart {
  RegularizerKind kind = RegularizerKind::zero;
  ValueFn value;
  ProxFn prox;              // optional
  VectorFn subgradient;     // optional
  double strong_convexity = 0.0;

  static NonsmoothPart zero();
  static NonsmoothPart l1(double lambda);
  static NonsmoothPart indicator(std::function<bool(const Vec&)> membership, VectorFn projection);
  bool is_trivial() const { return kind == RegularizerKind::zero; }
};

enum class SetKind { whole_space, simplex, box, l1_ball, l2_ball, spectrahedron };

/// Feasible set X. Spectrahedron points are vectorized symmetric matrices
/// (row-major, dimension = n*n).
struct FeasibleSet {
  SetKind kind = SetKind::whole_space;
  Index dimension = 0;
  std::function<bool(const Vec&)> membership;
  VectorFn projection;                   // optional
  std::optional<double> diameter_sq;     // sup ||x-u||^2 over X
  Vec lower, upper;                      // box bounds
  double radius = 0.0;                   // l1/l2 ball radius
  Index matrix_order = 0;                // spectrahedron n

  bool bounded() const { return diameter_sq.has_value(); }

  static FeasibleSet whole_space(Index n);
  static FeasibleSet simplex(Index n);
  static FeasibleSet box(const Vec& a, const Vec& b);
  static FeasibleSet l1_ball(Index n, double R);
  static FeasibleSet l2_ball(Index n, double R);
  static FeasibleSet spectrahedron(Index n);
};

/// Vectorized-symmetric-matrix helpers for the spectrahedron domain.
Mat sym_from_vec(const Vec& x, Index n);
Vec sym_to_vec(const Mat& M);

struct ReferenceOptimum {
  Vec x_star;
  double psi_min = 0.0;
};

struct CompositeProblem {
  SmoothPart f;
  NonsmoothPart r;
  FeasibleSet X;
  Vec start;  // designated feasible start point
  std::optional<ReferenceOptimum> reference;
};

struct GeneralizedLinearOracle;  // conditional_gradient.hpp

/// Primal merit gap e(x) = sup_u { r(x) - r(u) + <grad f(x), x - u> } and its
/// maximizing witness.
struct GapReport {
  double e = 0.0;
  Vec witness;
  double gamma_term = 0.0;
};

/// Psi(x) = f(x) + r(x); +inf sentinel outside dom r.
double evaluate_objective(const CompositeProblem& problem, const Vec& x);

/// Max over coordinates of |grad_i - central_difference_i| / (1 + |grad_i|).
double check_gradient(const CompositeProblem& problem, const Vec& x, double h_fd);

GapReport merit_gap(const CompositeProblem& problem, const GeneralizedLinearOracle& oracle,
                    const Vec& x);

}  // namespace foms
