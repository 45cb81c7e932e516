#pragma once

#include "foms/problem.hpp"
#include "foms/types.hpp"

#include <optional>

namespace foms {

/// Per-coordinate shrinkage: sign(x_i) * max(|x_i| - gamma, 0).
template <typename Derived>
Vec soft_threshold(const Eigen::MatrixBase<Derived>& x, double gamma) {
  require(gamma >= 0.0, "soft_threshold: gamma must be nonnegative");
  return x.array().sign() * (x.array().abs() - gamma).max(0.0);
}

/// Euclidean projection onto { x >= 0, sum x_i = 1 }, sort-and-threshold.
Vec project_simplex(const Vec& v);

enum class DgfKind { euclidean, entropy_simplex, fermi_dirac_box, custom };

/// Distance-generating function h together with the data its Bregman
/// machinery needs. All shipped kinds are shifted so min_X h = 0.
struct DistanceGenerator {
  DgfKind kind = DgfKind::euclidean;
  ValueFn value;
  VectorFn gradient;
  double modulus = 1.0;                    // strong-convexity constant alpha
  std::optional<double> diameter;          // Omega_h(X) = max h - min h
  std::optional<double> symmetry;          // nu(h) in [0,1]
  std::optional<double> rel_smooth_const;  // L_f^h for a paired f
  Vec lower, upper;                        // fermi-dirac box bounds
  /// Closed-form solver for argmin_u { <y,u-x> + D_h(u,x) } when the shipped
  /// dispatch has no formula (custom kinds, r = 0 only).
  std::function<Vec(const Vec&, const Vec&)> custom_prox;

  static DistanceGenerator euclidean();
  static DistanceGenerator entropy_simplex(Index n);
  static DistanceGenerator fermi_dirac(const Vec& a, const Vec& b);
  /// h(x) = 1/4 ||x||^4 + 1/2 ||x||^2 with a radial closed-form prox; the
  /// reference geometry for relative smoothness of quartic objectives.
  static DistanceGenerator quartic();
};

/// D_h(u, x) = h(u) - h(x) - <grad h(x), u - x>.
double bregman_divergence(const DistanceGenerator& h, const Vec& u, const Vec& x);

/// Prox-mapping over (h, r, X) with an admissible optimality violation Delta
/// (0 = exact). apply() solves argmin_u { s*r(u) + <y, u-x> + D_h(u, x) }.
struct ProxMapping {
  DistanceGenerator h;
  NonsmoothPart r;
  FeasibleSet X;
  double inexactness = 0.0;
  std::function<Vec(const Vec&, const Vec&, double)> custom_solver;  // (x, y, r_scale)
};

Vec prox_map(const ProxMapping& pm, const Vec& x, const Vec& y, double r_scale = 1.0);

/// Moreau envelope value r(p) + ||p-x||^2/(2 gamma) and gradient (x-p)/gamma,
/// p = prox(x, gamma).
std::pair<double, Vec> moreau_envelope(const NonsmoothPart& r, double gamma, const Vec& x);

/// Residual || c*prox_{g/c}(u/c) + prox_{c g*}(u) - u ||; zero when the two
/// prox oracles form a correct conjugate pair.
double moreau_identity_check(const NonsmoothPart& g, const ProxFn& conjugate_prox, double c,
                             const Vec& u);

/// Sampled lower estimate of the symmetry coefficient
/// nu(h) = inf D_h(x,u)/D_h(u,x); exact (1.0) for the euclidean kind.
double estimate_symmetry(const DistanceGenerator& h, const std::function<Vec()>& sampler,
                         int pairs = 10000);

/// Sampled estimate of the curvature constant
/// Omega_h^2 = sup 2 D_h(t u + (1-t) x, x) / t^2 over x,u in X, t in (0,1].
double estimate_curvature(const DistanceGenerator& h, const std::function<Vec()>& sampler,
                          int samples = 10000);

}  // namespace foms
