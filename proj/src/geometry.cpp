#include "foms/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace foms {

namespace {

constexpr double kLogFloor = 1e-300;

double xlogx(double t) {
  if (t <= 0.0) return 0.0;
  return t * std::log(std::max(t, kLogFloor));
}

double safe_log(double t) { return std::log(std::max(t, kLogFloor)); }

}  // namespace

Vec project_simplex(const Vec& v) {
  const Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cssv = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < n; ++j) {
    cssv += u[j];
    const double t = (cssv - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0);
}

DistanceGenerator DistanceGenerator::euclidean() {
  DistanceGenerator h;
  h.kind = DgfKind::euclidean;
  h.value = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  h.gradient = [](const Vec& x) { return x; };
  h.modulus = 1.0;
  h.symmetry = 1.0;
  return h;
}

DistanceGenerator DistanceGenerator::entropy_simplex(Index n) {
  DistanceGenerator h;
  h.kind = DgfKind::entropy_simplex;
  const double logn = std::log(static_cast<double>(n));
  h.value = [logn](const Vec& x) {
    double s = 0.0;
    for (Index i = 0; i < x.size(); ++i) s += xlogx(x[i]);
    return s + logn;
  };
  h.gradient = [](const Vec& x) {
    Vec g(x.size());
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] <= 0.0) throw std::domain_error("entropy gradient needs strictly positive coordinates");
      g[i] = 1.0 + safe_log(x[i]);
    }
    return g;
  };
  h.modulus = 1.0;  // w.r.t. the l1 norm on the simplex
  h.diameter = logn;
  return h;
}

DistanceGenerator DistanceGenerator::fermi_dirac(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), "fermi_dirac: bounds must agree in size");
  require(((b - a).array() > 0).all(), "fermi_dirac: requires a < b");
  DistanceGenerator h;
  h.kind = DgfKind::fermi_dirac_box;
  h.lower = a;
  h.upper = b;
  // shift each coordinate so the midpoint value is zero
  Vec shift(a.size());
  for (Index i = 0; i < a.size(); ++i) {
    const double w = b[i] - a[i];
    shift[i] = w * std::log(w / 2.0);
  }
  h.value = [a, b, shift](const Vec& x) {
    double s = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] < a[i] - 1e-12 || x[i] > b[i] + 1e-12) return kInf;
      s += xlogx(x[i] - a[i]) + xlogx(b[i] - x[i]) - shift[i];
    }
    return s;
  };
  h.gradient = [a, b](const Vec& x) {
    Vec g(x.size());
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] <= a[i] || x[i] >= b[i])
        throw std::domain_error("fermi-dirac gradient needs an interior point");
      g[i] = safe_log(x[i] - a[i]) - safe_log(b[i] - x[i]);
    }
    return g;
  };
  double alpha = kInf;
  double diam = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const double w = b[i] - a[i];
    alpha = std::min(alpha, 4.0 / w);
    diam += w * std::log(2.0);
  }
  h.modulus = alpha;  // psi'' >= 4/(b-a) per coordinate, l2 norm
  h.diameter = diam;
  return h;
}

DistanceGenerator DistanceGenerator::quartic() {
  DistanceGenerator h;
  h.kind = DgfKind::custom;
  h.value = [](const Vec& x) {
    const double s = x.squaredNorm();
    return 0.25 * s * s + 0.5 * s;
  };
  h.gradient = [](const Vec& x) { return Vec((x.squaredNorm() + 1.0) * x); };
  h.modulus = 1.0;
  h.custom_prox = [](const Vec& x, const Vec& y) {
    // grad h(u) = grad h(x) - y is radial: solve t^3 + t = ||w|| by Newton.
    const Vec w = (x.squaredNorm() + 1.0) * x - y;
    const double s = w.norm();
    if (s == 0.0) return Vec(Vec::Zero(x.size()));
    double t = std::min(s, std::cbrt(s));
    for (int it = 0; it < 100; ++it) {
      const double f = t * t * t + t - s;
      const double df = 3.0 * t * t + 1.0;
      const double step = f / df;
      t -= step;
      if (std::abs(step) < 1e-16 * (1.0 + t)) break;
    }
    return Vec((t / s) * w);
  };
  return h;
}

double bregman_divergence(const DistanceGenerator& h, const Vec& u, const Vec& x) {
  require(u.size() == x.size(), "bregman_divergence: dimension mismatch");
  const double hu = h.value(u);
  const double hx = h.value(x);
  const Vec gx = h.gradient(x);  // throws domain_error on the boundary for barrier kinds
  double d = hu - hx - gx.dot(u - x);
  if (d < 0.0 && d > -1e-10) d = 0.0;
  return d;
}

namespace {

bool regularizer_is_trivial_on(const NonsmoothPart& r, const FeasibleSet& X) {
  (void)X;
  return r.kind == RegularizerKind::zero || r.kind == RegularizerKind::indicator_of_set;
}

Vec entropic_prox(const Vec& x, const Vec& y) {
  // u_i proportional to x_i * exp(-y_i), log-sum-exp stabilized
  Vec t(x.size());
  for (Index i = 0; i < x.size(); ++i) t[i] = safe_log(std::max(x[i], kLogFloor)) - y[i];
  const double m = t.maxCoeff();
  Vec u = (t.array() - m).exp();
  return u / u.sum();
}

Vec fermi_dirac_prox(const DistanceGenerator& h, const Vec& x, const Vec& y) {
  Vec u(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double a = h.lower[i], b = h.upper[i];
    const double rho = (x[i] - a) / (b - x[i]);
    const double t = rho * std::exp(-y[i]);
    u[i] = (a + b * t) / (1.0 + t);
    if (!std::isfinite(t)) u[i] = b;  // overflow means the pull toward b saturates
  }
  return u;
}

}  // namespace

Vec prox_map(const ProxMapping& pm, const Vec& x, const Vec& y, double r_scale) {
  require(x.size() == y.size(), "prox_map: dimension mismatch");
  require(r_scale >= 0.0, "prox_map: r_scale must be nonnegative");
  if (pm.custom_solver) return pm.custom_solver(x, y, r_scale);

  switch (pm.h.kind) {
    case DgfKind::euclidean: {
      const Vec v = x - y;
      if (pm.X.kind == SetKind::whole_space) {
        if (pm.r.prox) return pm.r.prox(v, r_scale);
        if (pm.r.is_trivial()) return v;
      } else if (regularizer_is_trivial_on(pm.r, pm.X) && pm.X.projection) {
        return pm.X.projection(v);
      }
      break;
    }
    case DgfKind::entropy_simplex:
      if (regularizer_is_trivial_on(pm.r, pm.X)) return entropic_prox(x, y);
      break;
    case DgfKind::fermi_dirac_box:
      if (regularizer_is_trivial_on(pm.r, pm.X)) return fermi_dirac_prox(pm.h, x, y);
      break;
    case DgfKind::custom:
      if (pm.h.custom_prox && regularizer_is_trivial_on(pm.r, pm.X))
        return pm.h.custom_prox(x, y);
      break;
  }
  throw unsupported_error("prox_map: no closed form for this (h, r, X) combination");
}

std::pair<double, Vec> moreau_envelope(const NonsmoothPart& r, double gamma, const Vec& x) {
  require(gamma > 0.0, "moreau_envelope: gamma must be positive");
  if (!r.prox) throw unsupported_error("moreau_envelope: regularizer has no prox oracle");
  const Vec p = r.prox(x, gamma);
  const double value = r.value(p) + (p - x).squaredNorm() / (2.0 * gamma);
  return {value, Vec((x - p) / gamma)};
}

double moreau_identity_check(const NonsmoothPart& g, const ProxFn& conjugate_prox, double c,
                             const Vec& u) {
  require(c > 0.0, "moreau_identity_check: c must be positive");
  if (!g.prox || !conjugate_prox)
    throw unsupported_error("moreau_identity_check: both prox oracles are required");
  const Vec lhs = c * g.prox(u / c, 1.0 / c) + conjugate_prox(u, c);
  return (lhs - u).norm();
}

double estimate_symmetry(const DistanceGenerator& h, const std::function<Vec()>& sampler,
                         int pairs) {
  if (h.kind == DgfKind::euclidean) return 1.0;
  double nu = 1.0;
  for (int i = 0; i < pairs; ++i) {
    const Vec x = sampler();
    const Vec u = sampler();
    const double fwd = bregman_divergence(h, u, x);
    const double bwd = bregman_divergence(h, x, u);
    if (fwd <= 0.0 || bwd <= 0.0) continue;
    nu = std::min(nu, std::min(fwd / bwd, bwd / fwd));
  }
  return std::clamp(nu, 0.0, 1.0);
}

double estimate_curvature(const DistanceGenerator& h, const std::function<Vec()>& sampler,
                          int samples) {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec x = sampler();
    const Vec u = sampler();
    const double t = static_cast<double>(i % 100 + 1) / 100.0;
    const Vec z = t * u + (1.0 - t) * x;
    const double d = bregman_divergence(h, z, x);
    best = std::max(best, 2.0 * d / (t * t));
  }
  return best;
}

}  // namespace foms
