#include "foms/conditional_gradient.hpp"

#include <algorithm>
#include <cmath>

namespace foms {

namespace {

/// Golden-section search for the minimizer of a unimodal phi on [0, hi].
double golden_min(const std::function<double(double)>& phi, double hi, double tol = 1e-12) {
  if (hi <= 0.0) return 0.0;
  const double invphi = 0.6180339887498949;
  double a = 0.0, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = phi(c), fd = phi(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = phi(d);
    }
  }
  // endpoints are candidates too
  const double mid = 0.5 * (a + b);
  double best = mid, fbest = phi(mid);
  for (double t : {0.0, hi}) {
    const double ft = phi(t);
    if (ft < fbest) {
      fbest = ft;
      best = t;
    }
  }
  return best;
}

Vec spectrahedron_vertex(const FeasibleSet& domain, const Vec& y) {
  const Index n = domain.matrix_order;
  const Mat Y = sym_from_vec(y, n);
  const double sigma = Y.norm();  // Frobenius bound on the spectral radius
  if (sigma == 0.0) return Vec::Zero(n * n);
  const Mat S = sigma * Mat::Identity(n, n) - Y;
  Vec u = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double rayleigh = u.dot(S * u);
  for (int it = 0; it < 10000; ++it) {
    Vec su = S * u;
    const double ns = su.norm();
    if (ns == 0.0) break;
    u = su / ns;
    su = S * u;
    rayleigh = u.dot(su);
    if ((su - rayleigh * u).norm() <= 1e-10 * (1.0 + std::abs(rayleigh))) break;
  }
  const double lambda_min = sigma - rayleigh;
  if (lambda_min >= 0.0) return Vec::Zero(n * n);  // <Y, X> minimized by the zero matrix
  return sym_to_vec(Mat(u * u.transpose()));
}

}  // namespace

LinearOracle LinearOracle::over(FeasibleSet domain) { return LinearOracle{std::move(domain)}; }

Vec LinearOracle::answer(const Vec& y) const {
  require(y.size() == domain.dimension, "linear_oracle: dimension mismatch");
  switch (domain.kind) {
    case SetKind::simplex: {
      Index best = 0;
      for (Index i = 1; i < y.size(); ++i)
        if (y[i] < y[best]) best = i;
      Vec s = Vec::Zero(y.size());
      s[best] = 1.0;
      return s;
    }
    case SetKind::l1_ball: {
      Index best = 0;
      for (Index i = 1; i < y.size(); ++i)
        if (std::abs(y[i]) > std::abs(y[best])) best = i;
      Vec s = Vec::Zero(y.size());
      s[best] = -domain.radius * (y[best] < 0 ? -1.0 : 1.0);
      return s;
    }
    case SetKind::box: {
      Vec s(y.size());
      for (Index i = 0; i < y.size(); ++i)
        s[i] = y[i] < 0 ? domain.upper[i] : domain.lower[i];
      return s;
    }
    case SetKind::l2_ball: {
      const double ny = y.norm();
      if (ny == 0.0) return Vec::Zero(y.size());
      return Vec(-(domain.radius / ny) * y);
    }
    case SetKind::spectrahedron:
      return spectrahedron_vertex(domain, y);
    case SetKind::whole_space:
      break;
  }
  throw unsupported_error("linear_oracle: unbounded or unsupported domain");
}

GeneralizedLinearOracle GeneralizedLinearOracle::over(FeasibleSet domain, NonsmoothPart r,
                                                      double l1_weight) {
  return GeneralizedLinearOracle{std::move(domain), std::move(r), l1_weight};
}

Vec GeneralizedLinearOracle::answer(const Vec& y, double r_scale) const {
  if (r.is_trivial() || r.kind == RegularizerKind::indicator_of_set)
    return LinearOracle{domain}.answer(y);
  if (r.kind == RegularizerKind::l1 && domain.kind == SetKind::box) {
    const double lam = r_scale * l1_weight;
    Vec s(y.size());
    for (Index i = 0; i < y.size(); ++i) {
      const double lo = domain.lower[i], hi = domain.upper[i];
      if (y[i] < -lam)
        s[i] = hi;
      else if (y[i] > lam)
        s[i] = lo;
      else
        s[i] = std::clamp(0.0, lo, hi);  // ties land on zero when feasible
    }
    return s;
  }
  throw unsupported_error("generalized_linear_oracle: unsupported (domain, r) combination");
}

Vec AtomState::iterate() const {
  require(!atoms.empty(), "atom state: empty");
  Vec x = Vec::Zero(atoms.front().size());
  for (std::size_t i = 0; i < atoms.size(); ++i) x += weights[i] * atoms[i];
  return x;
}

double AtomState::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void AtomState::compact(double drop_tol) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (weights[i] > drop_tol) {
      atoms[out] = atoms[i];
      weights[out] = weights[i];
      ++out;
    }
  }
  atoms.resize(out);
  weights.resize(out);
}

int AtomState::find(const Vec& a, double tol) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if ((atoms[i] - a).lpNorm<Eigen::Infinity>() <= tol) return static_cast<int>(i);
  return -1;
}

AtomState AtomState::single(const Vec& a) { return AtomState{{a}, {1.0}}; }

GCGResult gcg_run(const CompositeProblem& problem, const GeneralizedLinearOracle& glo,
                  CGStepRule rule, const Vec& x0, int steps) {
  require(problem.X.bounded(), "gcg_run: feasible set must be bounded");
  Stopwatch clock;
  Vec x = x0;
  double psi = evaluate_objective(problem, x);
  require(psi < kInf, "gcg_run: x0 not in dom r");

  long grad_calls = 0, lo_calls = 0;
  long ls_fallbacks = 0;
  const double lipschitz = problem.f.lipschitz_grad.value_or(0.0);

  auto oracle_pass = [&](const Vec& at) {
    Vec g = problem.f.gradient(at);
    ++grad_calls;
    Vec p = glo.answer(g);
    ++lo_calls;
    const double e = problem.r.value(at) - problem.r.value(p) + g.dot(at - p);
    return std::tuple<Vec, Vec, double>(std::move(g), std::move(p), std::max(e, 0.0));
  };

  auto [g, p, merit] = oracle_pass(x);
  SolverTrace trace;
  trace.push({0, psi, merit, 0.0, grad_calls, 0, lo_calls, clock.elapsed_ns()});

  for (int k = 1; k <= steps; ++k) {
    const Vec d = p - x;
    const double dsq = d.squaredNorm();
    double gamma = 0.0;
    if (merit > 0.0 && dsq > 0.0) {
      switch (rule.kind) {
        case CGStep::standard:
          gamma = 2.0 / (k + 2.0);
          break;
        case CGStep::adaptive: {
          const double denom = rule.relative ? rule.relative->first * rule.relative->second
                                             : lipschitz * dsq;
          gamma = denom > 0.0 ? std::min(1.0, merit / denom) : 1.0;
          break;
        }
        case CGStep::exact_line_search: {
          gamma = golden_min(
              [&](double t) { return evaluate_objective(problem, Vec(x + t * d)); }, 1.0);
          const double trial = evaluate_objective(problem, Vec(x + gamma * d));
          if (!std::isfinite(trial) || trial > psi + 1e-9 * (1.0 + std::abs(psi))) {
            ++ls_fallbacks;
            gamma = lipschitz * dsq > 0.0 ? std::min(1.0, merit / (lipschitz * dsq)) : 1.0;
          }
          break;
        }
        case CGStep::backtracking: {
          double M = std::max(rule.M * rule.shrink, 1e-12);
          bool ok = false;
          for (int tries = 0; tries < 60; ++tries) {
            gamma = std::min(1.0, merit / (M * dsq));
            const double trial = evaluate_objective(problem, Vec(x + gamma * d));
            const double model = psi - gamma * merit + 0.5 * M * gamma * gamma * dsq;
            if (trial <= model + 1e-12 * (1.0 + std::abs(psi))) {
              ok = true;
              break;
            }
            M *= rule.growth;
          }
          if (!ok) throw internal_fault("gcg_run: backtracking estimate diverged");
          rule.M = M;
          break;
        }
      }
    }

    x += gamma * d;
    const double next_psi = evaluate_objective(problem, x);
    if (rule.kind != CGStep::standard && next_psi > psi + 1e-9 * (1.0 + std::abs(psi)))
      throw internal_fault("gcg_run: objective increased under a monotone step rule");
    psi = next_psi;
    std::tie(g, p, merit) = oracle_pass(x);
    trace.push({k, psi, merit, gamma, grad_calls, 0, lo_calls, clock.elapsed_ns()});
  }
  if (ls_fallbacks > 0) trace.meta["ls_fallbacks"] = std::to_string(ls_fallbacks);
  return {std::move(x), std::move(trace)};
}

AWCGResult awcg_run(const CompositeProblem& problem, const LinearOracle& lo, AtomState atoms0,
                    int steps, AwayVariant variant) {
  Stopwatch clock;
  AtomState atoms = std::move(atoms0);
  Vec x = atoms.iterate();
  double psi = evaluate_objective(problem, x);
  long grad_calls = 0, lo_calls = 0;

  auto gap_of = [&](double fw_gap) {
    return problem.reference ? psi - problem.reference->psi_min : fw_gap;
  };

  SolverTrace trace;
  {
    Vec g = problem.f.gradient(x);
    ++grad_calls;
    Vec p = lo.answer(g);
    ++lo_calls;
    trace.push({0, psi, gap_of(g.dot(x - p)), 0.0, grad_calls, 0, lo_calls, clock.elapsed_ns()});
  }

  for (int k = 1; k <= steps; ++k) {
    const Vec g = problem.f.gradient(x);
    ++grad_calls;
    const Vec p = lo.answer(g);
    ++lo_calls;
    const double fw_gap = g.dot(x - p);
    if (fw_gap <= 1e-15 * (1.0 + std::abs(psi))) break;

    // most uphill active atom
    int away_idx = 0;
    for (std::size_t i = 1; i < atoms.atoms.size(); ++i)
      if (g.dot(atoms.atoms[i]) > g.dot(atoms.atoms[away_idx])) away_idx = static_cast<int>(i);
    const Vec& u = atoms.atoms[away_idx];
    const double lam_u = atoms.weights[away_idx];

    Vec d;
    double gamma_max = 0.0;
    bool forward = true;
    if (variant == AwayVariant::pairwise) {
      d = p - u;
      gamma_max = lam_u;
      forward = false;
    } else {
      const Vec d_fw = p - x;
      const Vec d_away = x - u;
      const double away_ok = (1.0 - lam_u > 1e-15) ? -g.dot(d_away) : -kInf;
      if (-g.dot(d_fw) >= away_ok) {
        d = d_fw;
        gamma_max = 1.0;
      } else {
        d = d_away;
        gamma_max = lam_u / (1.0 - lam_u);
        forward = false;
      }
    }

    const double gamma = golden_min(
        [&](double t) { return evaluate_objective(problem, Vec(x + t * d)); }, gamma_max);

    int p_idx = atoms.find(p);
    if (p_idx < 0) {
      atoms.atoms.push_back(p);
      atoms.weights.push_back(0.0);
      p_idx = static_cast<int>(atoms.atoms.size()) - 1;
    }
    if (variant == AwayVariant::pairwise) {
      atoms.weights[p_idx] += gamma;
      atoms.weights[away_idx] -= gamma;
      if (atoms.weights[away_idx] < 0.0) {
        if (atoms.weights[away_idx] < -1e-12)
          throw internal_fault("awcg_run: pairwise weight went negative");
        atoms.weights[away_idx] = 0.0;
      }
    } else if (forward) {
      for (double& w : atoms.weights) w *= (1.0 - gamma);
      atoms.weights[p_idx] += gamma;
    } else {
      for (double& w : atoms.weights) w *= (1.0 + gamma);
      atoms.weights[away_idx] -= gamma;
      if (atoms.weights[away_idx] < 0.0) atoms.weights[away_idx] = 0.0;
    }
    atoms.compact();
    if (std::abs(atoms.weight_sum() - 1.0) > 1e-8)
      throw internal_fault("awcg_run: atom weights drifted away from one");

    x += gamma * d;
    psi = evaluate_objective(problem, x);
    trace.push({k, psi, gap_of(fw_gap), gamma, grad_calls, 0, lo_calls, clock.elapsed_ns()});
  }
  return {std::move(x), std::move(atoms), std::move(trace)};
}

CndGResult cndg_inner(const Vec& g, const Vec& u, double beta, double eta,
                      const LinearOracle& lo) {
  require(beta > 0.0 && eta > 0.0, "cndg_inner: beta and eta must be positive");
  if (!lo.domain.bounded()) throw unsupported_error("cndg_inner: domain must be bounded");
  const double omega_sq = *lo.domain.diameter_sq;
  const long cap = static_cast<long>(std::ceil(6.0 * beta * omega_sq / eta));

  Vec ut = u;
  CndGResult res;
  for (;;) {
    const Vec score = g + beta * (ut - u);
    const Vec v = lo.answer(score);
    ++res.lo_calls;
    const double V = score.dot(ut - v);
    if (V <= eta) {
      res.u = ut;
      return res;
    }
    if (res.lo_calls > cap)
      throw internal_fault("cndg_inner: linear-oracle call cap exceeded");
    const double denom = beta * (v - ut).squaredNorm();
    const double alpha = denom > 0.0 ? std::min(1.0, V / denom) : 1.0;
    ut = (1.0 - alpha) * ut + alpha * v;
  }
}

SCGResult scg_run(const CompositeProblem& problem, const LinearOracle& lo, const SCGParams& params,
                  const Vec& x0, int steps) {
  require(problem.r.is_trivial() || problem.r.kind == RegularizerKind::indicator_of_set,
          "scg_run: needs a trivial non-smooth part");
  Stopwatch clock;
  Vec x = x0, y = x0;
  long grad_calls = 0, lo_calls = 0;
  SolverTrace trace;
  auto gap_of = [&](double fy) {
    return problem.reference ? fy - problem.reference->psi_min
                             : std::numeric_limits<double>::quiet_NaN();
  };
  double fy = problem.f.value(y);
  trace.push({0, fy, gap_of(fy), 0.0, 0, 0, 0, clock.elapsed_ns()});
  SCGResult result;

  for (int k = 1; k <= steps; ++k) {
    const double gk = params.gamma(k);
    const Vec z = (1.0 - gk) * y + gk * x;
    const Vec grad = problem.f.gradient(z);
    ++grad_calls;
    CndGResult inner = cndg_inner(grad, x, params.beta(k), params.eta(k), lo);
    x = inner.u;
    lo_calls += inner.lo_calls;
    result.lo_calls_per_epoch.push_back(inner.lo_calls);
    y = (1.0 - gk) * y + gk * x;
    fy = problem.f.value(y);
    trace.push({k, fy, gap_of(fy), gk, grad_calls, 0, lo_calls, clock.elapsed_ns()});
  }
  result.y = std::move(y);
  result.trace = std::move(trace);
  return result;
}

}  // namespace foms
