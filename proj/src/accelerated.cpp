#include "foms/accelerated.hpp"

#include "foms/splitting.hpp"

#include <cmath>

namespace foms {

namespace {

double reference_gap(const CompositeProblem& problem, double psi) {
  return problem.reference ? psi - problem.reference->psi_min
                           : std::numeric_limits<double>::quiet_NaN();
}

double positive_root(double A, double L) {
  // A + alpha = L alpha^2
  return (1.0 + std::sqrt(1.0 + 4.0 * L * A)) / (2.0 * L);
}

}  // namespace

AccelResult abpgm_run(const CompositeProblem& problem, const DistanceGenerator& h, double L_f,
                      const Vec& x0, int steps) {
  require(L_f > 0.0, "abpgm_run: L_f must be positive");
  Stopwatch clock;
  const ProxMapping pm{h, problem.r, problem.X, 0.0, nullptr};

  AccelState s;
  s.x = x0;
  s.u = x0;
  s.y = x0;
  s.A = 0.0;
  s.L_work = L_f;

  double psi = evaluate_objective(problem, s.x);
  require(psi < kInf, "abpgm_run: x0 not in dom r");
  if (!std::isfinite(psi)) throw internal_fault("abpgm_run: non-finite objective at start");

  long grad_calls = 0, prox_calls = 0;
  AccelResult res;
  res.A_history.push_back(0.0);
  res.trace.push({0, psi, reference_gap(problem, psi), 0.0, 0, 0, 0, clock.elapsed_ns()});

  for (int k = 0; k < steps; ++k) {
    s.alpha = positive_root(s.A, L_f);
    const double A_next = s.A + s.alpha;
    s.y = (s.alpha / A_next) * s.u + (s.A / A_next) * s.x;
    const Vec g = problem.f.gradient(s.y);
    ++grad_calls;
    s.u = prox_map(pm, s.u, Vec(s.alpha * g), s.alpha);
    ++prox_calls;
    s.x = (s.alpha / A_next) * s.u + (s.A / A_next) * s.x;
    s.A = A_next;

    psi = evaluate_objective(problem, s.x);
    if (!std::isfinite(psi)) throw internal_fault("abpgm_run: non-finite objective");
    res.A_history.push_back(s.A);
    res.trace.push({k + 1, psi, reference_gap(problem, psi), s.alpha, grad_calls, prox_calls, 0,
                    clock.elapsed_ns()});
  }
  res.x = s.x;
  res.u_final = s.u;
  return res;
}

int RestartConfig::inner_steps(double L_f) const {
  require(mu > 0.0 && Omega > 0.0, "restart: mu and Omega must be positive");
  const int N = static_cast<int>(std::ceil(2.0 * std::sqrt(Omega * L_f / mu))) - 1;
  return std::max(N, 1);
}

namespace {

/// h_p(x) = R^2 h((x - z)/R): same Bregman geometry, recentered and rescaled.
DistanceGenerator shifted_dgf(const DistanceGenerator& base, const Vec& z, double R) {
  DistanceGenerator h = base;
  if (base.kind == DgfKind::euclidean) return h;  // translation/scale invariant divergence
  h.kind = DgfKind::custom;
  h.value = [base, z, R](const Vec& x) { return R * R * base.value(Vec((x - z) / R)); };
  h.gradient = [base, z, R](const Vec& x) { return Vec(R * base.gradient(Vec((x - z) / R))); };
  // argmin <y,u> + D_{h_p}(u,x) maps to the base geometry via u = z + R v
  DistanceGenerator inner = base;
  h.custom_prox = [inner, z, R](const Vec& x, const Vec& y) {
    const ProxMapping pm{inner, NonsmoothPart::zero(), FeasibleSet::whole_space(x.size()), 0.0,
                         nullptr};
    const Vec v = prox_map(pm, Vec((x - z) / R), Vec(y / R));
    return Vec(z + R * v);
  };
  return h;
}

}  // namespace

RestartResult restart_run(const CompositeProblem& problem, const DistanceGenerator& h,
                          const RestartConfig& cfg, const Vec& z0, double eps) {
  require(cfg.mu > 0.0 && cfg.R0 > 0.0, "restart_run: mu and R0 must be positive");
  require(problem.f.lipschitz_grad.has_value(), "restart_run: L_f required");
  require(problem.reference.has_value(), "restart_run: reference optimum required");
  if (h.kind != DgfKind::euclidean && !problem.r.is_trivial())
    throw unsupported_error("restart_run: non-euclidean restarts ship for trivial r only");

  const double L_f = *problem.f.lipschitz_grad;
  const double psi_min = problem.reference->psi_min;
  const int inner = cfg.inner_steps(L_f);

  Stopwatch clock;
  RestartResult res;
  res.z = z0;
  double gap = evaluate_objective(problem, res.z) - psi_min;
  res.trace.push({0, gap + psi_min, gap, 0.0, 0, 0, 0, clock.elapsed_ns()});
  if (gap <= eps) return res;

  int p_hat =
      static_cast<int>(std::ceil(0.5 * std::log2(cfg.mu * cfg.R0 * cfg.R0 / (2.0 * eps))));
  if (cfg.max_epochs > 0) p_hat = cfg.max_epochs;
  double R = cfg.R0;
  long k_total = 0, grad_calls = 0, prox_calls = 0;
  std::string boundaries;

  for (int p = 1; p <= std::max(p_hat, 1); ++p) {
    const DistanceGenerator hp = shifted_dgf(h, res.z, R);
    const AccelResult epoch = abpgm_run(problem, hp, L_f, res.z, inner);
    res.z = epoch.x;
    R *= 0.5;
    ++res.epochs;

    for (std::size_t i = 1; i < epoch.trace.rows.size(); ++i) {
      const TraceRow& r = epoch.trace.rows[i];
      ++k_total;
      res.trace.push({k_total, r.objective, r.gap, r.step, grad_calls + r.grad_calls,
                      prox_calls + r.prox_calls, 0, clock.elapsed_ns()});
    }
    grad_calls += epoch.trace.back().grad_calls;
    prox_calls += epoch.trace.back().prox_calls;
    if (!boundaries.empty()) boundaries += ",";
    boundaries += std::to_string(k_total);

    gap = evaluate_objective(problem, res.z) - psi_min;
    res.epoch_gaps.push_back(gap);
    const double guarantee = cfg.mu * cfg.R0 * cfg.R0 * std::pow(2.0, -2.0 * p) / 2.0;
    if (gap > 1.1 * guarantee)
      throw internal_fault("restart_run: epoch gap exceeds the guarantee (wrong mu or R0?)");
    if (gap <= eps) break;
  }
  res.trace.meta["epoch_boundaries"] = boundaries;
  return res;
}

UniversalResult universal_run(const CompositeProblem& problem, const DistanceGenerator& h,
                              const UniversalConfig& cfg, const Vec& x0, int steps) {
  require(cfg.eps > 0.0 && cfg.L0 > 0.0, "universal_run: eps and L0 must be positive");
  Stopwatch clock;
  const ProxMapping pm{h, problem.r, problem.X, 0.0, nullptr};
  const VectorFn& fprime = problem.f.subgradient ? problem.f.subgradient : problem.f.gradient;

  Vec x = x0, u = x0;
  double A = 0.0;
  double L = cfg.L0;
  double psi = evaluate_objective(problem, x);
  require(psi < kInf, "universal_run: x0 not in dom r");

  UniversalResult res;
  long prox_calls = 0;
  res.trace.push({0, psi, reference_gap(problem, psi), 0.0, 0, 0, 0, clock.elapsed_ns()});

  for (int k = 0; k < steps; ++k) {
    double M = 0.0;
    double alpha = 0.0, A_next = 0.0;
    Vec y, u_next, x_next;
    bool accepted = false;
    for (int i = 0; i <= cfg.max_doublings; ++i) {
      M = std::pow(2.0, i - 1) * L;
      alpha = (1.0 + std::sqrt(1.0 + 4.0 * M * A)) / (2.0 * M);
      A_next = A + alpha;
      y = (alpha / A_next) * u + (A / A_next) * x;
      const double fy = problem.f.value(y);
      const Vec g = fprime(y);
      ++res.oracle_calls;
      u_next = prox_map(pm, u, Vec(alpha * g), alpha);
      ++prox_calls;
      x_next = (alpha / A_next) * u_next + (A / A_next) * x;
      const double fx = problem.f.value(x_next);
      ++res.oracle_calls;
      const Vec d = x_next - y;
      const double rhs = fy + g.dot(d) + 0.5 * M * d.squaredNorm() +
                         cfg.eps * alpha / (2.0 * A_next);
      if (fx <= rhs) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw internal_fault("universal_run: doubling search exhausted (non-convex f or bad oracle)");

    x = x_next;
    u = u_next;
    A = A_next;
    L = M;
    ++res.outer_steps;
    psi = evaluate_objective(problem, x);
    res.trace.push({k + 1, psi, reference_gap(problem, psi), alpha, res.oracle_calls, prox_calls,
                    0, clock.elapsed_ns()});
    if (problem.reference && psi - problem.reference->psi_min <= cfg.eps) break;
  }
  res.x = x;
  res.L_final = L;
  return res;
}

SmoothedProblem build_smoothed(SmoothingVariant variant, const Mat& A, const Vec& b, double tau) {
  require(tau > 0.0, "build_smoothed: tau must be positive");
  require(A.rows() == b.size(), "build_smoothed: dimension mismatch");
  const Index m = A.rows();

  SmoothedProblem sp;
  sp.variant = variant;
  sp.A = A;
  sp.b = b;
  sp.tau = tau;
  double row_norm = 0.0;
  for (Index i = 0; i < m; ++i) row_norm = std::max(row_norm, A.row(i).norm());
  sp.op_norm = row_norm;

  if (variant == SmoothingVariant::softmax_uniform_fit) {
    sp.D_W = std::log(2.0 * static_cast<double>(m));
    sp.L_tau = row_norm * row_norm / tau;
    sp.original = [A, b](const Vec& x) { return (A * x - b).lpNorm<Eigen::Infinity>(); };
    const double log2m = std::log(2.0 * static_cast<double>(m));
    auto weights = [A, b, tau, m](const Vec& x) {
      const Vec r = A * x - b;
      Vec t(2 * m);
      t.head(m) = r / tau;
      t.tail(m) = -r / tau;
      const double mx = t.maxCoeff();
      Vec w = (t.array() - mx).exp();
      const double Z = w.sum();
      return std::pair<Vec, double>(Vec(w / Z), mx + std::log(Z));
    };
    sp.value = [weights, tau, log2m](const Vec& x) {
      return tau * (weights(x).second - log2m);
    };
    sp.gradient = [A, weights, m](const Vec& x) {
      const Vec w = weights(x).first;
      return Vec(A.transpose() * (w.head(m) - w.tail(m)));
    };
    sp.argmax_oracle = [weights](const Vec& x) { return weights(x).first; };
  } else {
    // Huber smoothing of ||Ax - b||_1 with per-row weights ||a_i||
    Vec norms(m);
    for (Index i = 0; i < m; ++i) norms[i] = A.row(i).norm();
    require(norms.minCoeff() > 0.0, "build_smoothed: zero rows are not smoothable");
    sp.D_W = 0.5 * norms.sum();  // h_w(w) = 1/2 sum ||a_i|| w_i^2 over ||w||_inf <= 1
    // operator norm between the l2 primal and the weighted dual geometry:
    // ||A||^2 = lambda_max(sum a_i a_i^T / ||a_i||)
    Mat weighted = A;
    for (Index i = 0; i < m; ++i) weighted.row(i) /= std::sqrt(norms[i]);
    sp.op_norm = operator_norm(weighted);
    sp.L_tau = sp.op_norm * sp.op_norm / tau;
    sp.original = [A, b](const Vec& x) { return (A * x - b).lpNorm<1>(); };
    auto huber = [tau](double t) {
      return t <= tau ? t * t / (2.0 * tau) : t - 0.5 * tau;
    };
    sp.value = [A, b, norms, huber](const Vec& x) {
      const Vec r = A * x - b;
      double s = 0.0;
      for (Index i = 0; i < r.size(); ++i) s += norms[i] * huber(std::abs(r[i]) / norms[i]);
      return s;
    };
    sp.gradient = [A, b, norms, tau](const Vec& x) {
      const Vec r = A * x - b;
      Vec w(r.size());
      for (Index i = 0; i < r.size(); ++i) {
        const double t = r[i] / norms[i];
        w[i] = std::abs(t) <= tau ? t / tau : (t > 0 ? 1.0 : -1.0);
      }
      return Vec(A.transpose() * w);
    };
    sp.argmax_oracle = [A, b, norms, tau](const Vec& x) {
      const Vec r = A * x - b;
      Vec w(r.size());
      for (Index i = 0; i < r.size(); ++i) {
        const double t = r[i] / norms[i];
        w[i] = std::abs(t) <= tau ? t / tau : (t > 0 ? 1.0 : -1.0);
      }
      return w;
    };
  }
  return sp;
}

double choose_tau(double norm_A, int N, double D_X, double D_W) {
  require(norm_A > 0.0 && N >= 1 && D_X > 0.0 && D_W > 0.0,
          "choose_tau: all inputs must be positive");
  return (2.0 * norm_A / (N + 1.0)) * std::sqrt(D_X / D_W);
}

AccelResult cg_inexact_abpgm_run(const CompositeProblem& problem,
                                 const GeneralizedLinearOracle& glo, double D_X, const Vec& x0,
                                 int steps) {
  require(problem.X.bounded(), "cg_inexact_abpgm_run: feasible set must be bounded");
  require(D_X > 0.0, "cg_inexact_abpgm_run: D_X must be positive");
  require(problem.f.lipschitz_grad.has_value(), "cg_inexact_abpgm_run: L_f required");
  const double L_f = *problem.f.lipschitz_grad;

  Stopwatch clock;
  Vec x = x0, u = x0;
  double A = 0.0;
  double psi = evaluate_objective(problem, x);
  long grad_calls = 0, lo_calls = 0;

  AccelResult res;
  res.A_history.push_back(0.0);
  res.trace.push({0, psi, reference_gap(problem, psi), 0.0, 0, 0, 0, clock.elapsed_ns()});

  for (int k = 0; k < steps; ++k) {
    const double alpha = positive_root(A, L_f);
    const double A_next = A + alpha;
    const Vec y = (alpha / A_next) * u + (A / A_next) * x;
    const Vec g = problem.f.gradient(y);
    ++grad_calls;
    // approximate Bregman step: one generalized linear-oracle answer
    u = glo.answer(g);
    ++lo_calls;
    x = (alpha / A_next) * u + (A / A_next) * x;
    A = A_next;
    psi = evaluate_objective(problem, x);
    res.A_history.push_back(A);
    res.trace.push({k + 1, psi, reference_gap(problem, psi), alpha, grad_calls, 0, lo_calls,
                    clock.elapsed_ns()});
  }
  res.x = x;
  res.u_final = u;
  return res;
}

}  // namespace foms
