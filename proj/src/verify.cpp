#include "foms/verify.hpp"

#include "foms/accelerated.hpp"
#include "foms/conditional_gradient.hpp"
#include "foms/dual_averaging.hpp"
#include "foms/geometry.hpp"
#include "foms/instances.hpp"
#include "foms/prng.hpp"
#include "foms/prox_gradient.hpp"
#include "foms/rates.hpp"
#include "foms/splitting.hpp"

#include <cmath>
#include <sstream>

namespace foms {

namespace {

bool violates(double gap, double bound) {
  return gap > bound * (1.0 + 1e-9) + 1e-12;
}

/// f(x) = 1/2 ||x - b||^2 over the simplex with b drawn outside; the exact
/// optimum is the euclidean projection of b.
CompositeProblem simplex_quadratic(Index n, std::uint64_t seed, double spread = 2.0) {
  Prng rng(seed);
  const Vec b = spread * rng.normal_vector(n);
  CompositeProblem p;
  p.f.value = [b](const Vec& x) { return 0.5 * (x - b).squaredNorm(); };
  p.f.gradient = [b](const Vec& x) { return Vec(x - b); };
  p.f.lipschitz_grad = 1.0;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  p.start = Vec::Constant(n, 1.0 / static_cast<double>(n));
  const Vec x_star = project_simplex(b);
  p.reference = ReferenceOptimum{x_star, 0.5 * (x_star - b).squaredNorm()};
  return p;
}

VerifyOutcome check_bpgm_rate(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "bpgm-rate";
  out.solver = "bpgm";
  Stopwatch clock;
  long violations = 0;
  std::ostringstream tags;
  for (int i = 0; i < 20; ++i) {
    InstanceSpec spec;
    if (i < 10) {
      spec = {"lasso", 50, 100, 0.1, seed + static_cast<std::uint64_t>(i)};
    } else {
      spec = {"simplex-qp", 40, 20, 0.0, seed + static_cast<std::uint64_t>(i)};
    }
    const GeneratedInstance inst = generate_problem(spec);
    const DistanceGenerator h = DistanceGenerator::euclidean();
    const SolverResult run =
        bpgm_run(inst.problem, h, StepPolicy::constant_smooth(), inst.problem.start, 1000);
    const double D = bregman_divergence(h, inst.problem.reference->x_star, inst.problem.start);
    const double L = inst.meta.L_f;
    for (const TraceRow& row : run.trace.rows) {
      if (row.k < 1) continue;
      if (violates(row.gap, L * D / (h.modulus * row.k))) ++violations;
    }
    if (i == 0) tags << spec.tag();
  }
  out.spec_tag = tags.str() + " (+19 more)";
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0 && out.seconds < 10.0;
  std::ostringstream d;
  d << "20 instances, k<=1000, violations=" << violations << ", " << out.seconds << " s";
  out.details = d.str();
  return out;
}

VerifyOutcome check_abpgm_rate(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "abpgm-rate";
  out.solver = "abpgm";
  Stopwatch clock;
  long violations = 0;
  for (int i = 0; i < 20; ++i) {
    InstanceSpec spec;
    if (i < 10) {
      spec = {"lasso", 50, 100, 0.1, seed + static_cast<std::uint64_t>(i)};
    } else {
      spec = {"simplex-qp", 40, 20, 0.0, seed + static_cast<std::uint64_t>(i)};
    }
    const GeneratedInstance inst = generate_problem(spec);
    const DistanceGenerator h = DistanceGenerator::euclidean();
    const double L = inst.meta.L_f;
    const AccelResult run = abpgm_run(inst.problem, h, L, inst.problem.start, 2000);
    const double D = bregman_divergence(h, inst.problem.reference->x_star, inst.problem.start);
    for (const TraceRow& row : run.trace.rows) {
      if (row.k < 1) continue;
      const double bound = 4.0 * L * D / ((row.k + 1.0) * (row.k + 1.0));
      if (violates(row.gap, bound)) ++violations;
    }
  }
  // weight growth A_k >= (k+1)^2 / (4 L_f) along a long run
  {
    const InstanceSpec spec{"lasso", 10, 20, 0.1, seed};
    const GeneratedInstance inst = generate_problem(spec);
    const double L = inst.meta.L_f;
    const AccelResult run =
        abpgm_run(inst.problem, DistanceGenerator::euclidean(), L, inst.problem.start, 10000);
    for (std::size_t k = 1; k < run.A_history.size(); ++k) {
      const double floor = (k + 1.0) * (k + 1.0) / (4.0 * L);
      if (run.A_history[k] < floor * (1.0 - 1e-10)) ++violations;
    }
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0;
  std::ostringstream d;
  d << "20 instances N<=2000 plus A_k floor to k=10^4, violations=" << violations;
  out.details = d.str();
  return out;
}

VerifyOutcome check_rate_separation(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "rate-separation";
  out.solver = "bpgm/abpgm";
  Stopwatch clock;
  const InstanceSpec spec{"simplex-qp", 30, 15, 0.0, seed};
  out.spec_tag = spec.tag();
  const GeneratedInstance inst = generate_problem(spec);
  const DistanceGenerator h = DistanceGenerator::euclidean();
  const SolverResult slow =
      bpgm_run(inst.problem, h, StepPolicy::constant_smooth(), inst.problem.start, 2000);
  const AccelResult fast = abpgm_run(inst.problem, h, inst.meta.L_f, inst.problem.start, 2000);
  const RateReport r_slow = fit_rate(slow.trace, {50, 2000});
  const RateReport r_fast = fit_rate(fast.trace, {50, 2000});
  out.slope = r_fast.slope;
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.pass = r_slow.slope <= -0.9 && r_fast.slope <= -1.8;
  std::ostringstream d;
  d << "bpgm slope=" << r_slow.slope << " (<= -0.9), abpgm slope=" << r_fast.slope
    << " (<= -1.8)";
  out.details = d.str();
  return out;
}

CompositeProblem max_coordinate_problem(Index n) {
  CompositeProblem p;
  p.f.value = [](const Vec& x) { return x.maxCoeff(); };
  p.f.subgradient = [](const Vec& x) {
    Index best = 0;
    for (Index i = 1; i < x.size(); ++i)
      if (x[i] > x[best]) best = i;
    Vec g = Vec::Zero(x.size());
    g[best] = 1.0;
    return g;
  };
  p.f.gradient = p.f.subgradient;
  p.f.subgrad_bound = 1.0;  // dual norm is l_inf under the l1 geometry
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  p.start = Vec::Constant(n, 1.0 / static_cast<double>(n));
  p.reference = ReferenceOptimum{p.start, 1.0 / static_cast<double>(n)};
  return p;
}

VerifyOutcome check_da_bound(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "da-bound";
  out.solver = "da";
  Stopwatch clock;
  const Index n = 10;
  const CompositeProblem problem = max_coordinate_problem(n);
  const DistanceGenerator h = DistanceGenerator::entropy_simplex(n);
  const double beta = 1.0;
  const DAResult run = da_run(problem, h, DASchedule::constant_beta_sqrt(beta), 10000);

  long violations = 0;
  const double omega = *h.diameter;
  for (long N : {100L, 1000L, 10000L}) {
    const double bound =
        (beta * omega + 0.0 + 0.5 * (1.0 + std::log(N + 1.0))) / std::sqrt(N + 1.0);
    const double gap = run.trace.rows[static_cast<std::size_t>(N)].gap;
    if (violates(gap, bound)) ++violations;
  }

  // side-by-side agreement with mirror descent
  CompositeProblem quad = simplex_quadratic(n, seed + 17, 1.0);
  const double deviation = da_md_equivalence_check(
      quad, h, 100, [](int k) { return 1.0 / std::sqrt(k + 1.0); });

  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0 && deviation <= 1e-10;
  std::ostringstream d;
  d << "bound violations=" << violations << ", da-md deviation=" << deviation;
  out.details = d.str();
  return out;
}

VerifyOutcome check_cp_adpmm(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "cp-adpmm";
  out.solver = "cp/adpmm";
  Stopwatch clock;
  const InstanceSpec spec{"lasso", 20, 10, 0.1, seed};
  out.spec_tag = spec.tag();
  const GeneratedInstance inst = generate_problem(spec);
  const SplitProblem& sp = *inst.split;
  const double c = 1.0;
  const double tau = 0.5 / (c * sp.op_norm * sp.op_norm);
  const Vec x0 = Vec::Zero(20), z0 = Vec::Zero(10), y0 = Vec::Zero(10);
  const double deviation = cp_adpmm_equivalence(sp, tau, c, x0, z0, y0, 200);
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.pass = deviation <= 1e-9;
  std::ostringstream d;
  d << "max iterate deviation over 200 steps = " << deviation;
  out.details = d.str();
  return out;
}

VerifyOutcome check_adpmm_certificate(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "adpmm-certificate";
  out.solver = "adpmm";
  Stopwatch clock;
  const Index n = 20;
  Prng rng(seed);
  const Vec b = rng.normal_vector(n);
  const double lambda = 0.5;
  SplitProblem sp = SplitProblem::l1_fit(Mat::Identity(n, n), b, lambda);
  const Vec x_star = b;  // per-coordinate optimum of |x-b| + lambda|x| for lambda < 1
  const double psi_min = lambda * b.lpNorm<1>();
  sp.reference = ReferenceOptimum{x_star, psi_min};
  sp.z_star = b;
  sp.y_star = Vec(-lambda * b.array().sign());

  const ADMMConfig cfg = ADMMConfig::classical(1.0);
  const Vec zero = Vec::Zero(n);
  const AdmmResult run = adpmm_run(sp, cfg, zero, zero, zero, 1000);
  const double C1 = run.certificate.C1(x_star, *sp.z_star, *sp.lipschitz_g);

  long violations = 0;
  for (const TraceRow& row : run.trace.rows) {
    if (row.k < 1) continue;
    if (violates(row.gap, C1 / (2.0 * row.k))) ++violations;
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0;
  std::ostringstream d;
  d << "ergodic bound C1/(2k) with C1=" << C1 << ", violations=" << violations;
  out.details = d.str();
  return out;
}

VerifyOutcome check_gcg_rate(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "gcg-rate";
  out.solver = "gcg";
  Stopwatch clock;
  long violations = 0;
  const Index n = 10;
  for (int i = 0; i < 10; ++i) {
    const CompositeProblem problem = simplex_quadratic(n, seed + static_cast<std::uint64_t>(i));
    const GeneralizedLinearOracle glo =
        GeneralizedLinearOracle::over(problem.X, NonsmoothPart::zero());
    const double s0 = evaluate_objective(problem, problem.start) - problem.reference->psi_min;
    const double cap = 2.0 * std::max(s0, 1.0 * 2.0);  // L_f = 1, Omega^2 = 2
    for (CGStep kind : {CGStep::standard, CGStep::exact_line_search, CGStep::adaptive}) {
      CGStepRule rule;
      rule.kind = kind;
      const GCGResult run = gcg_run(problem, glo, rule, problem.start, 10000);
      for (const TraceRow& row : run.trace.rows) {
        if (row.k < 1) continue;
        const double gap = row.objective - problem.reference->psi_min;
        if (violates(gap, cap / row.k)) ++violations;
      }
    }
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0;
  std::ostringstream d;
  d << "10 instances x 3 step rules, k<=10^4, violations=" << violations;
  out.details = d.str();
  return out;
}

VerifyOutcome check_scg_rate(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "scg-rate";
  out.solver = "scg";
  Stopwatch clock;
  const Index n = 20;
  const CompositeProblem problem = simplex_quadratic(n, seed);
  const LinearOracle lo = LinearOracle::over(problem.X);
  SCGParams params;
  params.lipschitz = 1.0;
  params.omega_sq = 2.0;
  const SCGResult run = scg_run(problem, lo, params, problem.start, 300);

  long violations = 0;
  for (const TraceRow& row : run.trace.rows) {
    if (row.k < 1) continue;
    const double bound =
        15.0 * params.lipschitz * params.omega_sq / (2.0 * (row.k + 1.0) * (row.k + 2.0));
    if (violates(row.objective - problem.reference->psi_min, bound)) ++violations;
    if (row.grad_calls != row.k) ++violations;  // one gradient per outer step
  }
  for (std::size_t k = 1; k <= run.lo_calls_per_epoch.size(); ++k) {
    const double cap = std::ceil(6.0 * params.beta(static_cast<int>(k)) * params.omega_sq /
                                 params.eta(static_cast<int>(k)));
    if (run.lo_calls_per_epoch[k - 1] > cap) ++violations;
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0;
  std::ostringstream d;
  d << "k<=300 rate + gradient-call identity + per-epoch LO caps, violations=" << violations;
  out.details = d.str();
  return out;
}

VerifyOutcome check_restart(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "restart";
  out.solver = "restart-abpgm";
  Stopwatch clock;
  const InstanceSpec spec{"strongly-convex-qp", 30, 30, 1.0, seed};
  out.spec_tag = spec.tag();
  const GeneratedInstance inst = generate_problem(spec);

  RestartConfig cfg;
  cfg.mu = inst.meta.mu;
  cfg.R0 = inst.problem.reference->x_star.norm() * (1.0 + 1e-9);
  cfg.Omega = 1.0;
  cfg.max_epochs = 8;
  const RestartResult run = restart_run(inst.problem, DistanceGenerator::euclidean(), cfg,
                                        inst.problem.start, 1e-300);

  long violations = 0;
  const int epochs_checked = std::min<int>(8, static_cast<int>(run.epoch_gaps.size()));
  for (int p = 1; p <= epochs_checked; ++p) {
    const double guarantee = cfg.mu * cfg.R0 * cfg.R0 * std::pow(4.0, -p) / 2.0;
    if (violates(run.epoch_gaps[p - 1], guarantee)) ++violations;
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0 && epochs_checked == 8;
  std::ostringstream d;
  d << epochs_checked << " epochs, per-epoch guarantee mu R0^2 4^-p / 2, violations="
    << violations;
  out.details = d.str();
  return out;
}

VerifyOutcome check_universal(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "universal";
  out.solver = "universal";
  Stopwatch clock;
  bool ok = true;
  std::ostringstream d;

  {  // non-smooth part: reach eps with no Holder inputs
    const InstanceSpec spec{"nonsmooth-l1", 10, 10, 0.0, seed};
    const GeneratedInstance inst = generate_problem(spec);
    UniversalConfig cfg;
    cfg.eps = 1e-2;
    cfg.L0 = 1.0;
    const UniversalResult run =
        universal_run(inst.problem, DistanceGenerator::euclidean(), cfg, inst.problem.start,
                      200000);
    const double gap = evaluate_objective(inst.problem, run.x) - inst.meta.psi_min;
    ok = ok && gap <= cfg.eps;
    d << "l1-on-box gap=" << gap << " after " << run.outer_steps << " steps; ";
  }
  {  // smooth part: oracle-call budget 4N + 2 log2(L_N/L0) + 4
    const InstanceSpec spec{"strongly-convex-qp", 20, 20, 1.0, seed};
    const GeneratedInstance inst = generate_problem(spec);
    UniversalConfig cfg;
    cfg.eps = 1e-4;
    cfg.L0 = inst.meta.L_f / 10.0;
    const UniversalResult run = universal_run(inst.problem, DistanceGenerator::euclidean(), cfg,
                                              inst.problem.start, 2000);
    const double budget =
        4.0 * run.outer_steps + 2.0 * std::log2(run.L_final / cfg.L0) + 4.0;
    ok = ok && run.oracle_calls <= budget;
    d << "qp oracle calls " << run.oracle_calls << " <= " << budget;
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  ok = ok && out.seconds < 30.0;
  out.pass = ok;
  out.details = d.str();
  return out;
}

VerifyOutcome check_smoothing(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "smoothing";
  out.solver = "abpgm-smoothed";
  Stopwatch clock;
  const InstanceSpec spec{"uniform-fit", 20, 10, 0.0, seed};
  out.spec_tag = spec.tag();
  const GeneratedInstance inst = generate_problem(spec);
  long violations = 0;

  {  // uniform approximation sandwich at sampled points
    const double tau = 0.1;
    const SmoothedProblem sm =
        build_smoothed(SmoothingVariant::softmax_uniform_fit, inst.A, inst.b, tau);
    Prng rng(seed + 1);
    for (int i = 0; i < 1000; ++i) {
      Vec x = rng.normal_vector(spec.n);
      x *= rng.uniform() / std::max(x.norm(), 1e-12);
      const double psi = sm.original(x);
      const double psi_tau = sm.value(x);
      if (psi_tau > psi + 1e-10) ++violations;
      if (psi > psi_tau + tau * sm.D_W + 1e-10) ++violations;
    }
  }

  const double D_X = inst.meta.D_X;
  for (int N : {100, 1000}) {
    const SmoothedProblem probe =
        build_smoothed(SmoothingVariant::softmax_uniform_fit, inst.A, inst.b, 1.0);
    const double tau = choose_tau(probe.op_norm, N, D_X, probe.D_W);
    const SmoothedProblem sm =
        build_smoothed(SmoothingVariant::softmax_uniform_fit, inst.A, inst.b, tau);

    CompositeProblem smoothed;
    smoothed.f.value = sm.value;
    smoothed.f.gradient = sm.gradient;
    smoothed.f.lipschitz_grad = sm.L_tau;
    smoothed.r = NonsmoothPart::zero();
    smoothed.X = inst.problem.X;
    smoothed.start = inst.problem.start;  // the h-minimizer of the ball
    const AccelResult run =
        abpgm_run(smoothed, DistanceGenerator::euclidean(), sm.L_tau, smoothed.start, N);
    const double bound = 4.0 * sm.op_norm * std::sqrt(D_X * sm.D_W) / (N + 1.0);
    const double gap = sm.original(run.x) - inst.meta.psi_min;
    if (violates(gap, bound)) ++violations;
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0;
  std::ostringstream d;
  d << "sandwich at 10^3 points + rate bound at N in {100, 1000}, violations=" << violations;
  out.details = d.str();
  return out;
}

VerifyOutcome check_cg_abpgm(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "cg-abpgm";
  out.solver = "cg-inexact-abpgm";
  Stopwatch clock;
  const Index n = 10;
  const CompositeProblem problem = simplex_quadratic(n, seed);
  const GeneralizedLinearOracle glo =
      GeneralizedLinearOracle::over(problem.X, NonsmoothPart::zero());
  const double D_X = 1.0;  // max of 1/2||x-u||^2 over the simplex
  const double L = 1.0;
  const AccelResult run = cg_inexact_abpgm_run(problem, glo, D_X, problem.start, 1000);

  long violations = 0;
  for (const TraceRow& row : run.trace.rows) {
    if (row.k < 1) continue;
    const double bound =
        4.0 * L * D_X / ((row.k + 1.0) * (row.k + 1.0)) + 8.0 * L * D_X / (row.k + 1.0);
    if (violates(row.gap, bound)) ++violations;
    if (row.prox_calls != 0) ++violations;
    if (row.grad_calls != row.k) ++violations;
  }
  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0;
  std::ostringstream d;
  d << "rate bound N<=10^3 with zero prox calls, violations=" << violations;
  out.details = d.str();
  return out;
}

VerifyOutcome check_geometry(std::uint64_t seed) {
  VerifyOutcome out;
  out.bound = "geometry";
  out.solver = "-";
  Stopwatch clock;
  long violations = 0;
  Prng rng(seed);
  const Index n = 8;

  // three-point identity per DGF kind
  struct KindSampler {
    DistanceGenerator h;
    std::function<Vec()> sample;
  };
  std::vector<KindSampler> kinds;
  kinds.push_back({DistanceGenerator::euclidean(), [&rng, n] { return rng.normal_vector(n); }});
  kinds.push_back({DistanceGenerator::entropy_simplex(n), [&rng, n] {
                     Vec p = rng.simplex_point(n);
                     return Vec((p.array() + 1e-6) / (p.sum() + n * 1e-6));
                   }});
  kinds.push_back({DistanceGenerator::fermi_dirac(Vec::Zero(n), Vec::Ones(n)),
                   [&rng, n] { return rng.uniform_vector(n, 0.05, 0.95); }});
  for (const KindSampler& ks : kinds) {
    for (int i = 0; i < 1000; ++i) {
      const Vec x = ks.sample(), y = ks.sample(), z = ks.sample();
      const double lhs = bregman_divergence(ks.h, z, x) - bregman_divergence(ks.h, z, y) -
                         bregman_divergence(ks.h, y, x);
      const double rhs = (ks.h.gradient(x) - ks.h.gradient(y)).dot(y - z);
      if (std::abs(lhs - rhs) > 1e-10) ++violations;
    }
  }

  // Moreau identity residual for the l1 / linf-ball conjugate pair
  const NonsmoothPart g = NonsmoothPart::l1(1.0);
  const ProxFn conj = [](const Vec& v, double) {
    return Vec(v.cwiseMax(-1.0).cwiseMin(1.0));
  };
  for (double c : {0.5, 1.0, 2.0}) {
    const Vec u = rng.normal_vector(10);
    if (moreau_identity_check(g, conj, c, u) > 1e-12) ++violations;
  }

  // Moreau envelope gradient vs central differences
  for (int i = 0; i < 100; ++i) {
    const double gamma = i % 2 == 0 ? 1.0 : 2.0;
    const Vec x = rng.normal_vector(5);
    const auto [value, grad] = moreau_envelope(g, gamma, x);
    const double h_fd = 1e-6;
    for (Index j = 0; j < x.size(); ++j) {
      Vec xp = x, xm = x;
      xp[j] += h_fd;
      xm[j] -= h_fd;
      const double fd =
          (moreau_envelope(g, gamma, xp).first - moreau_envelope(g, gamma, xm).first) /
          (2.0 * h_fd);
      if (std::abs(grad[j] - fd) / (1.0 + std::abs(grad[j])) > 1e-5) ++violations;
    }
  }

  // prox closed forms vs brute-force grids (1-2D)
  {
    // entropy on the 2-simplex
    const DistanceGenerator h = DistanceGenerator::entropy_simplex(2);
    const ProxMapping pm{h, NonsmoothPart::zero(), FeasibleSet::simplex(2), 0.0, nullptr};
    Vec x(2), y(2);
    x << 0.5, 0.5;
    y << std::log(2.0), 0.0;
    const Vec u = prox_map(pm, x, y);
    double best_t = 0.5, best_val = kInf;
    for (double t = 1e-4; t < 1.0; t += 2.5e-4) {
      Vec cand(2);
      cand << t, 1.0 - t;
      const double val = y.dot(cand - x) + bregman_divergence(h, cand, x);
      if (val < best_val) {
        best_val = val;
        best_t = t;
      }
    }
    if (std::abs(u[0] - best_t) > 1e-3) ++violations;

    // fermi-dirac in 1D
    const DistanceGenerator hf = DistanceGenerator::fermi_dirac(Vec::Zero(1), Vec::Ones(1));
    const ProxMapping pmf{hf, NonsmoothPart::zero(), FeasibleSet::box(Vec::Zero(1), Vec::Ones(1)),
                          0.0, nullptr};
    Vec xf(1), yf(1);
    xf << 0.5;
    yf << -std::log(3.0);
    const Vec uf = prox_map(pmf, xf, yf);
    best_t = 0.5;
    best_val = kInf;
    for (double t = 1e-4; t < 1.0; t += 2.5e-4) {
      Vec cand(1);
      cand << t;
      const double val = yf.dot(cand - xf) + bregman_divergence(hf, cand, xf);
      if (val < best_val) {
        best_val = val;
        best_t = t;
      }
    }
    if (std::abs(uf[0] - best_t) > 1e-3) ++violations;
    if (std::abs(uf[0] - 0.75) > 1e-12) ++violations;

    // euclidean prox of the l1 regularizer vs grid
    Vec xs(1);
    xs << 3.0;
    const Vec us = soft_threshold(xs, 1.0);
    best_t = 0.0;
    best_val = kInf;
    for (double t = -5.0; t < 5.0; t += 2.5e-4) {
      const double val = std::abs(t) + 0.5 * (t - 3.0) * (t - 3.0);
      if (val < best_val) {
        best_val = val;
        best_t = t;
      }
    }
    if (std::abs(us[0] - best_t) > 1e-3) ++violations;
  }

  out.seconds = clock.elapsed_ns() * 1e-9;
  out.violations = violations;
  out.pass = violations == 0;
  std::ostringstream d;
  d << "three-point, Moreau identity/envelope, prox-vs-grid, violations=" << violations;
  out.details = d.str();
  return out;
}

}  // namespace

const std::vector<std::string>& known_bounds() {
  static const std::vector<std::string> bounds = {
      "bpgm-rate",  "abpgm-rate", "rate-separation", "da-bound",  "cp-adpmm",
      "adpmm-certificate", "gcg-rate",   "scg-rate",        "restart",   "universal",
      "smoothing",  "cg-abpgm",   "geometry"};
  return bounds;
}

VerifyOutcome verify_bound(const std::string& bound, std::uint64_t seed) {
  if (bound == "bpgm-rate") return check_bpgm_rate(seed);
  if (bound == "abpgm-rate") return check_abpgm_rate(seed);
  if (bound == "rate-separation") return check_rate_separation(seed);
  if (bound == "da-bound") return check_da_bound(seed);
  if (bound == "cp-adpmm") return check_cp_adpmm(seed);
  if (bound == "adpmm-certificate") return check_adpmm_certificate(seed);
  if (bound == "gcg-rate") return check_gcg_rate(seed);
  if (bound == "scg-rate") return check_scg_rate(seed);
  if (bound == "restart") return check_restart(seed);
  if (bound == "universal") return check_universal(seed);
  if (bound == "smoothing") return check_smoothing(seed);
  if (bound == "cg-abpgm") return check_cg_abpgm(seed);
  if (bound == "geometry") return check_geometry(seed);
  std::string known;
  for (const std::string& b : known_bounds()) known += (known.empty() ? "" : ", ") + b;
  throw std::invalid_argument("unknown bound '" + bound + "'; known bounds: " + known);
}

std::vector<VerifyOutcome> verify_all(std::uint64_t seed) {
  std::vector<VerifyOutcome> all;
  for (const std::string& b : known_bounds()) all.push_back(verify_bound(b, seed));
  return all;
}

}  // namespace foms
