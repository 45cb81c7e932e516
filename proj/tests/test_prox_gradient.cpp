#include "foms/conditional_gradient.hpp"
#include "foms/instances.hpp"
#include "foms/prox_gradient.hpp"
#include "foms/rates.hpp"

#include <doctest.h>

#include <cmath>

using namespace foms;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("one gradient step lands on the minimizer of a unit quadratic") {
  const Vec z = vec2(3, -1);
  CompositeProblem p;
  p.f.value = [z](const Vec& x) { return 0.5 * (x - z).squaredNorm(); };
  p.f.gradient = [z](const Vec& x) { return Vec(x - z); };
  p.f.lipschitz_grad = 1.0;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::whole_space(2);

  const SolverResult run = bpgm_run(p, DistanceGenerator::euclidean(),
                                    StepPolicy::constant_smooth(), vec2(1, 1), 1);
  CHECK(run.x[0] == z[0]);
  CHECK(run.x[1] == z[1]);
  CHECK(run.trace.size() == 2);
}

TEST_CASE("bpgm satisfies the constant-step bound on a seeded lasso") {
  const InstanceSpec spec{"lasso", 20, 40, 0.1, 5};
  const GeneratedInstance inst = generate_problem(spec);
  const DistanceGenerator h = DistanceGenerator::euclidean();
  const SolverResult run =
      bpgm_run(inst.problem, h, StepPolicy::constant_smooth(), inst.problem.start, 1000);
  const double D = bregman_divergence(h, inst.problem.reference->x_star, inst.problem.start);
  for (const TraceRow& row : run.trace.rows) {
    if (row.k < 1) continue;
    CHECK(row.gap <= inst.meta.L_f * D / row.k * (1.0 + 1e-9) + 1e-12);
  }
  // descent at every step
  for (std::size_t i = 1; i < run.trace.rows.size(); ++i)
    CHECK(run.trace.rows[i].objective <=
          run.trace.rows[i - 1].objective + 1e-12 * (1.0 + std::abs(run.trace.rows[i].objective)));
}

TEST_CASE("entropic bpgm stays feasible and monotone") {
  const Index n = 8;
  Prng rng(3);
  const Vec c = rng.normal_vector(n);
  CompositeProblem p;
  p.f.value = [c](const Vec& x) { return c.dot(x) + 0.5 * x.squaredNorm(); };
  p.f.gradient = [c](const Vec& x) { return Vec(c + x); };
  p.f.lipschitz_grad = 1.0;  // l1 -> linf operator bound of the identity Hessian
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  p.start = Vec::Constant(n, 1.0 / static_cast<double>(n));

  const SolverResult run = bpgm_run(p, DistanceGenerator::entropy_simplex(n),
                                    StepPolicy::constant_smooth(), p.start, 500);
  CHECK(p.X.membership(run.x));
  for (std::size_t i = 1; i < run.trace.rows.size(); ++i)
    CHECK(run.trace.rows[i].objective <= run.trace.rows[i - 1].objective + 1e-12);
}

TEST_CASE("bpgm with euclidean geometry reproduces projected gradient") {
  const InstanceSpec spec{"simplex-qp", 12, 6, 0.0, 11};
  const GeneratedInstance inst = generate_problem(spec);
  const double gamma = 1.0 / inst.meta.L_f;
  const SolverResult run = bpgm_run(inst.problem, DistanceGenerator::euclidean(),
                                    StepPolicy::constant_smooth(), inst.problem.start, 50);
  Vec x = inst.problem.start;
  for (int k = 0; k < 50; ++k) x = project_simplex(Vec(x - gamma * inst.problem.f.gradient(x)));
  CHECK((x - run.x).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("a wrong Lipschitz constant is reported as an internal fault") {
  const InstanceSpec spec{"lasso", 10, 20, 0.1, 5};
  GeneratedInstance inst = generate_problem(spec);
  inst.problem.f.lipschitz_grad = inst.meta.L_f / 100.0;  // forces an objective increase
  CHECK_THROWS_AS(bpgm_run(inst.problem, DistanceGenerator::euclidean(),
                           StepPolicy::constant_smooth(), inst.problem.start, 200),
                  internal_fault);
}

TEST_CASE("mirror descent on |x| reaches the stated accuracy") {
  CompositeProblem p;
  p.f.value = [](const Vec& x) { return std::abs(x[0]); };
  p.f.subgradient = [](const Vec& x) {
    Vec g(1);
    g << (x[0] > 0 ? 1.0 : (x[0] < 0 ? -1.0 : 0.0));
    return g;
  };
  p.f.gradient = p.f.subgradient;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::box(Vec::Constant(1, -2.0), Vec::Constant(1, 2.0));
  p.reference = ReferenceOptimum{Vec::Zero(1), 0.0};
  Vec x0(1);
  x0 << 1.0;
  const SolverResult run =
      mirror_descent_run(p, DistanceGenerator::euclidean(), x0, 10000, 1.0);
  CHECK(evaluate_objective(p, run.x) <= 0.05);

}

TEST_CASE("mirror descent with entropy geometry on the max function") {
  const Index n = 10;
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
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  p.reference = ReferenceOptimum{Vec::Constant(n, 0.1), 0.1};
  Prng rng(4);
  Vec x0 = rng.simplex_point(n);
  const double gamma0 = std::sqrt(2.0 * std::log(static_cast<double>(n)));
  const SolverResult run =
      mirror_descent_run(p, DistanceGenerator::entropy_simplex(n), x0, 10000, gamma0);
  CHECK(evaluate_objective(p, run.x) - 0.1 <= 0.02);
}

TEST_CASE("constant objective keeps mirror descent stationary") {
  CompositeProblem p;
  p.f.value = [](const Vec&) { return 1.0; };
  p.f.subgradient = [](const Vec& x) { return Vec(Vec::Zero(x.size())); };
  p.f.gradient = p.f.subgradient;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::box(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  const Vec x0 = vec2(0.3, -0.7);
  const SolverResult run = mirror_descent_run(p, DistanceGenerator::euclidean(), x0, 100, 1.0);
  CHECK((run.x - x0).norm() == 0.0);

  CompositeProblem no_sub = p;
  no_sub.f.subgradient = nullptr;
  CHECK_THROWS_AS(mirror_descent_run(no_sub, DistanceGenerator::euclidean(), x0, 10, 1.0),
                  unsupported_error);
}

TEST_CASE("relative-smoothness run on the quartic pair") {
  // f = 1/4 ||x||^4 is 3-smooth relative to h = 1/4||x||^4 + 1/2||x||^2:
  // 3 hess(h) - hess(f) = 4 x x^T + (2||x||^2 + 3) I is PSD at sampled points.
  Prng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Vec x = rng.normal_vector(3), v = rng.normal_vector(3);
    const double quad_f = 2.0 * std::pow(x.dot(v), 2) + x.squaredNorm() * v.squaredNorm();
    const double quad_h = quad_f + v.squaredNorm();
    CHECK(3.0 * quad_h - quad_f >= -1e-12);
  }

  CompositeProblem p;
  p.f.value = [](const Vec& x) { return 0.25 * std::pow(x.squaredNorm(), 2); };
  p.f.gradient = [](const Vec& x) { return Vec(x.squaredNorm() * x); };
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::whole_space(2);
  DistanceGenerator h = DistanceGenerator::quartic();
  h.rel_smooth_const = 3.0;
  h.symmetry = 0.0;  // conservative fallback

  const Vec x0 = vec2(1, 1);
  const SolverResult run = nolips_run(p, h, x0, 400);
  CHECK(evaluate_objective(p, run.x) <= 1e-3);
  for (std::size_t i = 1; i < run.trace.rows.size(); ++i)
    CHECK(run.trace.rows[i].objective <= run.trace.rows[i - 1].objective + 1e-12);

  // starting at the minimizer keeps the iterates still
  const SolverResult still = nolips_run(p, h, Vec(Vec::Zero(2)), 10);
  CHECK(still.x.norm() == 0.0);
}

TEST_CASE("euclidean specialization of the relative-smooth step matches bpgm") {
  const InstanceSpec spec{"strongly-convex-qp", 6, 6, 1.0, 8};
  const GeneratedInstance inst = generate_problem(spec);
  DistanceGenerator h = DistanceGenerator::euclidean();
  h.rel_smooth_const = inst.meta.L_f;
  h.symmetry = 1.0;  // step (1+1)/(2 L) = 1/L, identical to the smooth constant step

  const SolverResult a = nolips_run(inst.problem, h, inst.problem.start, 50);
  const SolverResult b = bpgm_run(inst.problem, h, StepPolicy::constant_smooth(),
                                  inst.problem.start, 50);
  CHECK((a.x - b.x).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("bpgm stops early once the merit gap clears the target") {
  const InstanceSpec spec{"simplex-qp", 10, 6, 0.0, 31};
  const GeneratedInstance inst = generate_problem(spec);
  const GeneralizedLinearOracle glo =
      GeneralizedLinearOracle::over(inst.problem.X, NonsmoothPart::zero());
  const SolverResult capped = bpgm_run(inst.problem, DistanceGenerator::euclidean(),
                                       StepPolicy::constant_smooth(), inst.problem.start, 100000,
                                       &glo, 1e-6);
  CHECK(capped.trace.back().k < 100000);
  const GapReport gap = merit_gap(inst.problem, glo, capped.x);
  CHECK(gap.e < 1e-6);
}
