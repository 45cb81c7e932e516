#include "foms/dual_averaging.hpp"
#include "foms/prng.hpp"

#include <doctest.h>

#include <cmath>

using namespace foms;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

CompositeProblem max_coordinate(Index n) {
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
  p.f.subgrad_bound = 1.0;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  p.start = Vec::Constant(n, 1.0 / static_cast<double>(n));
  p.reference = ReferenceOptimum{p.start, 1.0 / static_cast<double>(n)};
  return p;
}

}  // namespace

TEST_CASE("mirror map closed forms") {
  const DistanceGenerator h = DistanceGenerator::entropy_simplex(2);
  const NonsmoothPart r = NonsmoothPart::zero();
  const FeasibleSet X = FeasibleSet::simplex(2);

  const Vec uniform = mirror_map(h, r, X, 1.0, 0.0, vec2(0, 0));
  CHECK(uniform[0] == doctest::Approx(0.5).epsilon(1e-15));

  const Vec q = mirror_map(h, r, X, 1.0, 0.0, vec2(std::log(2.0), 0.0));
  CHECK(q[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // numeric constrained maximization: the concave model
  // t -> y0 t + y1 (1-t) - t ln t - (1-t) ln(1-t) has the monotone derivative
  // (y0 - y1) - ln(t/(1-t)); bisect on its sign
  const Vec y = vec2(std::log(2.0), 0.0);
  double lo = 1e-12, hi = 1.0 - 1e-12;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double slope = (y[0] - y[1]) - std::log(mid / (1.0 - mid));
    (slope > 0 ? lo : hi) = mid;
  }
  const double t_star = 0.5 * (lo + hi);
  CHECK(std::abs(q[0] - t_star) <= 1e-10);

  // constant dual signal maps to the uniform point
  const Vec c = mirror_map(h, r, X, 3.0, 0.0, vec2(4.2, 4.2));
  CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-14));

  // euclidean closed form is a scaled projection
  const Vec e = mirror_map(DistanceGenerator::euclidean(), r,
                           FeasibleSet::box(vec2(-1, -1), vec2(1, 1)), 2.0, 0.0, vec2(4, -1));
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(-0.5));
}

TEST_CASE("dual averaging bound on the max function over the simplex") {
  const Index n = 10;
  const CompositeProblem p = max_coordinate(n);
  const DistanceGenerator h = DistanceGenerator::entropy_simplex(n);
  const DAResult run = da_run(p, h, DASchedule::constant_beta_sqrt(1.0), 1000);
  const double omega = *h.diameter;
  for (long N : {100L, 1000L}) {
    const double bound = (omega + 0.5 * (1.0 + std::log(N + 1.0))) / std::sqrt(N + 1.0);
    CHECK(run.trace.rows[static_cast<std::size_t>(N)].gap <= bound + 1e-12);
  }
  CHECK(p.X.membership(run.xbar));
}

TEST_CASE("dual accumulation is a plain sum of subgradients") {
  const Index n = 4;
  Prng rng(2);
  const Vec c = rng.normal_vector(n);
  CompositeProblem p;
  p.f = SmoothPart::linear(c);
  p.f.subgradient = p.f.gradient;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  const int N = 37;
  const DASchedule sched = DASchedule::constant_beta_sqrt(1.0);
  const DAResult run = da_run(p, DistanceGenerator::entropy_simplex(n), sched, N);
  double lambda_sum = 0.0;
  for (int k = 0; k < N; ++k) lambda_sum += sched.lambda(k);
  CHECK((run.state.y + lambda_sum * c).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("ergodic average of a linear objective approaches the best vertex") {
  const Index n = 6;
  Prng rng(14);
  const Vec c = rng.normal_vector(n);
  CompositeProblem p;
  p.f = SmoothPart::linear(c);
  p.f.subgradient = p.f.gradient;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  p.reference = ReferenceOptimum{Vec::Zero(n), c.minCoeff()};  // vertex enumeration
  const DAResult run =
      da_run(p, DistanceGenerator::entropy_simplex(n), DASchedule::constant_beta_sqrt(1.0), 10000);
  CHECK(c.dot(run.xbar) - c.minCoeff() <= 0.05);
  CHECK(run.xbar.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(run.xbar.minCoeff() >= 0.0);
}

TEST_CASE("constant objective keeps the ergodic average at the prox center") {
  const Index n = 5;
  CompositeProblem p;
  p.f.value = [](const Vec&) { return 2.0; };
  p.f.subgradient = [](const Vec& x) { return Vec(Vec::Zero(x.size())); };
  p.f.gradient = p.f.subgradient;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  const DAResult run =
      da_run(p, DistanceGenerator::entropy_simplex(n), DASchedule::constant_beta_sqrt(1.0), 50);
  const Vec center = Vec::Constant(n, 1.0 / static_cast<double>(n));
  CHECK((run.xbar - center).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("dual averaging agrees with mirror descent") {
  const Index n = 10;
  Prng rng(8);
  auto lambda = [](int k) { return 1.0 / std::sqrt(k + 1.0); };
  const DistanceGenerator h = DistanceGenerator::entropy_simplex(n);

  CompositeProblem linear;
  linear.f = SmoothPart::linear(rng.normal_vector(n));
  linear.r = NonsmoothPart::zero();
  linear.X = FeasibleSet::simplex(n);
  CHECK(da_md_equivalence_check(linear, h, 100, lambda) <= 1e-10);

  const Vec b = rng.normal_vector(n);
  CompositeProblem quad;
  quad.f.value = [b](const Vec& x) { return 0.5 * (x - b).squaredNorm(); };
  quad.f.gradient = [b](const Vec& x) { return Vec(x - b); };
  quad.r = NonsmoothPart::zero();
  quad.X = FeasibleSet::simplex(n);
  CHECK(da_md_equivalence_check(quad, h, 100, lambda) <= 1e-10);

  CHECK(da_md_equivalence_check(quad, h, 0, lambda) == 0.0);
}

TEST_CASE("entropy setup constant beats the euclidean one on the large simplex") {
  const Index n = 10000;
  Prng rng(99);
  const Vec c = rng.normal_vector(n);
  const double entropy_const = std::sqrt(std::log(static_cast<double>(n))) *
                               c.lpNorm<Eigen::Infinity>();
  const double euclid_const =
      std::sqrt((n - 1.0) / (2.0 * n)) * c.norm();
  CHECK(entropy_const <= euclid_const);
}

TEST_CASE("fixed-horizon schedule uses the stated constant step") {
  const DASchedule s = DASchedule::fixed_horizon(1.0, 1.0, std::log(10.0), 1.0, 99);
  const double expected = std::sqrt(2.0 * std::log(10.0)) / 10.0;
  CHECK(s.lambda(0) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(s.lambda(42) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(s.beta(7) == 1.0);
}
