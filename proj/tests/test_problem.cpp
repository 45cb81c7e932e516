#include "foms/conditional_gradient.hpp"
#include "foms/problem.hpp"
#include "foms/prng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace foms;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

CompositeProblem half_sq_norm(Index n) {
  CompositeProblem p;
  p.f.value = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  p.f.gradient = [](const Vec& x) { return x; };
  p.f.lipschitz_grad = 1.0;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::whole_space(n);
  p.start = Vec::Zero(n);
  return p;
}

}  // namespace

TEST_CASE("evaluate_objective") {
  CompositeProblem p = half_sq_norm(2);
  CHECK(evaluate_objective(p, vec2(1, 1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(evaluate_objective(p, vec2(1, 1)) == evaluate_objective(p, vec2(1, 1)));  // pure

  CompositeProblem ind;
  ind.f = SmoothPart::zero();
  const FeasibleSet simplex = FeasibleSet::simplex(2);
  ind.r = NonsmoothPart::indicator(simplex.membership, simplex.projection);
  ind.X = simplex;
  CHECK(evaluate_objective(ind, vec2(2, 0)) == kInf);
  CHECK(evaluate_objective(ind, vec2(0.5, 0.5)) == 0.0);

  CompositeProblem lasso;
  const Vec b = vec2(2, 0);
  lasso.f.value = [b](const Vec& x) { return 0.5 * (x - b).squaredNorm(); };
  lasso.f.gradient = [b](const Vec& x) { return Vec(x - b); };
  lasso.r = NonsmoothPart::l1(1.0);
  lasso.X = FeasibleSet::whole_space(2);
  CHECK(evaluate_objective(lasso, vec2(1, 0)) == doctest::Approx(1.5).epsilon(1e-15));

  CHECK_THROWS_AS(evaluate_objective(p, Vec(Vec::Zero(3))), std::invalid_argument);
}

TEST_CASE("check_gradient") {
  CompositeProblem p = half_sq_norm(3);
  Vec x(3);
  x << 0.3, -1.2, 2.0;
  CHECK(check_gradient(p, x, 1e-4) <= 1e-7);  // quadratic is exact under central differences

  Prng rng(42);
  const Mat A = rng.normal_matrix(5, 5);
  const Vec b = rng.normal_vector(5);
  CompositeProblem ls;
  ls.f = SmoothPart::least_squares(A, b, 0.0);
  ls.r = NonsmoothPart::zero();
  ls.X = FeasibleSet::whole_space(5);
  CHECK(check_gradient(ls, rng.normal_vector(5), 1e-5) <= 1e-5);

  CompositeProblem wrong = half_sq_norm(3);
  wrong.f.gradient = [](const Vec& v) { return Vec(2.0 * v); };  // planted fault
  Vec far(3);
  far << 0.3, -1.2, 4.0;
  CHECK(check_gradient(wrong, far, 1e-4) >= 0.4);

  CHECK_THROWS_AS(check_gradient(p, x, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(check_gradient(p, x, 0.5), std::invalid_argument);
}

TEST_CASE("merit gap over the simplex") {
  CompositeProblem p;
  const Vec c = vec2(1, 2);
  p.f = SmoothPart::linear(c);
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(2);
  p.start = vec2(0.5, 0.5);
  const GeneralizedLinearOracle glo = GeneralizedLinearOracle::over(p.X, NonsmoothPart::zero());

  CHECK(merit_gap(p, glo, vec2(1, 0)).e == doctest::Approx(0.0));
  const GapReport report = merit_gap(p, glo, vec2(0, 1));
  CHECK(report.e == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(report.gamma_term == doctest::Approx(report.e));

  // vertex-enumeration oracle: e(x) = max_i <c, x - e_i>
  double best = -kInf;
  for (int i = 0; i < 2; ++i) {
    Vec e = Vec::Zero(2);
    e[i] = 1.0;
    best = std::max(best, c.dot(vec2(0, 1) - e));
  }
  CHECK(report.e == doctest::Approx(best).epsilon(1e-14));

  // interior unconstrained minimum on a box
  CompositeProblem q = half_sq_norm(2);
  q.X = FeasibleSet::box(vec2(-1, -1), vec2(1, 1));
  const GeneralizedLinearOracle box_glo = GeneralizedLinearOracle::over(q.X, NonsmoothPart::zero());
  CHECK(merit_gap(q, box_glo, vec2(0, 0)).e == doctest::Approx(0.0));

  CompositeProblem unbounded = half_sq_norm(2);
  const GeneralizedLinearOracle ws_glo =
      GeneralizedLinearOracle::over(unbounded.X, NonsmoothPart::zero());
  CHECK_THROWS_AS(merit_gap(unbounded, ws_glo, vec2(0, 0)), unsupported_error);
}

TEST_CASE("merit gap dominates the optimality gap at sampled points") {
  Prng rng(7);
  const Index n = 6;
  const Vec b = rng.normal_vector(n);
  CompositeProblem p;
  p.f.value = [b](const Vec& x) { return 0.5 * (x - b).squaredNorm(); };
  p.f.gradient = [b](const Vec& x) { return Vec(x - b); };
  p.f.lipschitz_grad = 1.0;
  p.r = NonsmoothPart::zero();
  p.X = FeasibleSet::simplex(n);
  const GeneralizedLinearOracle glo = GeneralizedLinearOracle::over(p.X, NonsmoothPart::zero());
  Vec proj = b;
  {
    // project b onto the simplex by sort-and-threshold replicated inline
    std::vector<double> u(b.data(), b.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cssv = 0.0, theta = 0.0;
    for (Index j = 0; j < n; ++j) {
      cssv += u[j];
      const double t = (cssv - 1.0) / static_cast<double>(j + 1);
      if (u[j] - t > 0.0) theta = t;
    }
    proj = (b.array() - theta).max(0.0);
  }
  const double psi_min = 0.5 * (proj - b).squaredNorm();
  for (int i = 0; i < 100; ++i) {
    const Vec x = rng.simplex_point(n);
    const GapReport report = merit_gap(p, glo, x);
    CHECK(report.e >= evaluate_objective(p, x) - psi_min - 1e-10);
  }
}

TEST_CASE("feasible sets project correctly") {
  Prng rng(13);
  struct Case {
    FeasibleSet X;
    std::function<Vec()> feasible;
  };
  std::vector<Case> cases;
  cases.push_back({FeasibleSet::simplex(5), [&] { return rng.simplex_point(5); }});
  cases.push_back({FeasibleSet::box(Vec::Constant(4, -1.0), Vec::Constant(4, 2.0)),
                   [&] { return rng.uniform_vector(4, -1.0, 2.0); }});
  cases.push_back({FeasibleSet::l2_ball(4, 1.5), [&] {
                     Vec v = rng.normal_vector(4);
                     return Vec(v * (1.4 / std::max(v.norm(), 1.0)));
                   }});
  cases.push_back({FeasibleSet::l1_ball(4, 2.0), [&] {
                     Vec p = rng.simplex_point(4);
                     return Vec(1.9 * p);
                   }});
  for (const Case& c : cases) {
    for (int i = 0; i < 100; ++i) {
      const Vec z = 3.0 * rng.normal_vector(c.X.dimension);
      const Vec pz = c.X.projection(z);
      CHECK(c.X.membership(pz));
      const Vec u = c.feasible();
      CHECK(c.X.membership(u));
      CHECK((pz - z).norm() <= (u - z).norm() + 1e-9);
      CHECK((pz - u).squaredNorm() <= *c.X.diameter_sq + 1e-9);
    }
  }
}

TEST_CASE("spectrahedron membership and projection") {
  const FeasibleSet S = FeasibleSet::spectrahedron(3);
  Prng rng(19);
  const Mat R = rng.normal_matrix(3, 3);
  const Mat psd = R * R.transpose();
  const Vec ok = sym_to_vec(Mat(psd / (psd.trace() + 0.5)));
  CHECK(S.membership(ok));
  const Vec bad = sym_to_vec(Mat(-Mat::Identity(3, 3)));
  CHECK(!S.membership(bad));
  const Vec proj = S.projection(bad);
  CHECK(S.membership(proj));
}

TEST_CASE("l1 value is convex at sampled midpoints") {
  Prng rng(23);
  const NonsmoothPart r = NonsmoothPart::l1(0.7);
  for (int i = 0; i < 200; ++i) {
    const Vec x = rng.normal_vector(6), y = rng.normal_vector(6);
    const Vec mid = 0.5 * (x + y);
    CHECK(r.value(mid) <= 0.5 * r.value(x) + 0.5 * r.value(y) + 1e-12);
  }
}
