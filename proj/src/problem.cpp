#include "foms/problem.hpp"

#include "foms/conditional_gradient.hpp"
#include "foms/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace foms {

SmoothPart SmoothPart::zero() {
  SmoothPart f;
  f.value = [](const Vec&) { return 0.0; };
  f.gradient = [](const Vec& x) { return Vec(Vec::Zero(x.size())); };
  f.lipschitz_grad = 0.0;
  f.subgrad_bound = 0.0;
  return f;
}

SmoothPart SmoothPart::least_squares(const Mat& A, const Vec& b, double lipschitz) {
  SmoothPart f;
  f.value = [A, b](const Vec& x) { return 0.5 * (A * x - b).squaredNorm(); };
  f.gradient = [A, b](const Vec& x) { return Vec(A.transpose() * (A * x - b)); };
  f.lipschitz_grad = lipschitz;
  return f;
}

SmoothPart SmoothPart::linear(const Vec& c) {
  SmoothPart f;
  f.value = [c](const Vec& x) { return c.dot(x); };
  f.gradient = [c](const Vec&) { return c; };
  f.lipschitz_grad = 0.0;
  f.subgrad_bound = c.norm();
  return f;
}

NonsmoothPart NonsmoothPart::zero() {
  NonsmoothPart r;
  r.kind = RegularizerKind::zero;
  r.value = [](const Vec&) { return 0.0; };
  r.prox = [](const Vec& v, double) { return v; };
  r.subgradient = [](const Vec& x) { return Vec(Vec::Zero(x.size())); };
  return r;
}

NonsmoothPart NonsmoothPart::l1(double lambda) {
  require(lambda >= 0.0, "l1 weight must be nonnegative");
  NonsmoothPart r;
  r.kind = RegularizerKind::l1;
  r.value = [lambda](const Vec& x) { return lambda * x.lpNorm<1>(); };
  r.prox = [lambda](const Vec& v, double gamma) { return soft_threshold(v, gamma * lambda); };
  r.subgradient = [lambda](const Vec& x) {
    Vec g(x.size());
    for (Index i = 0; i < x.size(); ++i) g[i] = lambda * (x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0));
    return g;
  };
  return r;
}

NonsmoothPart NonsmoothPart::indicator(std::function<bool(const Vec&)> membership,
                                       VectorFn projection) {
  NonsmoothPart r;
  r.kind = RegularizerKind::indicator_of_set;
  r.value = [membership](const Vec& x) { return membership(x) ? 0.0 : kInf; };
  if (projection) r.prox = [projection](const Vec& v, double) { return projection(v); };
  return r;
}

Mat sym_from_vec(const Vec& x, Index n) {
  require(x.size() == n * n, "sym_from_vec: dimension mismatch");
  Mat M(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) M(i, j) = x[i * n + j];
  return 0.5 * (M + M.transpose());
}

Vec sym_to_vec(const Mat& M) {
  const Index n = M.rows();
  Vec x(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) x[i * n + j] = M(i, j);
  return x;
}

namespace {

bool near_simplex(const Vec& x, double tol) {
  return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol;
}

}  // namespace

FeasibleSet FeasibleSet::whole_space(Index n) {
  FeasibleSet X;
  X.kind = SetKind::whole_space;
  X.dimension = n;
  X.membership = [](const Vec&) { return true; };
  X.projection = [](const Vec& v) { return v; };
  return X;
}

FeasibleSet FeasibleSet::simplex(Index n) {
  FeasibleSet X;
  X.kind = SetKind::simplex;
  X.dimension = n;
  X.membership = [](const Vec& x) { return near_simplex(x, 1e-9); };
  X.projection = [](const Vec& v) { return project_simplex(v); };
  X.diameter_sq = 2.0;
  return X;
}

FeasibleSet FeasibleSet::box(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), "box bounds must agree in size");
  require(((b - a).array() >= 0).all(), "box requires a <= b");
  FeasibleSet X;
  X.kind = SetKind::box;
  X.dimension = a.size();
  X.lower = a;
  X.upper = b;
  X.membership = [a, b](const Vec& x) {
    return (x.array() >= a.array() - 1e-12).all() && (x.array() <= b.array() + 1e-12).all();
  };
  X.projection = [a, b](const Vec& v) {
    return Vec(v.array().max(a.array()).min(b.array()));
  };
  X.diameter_sq = (b - a).squaredNorm();
  return X;
}

FeasibleSet FeasibleSet::l1_ball(Index n, double R) {
  require(R > 0.0, "l1 ball radius must be positive");
  FeasibleSet X;
  X.kind = SetKind::l1_ball;
  X.dimension = n;
  X.radius = R;
  X.membership = [R](const Vec& x) { return x.lpNorm<1>() <= R + 1e-9; };
  X.projection = [R](const Vec& v) {
    if (v.lpNorm<1>() <= R) return v;
    // project |v| onto the simplex of radius R, restore signs
    Vec absv = v.cwiseAbs();
    Vec w = project_simplex(absv / R) * R;
    for (Index i = 0; i < v.size(); ++i)
      if (v[i] < 0) w[i] = -w[i];
    return w;
  };
  X.diameter_sq = 4.0 * R * R;
  return X;
}

FeasibleSet FeasibleSet::l2_ball(Index n, double R) {
  require(R > 0.0, "l2 ball radius must be positive");
  FeasibleSet X;
  X.kind = SetKind::l2_ball;
  X.dimension = n;
  X.radius = R;
  X.membership = [R](const Vec& x) { return x.norm() <= R + 1e-9; };
  X.projection = [R](const Vec& v) {
    const double nv = v.norm();
    return nv <= R ? v : Vec(v * (R / nv));
  };
  X.diameter_sq = 4.0 * R * R;
  return X;
}

FeasibleSet FeasibleSet::spectrahedron(Index n) {
  FeasibleSet X;
  X.kind = SetKind::spectrahedron;
  X.dimension = n * n;
  X.matrix_order = n;
  X.membership = [n](const Vec& x) {
    Mat M = sym_from_vec(x, n);
    Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-9 && M.trace() <= 1.0 + 1e-9;
  };
  X.projection = [n](const Vec& x) {
    Mat M = sym_from_vec(x, n);
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    Vec lam = es.eigenvalues();
    // project eigenvalues onto { lam >= 0, sum lam <= 1 }
    Vec clipped = lam.cwiseMax(0.0);
    if (clipped.sum() > 1.0) clipped = project_simplex(lam);
    Mat P = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    return sym_to_vec(P);
  };
  X.diameter_sq = (n >= 2) ? 2.0 : 1.0;
  return X;
}

double evaluate_objective(const CompositeProblem& problem, const Vec& x) {
  require(x.size() == problem.X.dimension, "evaluate_objective: dimension mismatch");
  const double rv = problem.r.value(x);
  if (!(rv < kInf)) return kInf;
  return problem.f.value(x) + rv;
}

double check_gradient(const CompositeProblem& problem, const Vec& x, double h_fd) {
  require(h_fd > 1e-8 && h_fd < 1e-2, "check_gradient: h_fd out of range");
  require(x.size() == problem.X.dimension, "check_gradient: dimension mismatch");
  const Vec g = problem.f.gradient(x);
  if (!g.allFinite()) throw internal_fault("check_gradient: gradient oracle returned non-finite values");
  double worst = 0.0;
  Vec xp = x, xm = x;
  for (Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h_fd;
    xm[i] = x[i] - h_fd;
    const double fd = (problem.f.value(xp) - problem.f.value(xm)) / (2.0 * h_fd);
    worst = std::max(worst, std::abs(g[i] - fd) / (1.0 + std::abs(g[i])));
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return worst;
}

GapReport merit_gap(const CompositeProblem& problem, const GeneralizedLinearOracle& oracle,
                    const Vec& x) {
  if (!problem.X.bounded())
    throw unsupported_error("merit_gap: feasible set must be bounded");
  const Vec g = problem.f.gradient(x);
  const Vec u = oracle.answer(g);
  GapReport report;
  report.witness = u;
  report.gamma_term = problem.r.value(x) - problem.r.value(u) + g.dot(x - u);
  if (report.gamma_term < -1e-9)
    throw internal_fault("merit_gap: oracle produced a negative gap");
  report.e = std::max(report.gamma_term, 0.0);
  return report;
}

}  // namespace foms
