#include "foms/instances.hpp"

#include "foms/geometry.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace foms {

std::string InstanceSpec::tag() const {
  std::ostringstream os;
  os << problem << "-n" << n << "-m" << m << "-l" << lambda << "-s" << seed;
  return os.str();
}

const std::vector<std::string>& InstanceSpec::known_problems() {
  static const std::vector<std::string> kinds = {
      "lasso", "uniform-fit", "l1-fit", "simplex-qp", "strongly-convex-qp", "nonsmooth-l1"};
  return kinds;
}

namespace {

/// Proximal-gradient reference solve for the lasso, certified by the duality
/// gap; returns (x_ref, certified_gap).
std::pair<Vec, double> lasso_reference(const Mat& A, const Vec& b, double lambda, double L) {
  const Index n = A.cols();
  Vec x = Vec::Zero(n);
  const double step = 1.0 / L;
  double gap = kInf;
  for (int it = 0; it < 300000; ++it) {
    const Vec res = A * x - b;
    x = soft_threshold(Vec(x - step * (A.transpose() * res)), step * lambda);
    if (it % 50 == 0 || it < 5) {
      const Vec r2 = A * x - b;
      const Vec aty = A.transpose() * r2;
      const double scale = std::min(1.0, lambda / std::max(aty.lpNorm<Eigen::Infinity>(), 1e-300));
      const Vec theta = scale * r2;
      const double primal = 0.5 * r2.squaredNorm() + lambda * x.lpNorm<1>();
      const double dual = -0.5 * theta.squaredNorm() - theta.dot(b);
      gap = primal - dual;
      if (gap <= 1e-13 * (1.0 + std::abs(primal))) break;
    }
  }
  return {x, gap};
}

/// Away-step CG with analytic line search for f(x) = 1/2 ||Ax - b||^2 over
/// the simplex; the merit gap certifies the returned optimum.
std::pair<Vec, double> simplex_reference(const Mat& A, const Vec& b, int max_iters = 200000) {
  const Index n = A.cols();
  Vec weights = Vec::Constant(n, 1.0 / static_cast<double>(n));  // atom e_i weight
  Vec x = weights;
  Vec res = A * x - b;
  double merit = kInf;
  for (int it = 0; it < max_iters; ++it) {
    const Vec g = A.transpose() * res;
    Index fw = 0, away = -1;
    for (Index i = 1; i < n; ++i)
      if (g[i] < g[fw]) fw = i;
    for (Index i = 0; i < n; ++i)
      if (weights[i] > 0.0 && (away < 0 || g[i] > g[away])) away = i;
    merit = g.dot(x) - g[fw];
    if (merit <= 1e-13) break;

    // d = e_fw - x (forward) or x - e_away (away), analytic step for the quadratic
    const double fw_score = -(g[fw] - g.dot(x));
    const double away_score = -(g.dot(x) - g[away]);
    Vec d;
    double gamma_max;
    if (fw_score >= away_score) {
      d = -x;
      d[fw] += 1.0;
      gamma_max = 1.0;
    } else {
      const double lam = weights[away];
      if (1.0 - lam < 1e-15) break;
      d = x;
      d[away] -= 1.0;
      gamma_max = lam / (1.0 - lam);
    }
    const Vec Ad = A * d;
    const double denom = Ad.squaredNorm();
    if (denom <= 0.0) break;
    const double gamma = std::clamp(-(g.dot(d)) / denom, 0.0, gamma_max);
    if (gamma <= 0.0) break;
    if (fw_score >= away_score) {
      weights *= (1.0 - gamma);
      weights[fw] += gamma;
    } else {
      weights *= (1.0 + gamma);
      weights[away] -= gamma;
      if (weights[away] < 0.0) weights[away] = 0.0;
    }
    x += gamma * d;
    res += gamma * Ad;
  }
  return {x, std::max(merit, 0.0)};
}

GeneratedInstance make_lasso(const InstanceSpec& spec, Prng& rng) {
  GeneratedInstance out;
  out.A = rng.normal_matrix(spec.m, spec.n);
  Vec x_true = Vec::Zero(spec.n);
  const Index nnz = std::max<Index>(1, spec.n / 10);
  for (Index i = 0; i < nnz; ++i) {
    const Index idx = static_cast<Index>(rng.uniform() * spec.n) % spec.n;
    x_true[idx] = rng.uniform() < 0.5 ? 1.0 : -1.0;
  }
  out.b = out.A * x_true + 0.1 * rng.normal_vector(spec.m);

  const double norm_A = operator_norm(out.A);
  out.meta.L_f = norm_A * norm_A;

  out.problem.f = SmoothPart::least_squares(out.A, out.b, out.meta.L_f);
  out.problem.r = NonsmoothPart::l1(spec.lambda);
  out.problem.X = FeasibleSet::whole_space(spec.n);
  out.problem.start = Vec::Zero(spec.n);

  auto [x_ref, gap] = lasso_reference(out.A, out.b, spec.lambda, out.meta.L_f);
  out.meta.psi_min = 0.5 * (out.A * x_ref - out.b).squaredNorm() + spec.lambda * x_ref.lpNorm<1>();
  out.meta.reference_gap = gap;
  out.problem.reference = ReferenceOptimum{x_ref, out.meta.psi_min};

  SplitProblem split = SplitProblem::lasso(out.A, out.b, spec.lambda);
  split.reference = out.problem.reference;
  out.split = std::move(split);
  return out;
}

GeneratedInstance make_simplex_qp(const InstanceSpec& spec, Prng& rng) {
  GeneratedInstance out;
  out.A = rng.normal_matrix(spec.m, spec.n);
  const Vec center = rng.simplex_point(spec.n);
  out.b = out.A * center + 0.5 * rng.normal_vector(spec.m);

  const double norm_A = operator_norm(out.A);
  out.meta.L_f = norm_A * norm_A;
  out.meta.omega_sq = 2.0;

  out.problem.f = SmoothPart::least_squares(out.A, out.b, out.meta.L_f);
  out.problem.r = NonsmoothPart::zero();
  out.problem.X = FeasibleSet::simplex(spec.n);
  out.problem.start = Vec::Constant(spec.n, 1.0 / static_cast<double>(spec.n));

  auto [x_ref, cert] = simplex_reference(out.A, out.b);
  out.meta.psi_min = out.problem.f.value(x_ref);
  out.meta.reference_gap = cert;
  out.problem.reference = ReferenceOptimum{x_ref, out.meta.psi_min};
  return out;
}

GeneratedInstance make_strongly_convex_qp(const InstanceSpec& spec, Prng& rng) {
  GeneratedInstance out;
  const double mu = spec.lambda > 0.0 ? spec.lambda : 1.0;
  const Mat B = rng.normal_matrix(spec.n, spec.n) / std::sqrt(static_cast<double>(spec.n));
  const Mat Q = B.transpose() * B + mu * Mat::Identity(spec.n, spec.n);
  const Vec q = rng.normal_vector(spec.n);
  out.A = B;
  out.b = q;

  out.meta.L_f = operator_norm(B);  // ||B||
  out.meta.L_f = out.meta.L_f * out.meta.L_f + mu;
  out.meta.mu = mu;

  out.problem.f.value = [Q, q](const Vec& x) { return 0.5 * x.dot(Q * x) - q.dot(x); };
  out.problem.f.gradient = [Q, q](const Vec& x) { return Vec(Q * x - q); };
  out.problem.f.lipschitz_grad = out.meta.L_f;
  out.problem.r = NonsmoothPart::zero();
  out.problem.X = FeasibleSet::whole_space(spec.n);
  out.problem.start = Vec::Zero(spec.n);

  const Vec x_star = Q.llt().solve(q);
  out.meta.psi_min = 0.5 * x_star.dot(Q * x_star) - q.dot(x_star);
  out.problem.reference = ReferenceOptimum{x_star, out.meta.psi_min};
  return out;
}

GeneratedInstance make_fit(const InstanceSpec& spec, Prng& rng, bool uniform) {
  GeneratedInstance out;
  out.A = rng.normal_matrix(spec.m, spec.n);
  Vec x_hat = rng.normal_vector(spec.n);
  x_hat *= 0.8 / x_hat.norm();
  out.b = out.A * x_hat;  // exact fit: Psi_min = 0

  const Mat A = out.A;
  const Vec b = out.b;
  out.problem.f.lipschitz_grad = std::nullopt;
  if (uniform) {
    out.problem.f.value = [A, b](const Vec& x) { return (A * x - b).lpNorm<Eigen::Infinity>(); };
    out.problem.f.subgradient = [A, b](const Vec& x) {
      const Vec r = A * x - b;
      Index best = 0;
      for (Index i = 1; i < r.size(); ++i)
        if (std::abs(r[i]) > std::abs(r[best])) best = i;
      return Vec((r[best] >= 0 ? 1.0 : -1.0) * A.row(best).transpose());
    };
  } else {
    out.problem.f.value = [A, b](const Vec& x) { return (A * x - b).lpNorm<1>(); };
    out.problem.f.subgradient = [A, b](const Vec& x) {
      const Vec r = A * x - b;
      Vec s(r.size());
      for (Index i = 0; i < r.size(); ++i) s[i] = r[i] > 0 ? 1.0 : (r[i] < 0 ? -1.0 : 0.0);
      return Vec(A.transpose() * s);
    };
  }
  out.problem.f.gradient = out.problem.f.subgradient;
  out.problem.r = NonsmoothPart::zero();
  out.problem.X = FeasibleSet::l2_ball(spec.n, 1.0);
  out.problem.start = Vec::Zero(spec.n);
  out.problem.reference = ReferenceOptimum{x_hat, 0.0};
  out.meta.psi_min = 0.0;
  out.meta.omega_sq = 4.0;
  out.meta.D_X = 0.5;  // max of 1/2||x||^2 over the unit ball
  return out;
}

GeneratedInstance make_nonsmooth_l1(const InstanceSpec& spec, Prng& rng) {
  GeneratedInstance out;
  out.A = Mat::Identity(spec.n, spec.n);
  out.b = Vec::Zero(spec.n);
  out.problem.f.value = [](const Vec& x) { return x.lpNorm<1>(); };
  out.problem.f.subgradient = [](const Vec& x) {
    Vec s(x.size());
    for (Index i = 0; i < x.size(); ++i) s[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
    return s;
  };
  out.problem.f.gradient = out.problem.f.subgradient;
  out.problem.f.subgrad_bound = std::sqrt(static_cast<double>(spec.n));
  out.problem.r = NonsmoothPart::zero();
  out.problem.X = FeasibleSet::box(Vec::Constant(spec.n, -1.0), Vec::Constant(spec.n, 1.0));
  out.problem.start = rng.uniform_vector(spec.n, -0.9, 0.9);
  out.problem.reference = ReferenceOptimum{Vec::Zero(spec.n), 0.0};
  out.meta.psi_min = 0.0;
  out.meta.omega_sq = 4.0 * spec.n;
  return out;
}

}  // namespace

GeneratedInstance generate_problem(const InstanceSpec& spec) {
  require(spec.n >= 1 && spec.m >= 1, "generate_problem: dimensions must be >= 1");
  Prng rng(spec.seed);
  GeneratedInstance out;
  if (spec.problem == "lasso") {
    out = make_lasso(spec, rng);
  } else if (spec.problem == "simplex-qp") {
    out = make_simplex_qp(spec, rng);
  } else if (spec.problem == "strongly-convex-qp") {
    out = make_strongly_convex_qp(spec, rng);
  } else if (spec.problem == "uniform-fit") {
    out = make_fit(spec, rng, true);
  } else if (spec.problem == "l1-fit") {
    out = make_fit(spec, rng, false);
  } else if (spec.problem == "nonsmooth-l1") {
    out = make_nonsmooth_l1(spec, rng);
  } else {
    throw std::invalid_argument("generate_problem: unknown problem kind '" + spec.problem + "'");
  }
  out.spec = spec;
  return out;
}

}  // namespace foms
