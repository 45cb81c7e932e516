#include "foms/splitting.hpp"

#include "foms/geometry.hpp"

#include <cmath>

namespace foms {

double operator_norm(const Mat& A, int max_iters, double tol) {
  const Index n = A.cols();
  if (A.size() == 0) return 0.0;
  Vec v = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lam = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vec w = A.transpose() * (A * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double next = (A * w).squaredNorm();
    if (std::abs(next - lam) <= tol * (1.0 + std::abs(next))) {
      lam = next;
      break;
    }
    lam = next;
    v = w;
  }
  return std::sqrt(lam);
}

SplitProblem SplitProblem::lasso(const Mat& A, const Vec& b, double lambda) {
  SplitProblem sp;
  sp.A = A;
  sp.op_norm = operator_norm(A);
  sp.g_value = [b](const Vec& z) { return 0.5 * (z - b).squaredNorm(); };
  sp.prox_g = [b](const Vec& v, double gamma) { return Vec((v + gamma * b) / (1.0 + gamma)); };
  sp.prox_g_conj = [b](const Vec& v, double gamma) {
    return Vec((v - gamma * b) / (1.0 + gamma));
  };
  sp.g_conj_value = [b](const Vec& y) { return 0.5 * y.squaredNorm() + b.dot(y); };
  sp.r = NonsmoothPart::l1(lambda);
  return sp;  // g is not globally Lipschitz: no lipschitz_g
}

SplitProblem SplitProblem::l1_fit(const Mat& A, const Vec& b, double lambda) {
  SplitProblem sp;
  sp.A = A;
  sp.op_norm = operator_norm(A);
  sp.g_value = [b](const Vec& z) { return (z - b).lpNorm<1>(); };
  sp.prox_g = [b](const Vec& v, double gamma) { return Vec(b + soft_threshold(v - b, gamma)); };
  sp.prox_g_conj = [b](const Vec& v, double gamma) {
    return Vec((v - gamma * b).cwiseMax(-1.0).cwiseMin(1.0));
  };
  sp.g_conj_value = [b](const Vec& y) {
    return y.lpNorm<Eigen::Infinity>() <= 1.0 + 1e-12 ? b.dot(y) : kInf;
  };
  sp.lipschitz_g = std::sqrt(static_cast<double>(b.size()));
  sp.r = NonsmoothPart::l1(lambda);
  return sp;
}

ADMMConfig ADMMConfig::classical(double c, double sigma2) {
  require(c > 0.0, "admm: penalty c must be positive");
  require(sigma2 >= 0.0, "admm: M2 = sigma2 I needs sigma2 >= 0");
  ADMMConfig cfg;
  cfg.c = c;
  cfg.mode = XUpdateMode::classical_identity;
  cfg.tau = 0.0;
  cfg.sigma2 = sigma2;
  return cfg;
}

ADMMConfig ADMMConfig::linearized(double c, double tau, const SplitProblem& sp) {
  require(c > 0.0 && tau > 0.0, "admm: c and tau must be positive");
  const double spectral = tau * c * sp.op_norm * sp.op_norm;
  require(spectral <= 1.0 + 1e-12,
          "admm: M1 = (1/tau) I - c A^T A is not PSD (tau c ||A||^2 > 1)");
  ADMMConfig cfg;
  cfg.c = c;
  cfg.mode = XUpdateMode::linearized;
  cfg.tau = tau;
  cfg.sigma2 = 0.0;
  return cfg;
}

Mat ADMMConfig::M1(const SplitProblem& sp) const {
  const Index n = sp.A.cols();
  if (mode == XUpdateMode::linearized)
    return Mat((1.0 / tau) * Mat::Identity(n, n) - c * sp.A.transpose() * sp.A);
  return Mat::Zero(n, n);
}

Mat ADMMConfig::M2(Index m) const { return Mat(sigma2 * Mat::Identity(m, m)); }

double ErgodicCertificate::C(const Vec& x, const Vec& z) const {
  double quad = c * (A * x - z0).squaredNorm();
  if (linearized) {
    const Vec dx = x - x0;
    quad += (1.0 / tau) * dx.squaredNorm() - c * (A * dx).squaredNorm();
  }
  quad += sigma2 * (z - z0).squaredNorm();
  return quad;
}

double ErgodicCertificate::C1(const Vec& x, const Vec& z, double L_g) const {
  return C(x, z) + (2.0 / c) * (L_g * L_g + y0.squaredNorm());
}

AdmmResult adpmm_run(const SplitProblem& sp, const ADMMConfig& cfg, const Vec& x0, const Vec& z0,
                     const Vec& y0, int steps) {
  const Index n = sp.A.cols(), m = sp.A.rows();
  require(x0.size() == n && z0.size() == m && y0.size() == m, "adpmm_run: dimension mismatch");
  if (cfg.mode == XUpdateMode::classical_identity && !cfg.custom_x_update) {
    const bool identity = (m == n) && sp.A.isIdentity(1e-14);
    if (!identity)
      throw std::invalid_argument(
          "adpmm_run: classical x-update has a closed form only for A = I; "
          "use the linearized metric or supply a custom x-update");
  }
  if (!sp.r.prox) throw std::invalid_argument("adpmm_run: r has no prox oracle");

  Stopwatch clock;
  Vec x = x0, z = z0, y = y0;
  Vec xsum = Vec::Zero(n), zsum = Vec::Zero(m), ysum = Vec::Zero(m);

  SolverTrace trace;
  auto gap_of = [&](const Vec& xbar_k) {
    if (!sp.reference) return std::numeric_limits<double>::quiet_NaN();
    return sp.psi(xbar_k) - sp.reference->psi_min;
  };
  trace.push({0, sp.psi(x), std::numeric_limits<double>::quiet_NaN(), (sp.A * x - z).norm(), 0, 0,
              0, clock.elapsed_ns()});

  long prox_calls = 0;
  for (int k = 1; k <= steps; ++k) {
    if (cfg.custom_x_update) {
      x = cfg.custom_x_update(x, z, y);
    } else if (cfg.mode == XUpdateMode::linearized) {
      const Vec p = y + cfg.c * (sp.A * x - z);
      x = sp.r.prox(Vec(x - cfg.tau * (sp.A.transpose() * p)), cfg.tau);
    } else {
      x = sp.r.prox(Vec(z - y / cfg.c), 1.0 / cfg.c);
    }
    ++prox_calls;

    const Vec ax = sp.A * x;
    if (cfg.sigma2 == 0.0) {
      z = sp.prox_g(Vec(ax + y / cfg.c), 1.0 / cfg.c);
    } else {
      const double total = cfg.c + cfg.sigma2;
      z = sp.prox_g(Vec((cfg.c * ax + y + cfg.sigma2 * z) / total), 1.0 / total);
    }
    ++prox_calls;

    y += cfg.c * (ax - z);

    xsum += x;
    zsum += z;
    ysum += y;
    trace.push({k, sp.psi(x), gap_of(Vec(xsum / k)), (ax - z).norm(), 0, prox_calls, 0,
                clock.elapsed_ns()});
  }

  ErgodicCertificate cert;
  const double denom = std::max(steps, 1);
  cert.xbar = xsum / denom;
  cert.zbar = zsum / denom;
  cert.ybar = ysum / denom;
  cert.N = steps;
  cert.c = cfg.c;
  cert.tau = cfg.tau;
  cert.sigma2 = cfg.sigma2;
  cert.linearized = cfg.mode == XUpdateMode::linearized;
  cert.A = sp.A;
  cert.x0 = x0;
  cert.z0 = z0;
  cert.y0 = y0;
  if (steps == 0) {
    cert.xbar = x0;
    cert.zbar = z0;
    cert.ybar = y0;
  }
  return {std::move(x), std::move(z), std::move(y), std::move(cert), std::move(trace)};
}

CPResult cp_run(const SplitProblem& sp, const CPConfig& cfg, const Vec& x0, const Vec& y0,
                const Vec& p0, int steps) {
  require(cfg.tau > 0.0 && cfg.c > 0.0, "cp_run: tau and c must be positive");
  require(cfg.theta >= 0.0 && cfg.theta <= 1.0, "cp_run: theta must lie in [0,1]");
  if (cfg.theta == 1.0)
    require(cfg.tau * cfg.c * sp.op_norm * sp.op_norm <= 1.0 + 1e-12,
            "cp_run: theta = 1 requires tau c ||A||^2 <= 1");
  if (!sp.prox_g_conj) throw unsupported_error("cp_run: missing conjugate prox of g");
  if (!sp.r.prox) throw unsupported_error("cp_run: r has no prox oracle");

  Stopwatch clock;
  Vec x = x0, y = y0, p = p0;
  long prox_calls = 0;
  SolverTrace trace;
  auto gap_of = [&](const Vec& at) {
    if (!sp.reference) return std::numeric_limits<double>::quiet_NaN();
    return sp.psi(at) - sp.reference->psi_min;
  };
  trace.push({0, sp.psi(x), gap_of(x), 0.0, 0, 0, 0, clock.elapsed_ns()});

  for (int k = 1; k <= steps; ++k) {
    x = sp.r.prox(Vec(x - cfg.tau * (sp.A.transpose() * p)), cfg.tau);
    ++prox_calls;
    const Vec y_prev = y;
    y = sp.prox_g_conj(Vec(y + cfg.c * (sp.A * x)), cfg.c);
    ++prox_calls;
    p = y + cfg.theta * (y - y_prev);
    trace.push({k, sp.psi(x), gap_of(x), cfg.tau, 0, prox_calls, 0, clock.elapsed_ns()});
  }
  return {std::move(x), std::move(y), std::move(p), std::move(trace)};
}

double cp_adpmm_equivalence(const SplitProblem& sp, double tau, double c, const Vec& x0,
                            const Vec& z0, const Vec& y0, int steps) {
  require(tau * c * sp.op_norm * sp.op_norm <= 1.0 + 1e-12,
          "cp_adpmm_equivalence: tau c ||A||^2 > 1 makes M1 indefinite");

  // Chambolle-Pock state, matched initialization
  Vec x_cp = x0, y_cp = y0;
  Vec p = y0 + c * (sp.A * x0 - z0);
  // AD-PMM state, linearized metric
  Vec x_ad = x0, z_ad = z0, y_ad = y0;

  double deviation = 0.0;
  for (int k = 0; k < steps; ++k) {
    x_cp = sp.r.prox(Vec(x_cp - tau * (sp.A.transpose() * p)), tau);
    const Vec y_prev = y_cp;
    y_cp = sp.prox_g_conj(Vec(y_cp + c * (sp.A * x_cp)), c);
    p = 2.0 * y_cp - y_prev;

    const Vec pk = y_ad + c * (sp.A * x_ad - z_ad);
    x_ad = sp.r.prox(Vec(x_ad - tau * (sp.A.transpose() * pk)), tau);
    const Vec ax = sp.A * x_ad;
    z_ad = sp.prox_g(Vec(ax + y_ad / c), 1.0 / c);
    y_ad += c * (ax - z_ad);

    deviation = std::max(deviation, (x_cp - x_ad).norm() + (y_cp - y_ad).norm());
  }
  return deviation;
}

}  // namespace foms
