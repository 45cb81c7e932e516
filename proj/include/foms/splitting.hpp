#pragma once

#include "foms/problem.hpp"
#include "foms/trace.hpp"
#include "foms/types.hpp"

#include <optional>

namespace foms {

/// Largest singular value by power iteration on A^T A (deterministic start).
double operator_norm(const Mat& A, int max_iters = 10000, double tol = 1e-13);

/// Psi(x) = g(A x) + r(x) split across the linear operator A.
struct SplitProblem {
  Mat A;                 // m x n
  double op_norm = 0.0;  // ||A||
  ValueFn g_value;
  ProxFn prox_g;                        // argmin gamma g(u) + 1/2||u-v||^2
  ProxFn prox_g_conj;                   // prox of g*
  ValueFn g_conj_value;                 // g*(y); +inf outside dom g*
  std::optional<double> lipschitz_g;    // L_g of g itself (ergodic certificate)
  NonsmoothPart r;
  std::optional<ReferenceOptimum> reference;  // (x*, Psi_min)
  std::optional<Vec> z_star, y_star;          // saddle-point data when known

  double psi(const Vec& x) const { return g_value(A * x) + r.value(x); }
  double lagrangian(const Vec& x, const Vec& z, const Vec& y) const {
    return g_value(z) + r.value(x) + y.dot(A * x - z);
  }

  /// g(z) = 1/2 ||z - b||^2, r = lambda ||x||_1.
  static SplitProblem lasso(const Mat& A, const Vec& b, double lambda);
  /// g(z) = ||z - b||_1 (L_g = sqrt(m)), r = lambda ||x||_1.
  static SplitProblem l1_fit(const Mat& A, const Vec& b, double lambda);
};

enum class XUpdateMode { classical_identity, linearized };

/// Proximal penalties of AD-PMM. The shipped metrics are
/// M1 = (1/tau) I - c A^T A (linearized; PSD iff tau c ||A||^2 <= 1) or
/// M1 = 0 (classical; the x-step then needs A = I or a custom update), and
/// M2 = sigma2 I with sigma2 >= 0.
struct ADMMConfig {
  double c = 1.0;
  XUpdateMode mode = XUpdateMode::linearized;
  double tau = 1.0;      // linearized metric parameter
  double sigma2 = 0.0;   // M2 = sigma2 I
  std::function<Vec(const Vec&, const Vec&, const Vec&)> custom_x_update;  // (x, z, y)

  static ADMMConfig classical(double c, double sigma2 = 0.0);
  static ADMMConfig linearized(double c, double tau, const SplitProblem& sp);

  Mat M1(const SplitProblem& sp) const;
  Mat M2(Index m) const;
};

struct CPConfig {
  double tau = 1.0;
  double c = 1.0;
  double theta = 1.0;
};

/// Prop-meta bookkeeping: arithmetic means of the first N iterates plus the
/// data needed to evaluate C(x,z) and the bound constant C1.
struct ErgodicCertificate {
  Vec xbar, zbar, ybar;
  int N = 0;
  double c = 1.0;
  double tau = 0.0;       // 0 for the classical metric
  double sigma2 = 0.0;
  bool linearized = false;
  Mat A;
  Vec x0, z0, y0;

  /// C(x,z) = c||Ax - z0||^2 + ||x - x0||^2_{M1} + ||z - z0||^2_{M2}.
  double C(const Vec& x, const Vec& z) const;
  /// C1 = C(x,z) + (2/c)(L_g^2 + ||y0||^2).
  double C1(const Vec& x, const Vec& z, double L_g) const;
};

struct AdmmResult {
  Vec x, z, y;
  ErgodicCertificate certificate;
  SolverTrace trace;
};

/// Alternating direction proximal method of multipliers. The trace's step
/// column carries the primal residual ||A x^k - z^k||; the gap column follows
/// the ergodic average when a reference optimum is attached.
AdmmResult adpmm_run(const SplitProblem& sp, const ADMMConfig& cfg, const Vec& x0, const Vec& z0,
                     const Vec& y0, int steps);

struct CPResult {
  Vec x, y, p;
  SolverTrace trace;
};

/// Chambolle-Pock primal-dual iteration with extrapolation theta in [0,1].
CPResult cp_run(const SplitProblem& sp, const CPConfig& cfg, const Vec& x0, const Vec& y0,
                const Vec& p0, int steps);

/// Runs CP (theta = 1) and linearized AD-PMM side by side with matched
/// initializations p0 = y0 + c(A x0 - z0) and returns
/// max_k ||x_CP - x_ADPMM|| + ||y_CP - y_ADPMM||.
double cp_adpmm_equivalence(const SplitProblem& sp, double tau, double c, const Vec& x0,
                            const Vec& z0, const Vec& y0, int steps);

}  // namespace foms
