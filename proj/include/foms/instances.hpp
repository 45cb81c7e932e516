#pragma once

#include "foms/problem.hpp"
#include "foms/prng.hpp"
#include "foms/splitting.hpp"

#include <optional>
#include <string>

namespace foms {

/// Seeded description of a benchmark instance; equal specs regenerate
/// bit-identical data.
struct InstanceSpec {
  std::string problem = "lasso";  // lasso | uniform-fit | l1-fit | simplex-qp |
                                  // strongly-convex-qp | nonsmooth-l1
  Index n = 20;
  Index m = 10;
  double lambda = 0.1;  // regularization weight (mu for strongly-convex-qp)
  std::uint64_t seed = 0;

  std::string tag() const;
  static const std::vector<std::string>& known_problems();
};

struct InstanceMetadata {
  double L_f = 0.0;        // ||A||^2 for the quadratics
  double mu = 0.0;         // error-bound constant when positive
  double psi_min = 0.0;
  double reference_gap = 0.0;  // certified slack of psi_min
  double omega_sq = 0.0;   // l2 diameter^2 of X when bounded
  double D_X = 0.0;        // max_X h for the euclidean DGF when bounded
};

struct GeneratedInstance {
  InstanceSpec spec;
  CompositeProblem problem;
  std::optional<SplitProblem> split;
  Mat A;
  Vec b;
  InstanceMetadata meta;
};

GeneratedInstance generate_problem(const InstanceSpec& spec);

}  // namespace foms
