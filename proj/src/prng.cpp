#include "foms/prng.hpp"

#include <cmath>

namespace foms {

double Prng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double two_pi = 6.283185307179586476925286766559;
  spare_ = mag * std::sin(two_pi * u2);
  have_spare_ = true;
  return mag * std::cos(two_pi * u2);
}

Vec Prng::normal_vector(Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Mat Prng::normal_matrix(Index rows, Index cols) {
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = normal();
  return m;
}

Vec Prng::uniform_vector(Index n, double a, double b) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = a + (b - a) * uniform();
  return v;
}

Vec Prng::simplex_point(Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = -std::log(1.0 - uniform());
  const double s = v.sum();
  return s > 0 ? Vec(v / s) : Vec(Vec::Constant(n, 1.0 / static_cast<double>(n)));
}

}  // namespace foms
