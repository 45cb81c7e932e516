#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <string>

namespace foms {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = Vector<double>;
using Mat = Matrix<double>;

using Index = Eigen::Index;

using ValueFn = std::function<double(const Vec&)>;
using VectorFn = std::function<Vec(const Vec&)>;
using ProxFn = std::function<Vec(const Vec&, double)>;  // (point, gamma)

/// Requested operation has no closed form / shipped implementation for the
/// given combination of set, regularizer and geometry.
class unsupported_error : public std::runtime_error {
 public:
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

/// A solver detected a broken invariant mid-run (objective increase, weight
/// drift, iteration-cap violation). Signals a wrong constant or an oracle bug.
class internal_fault : public std::runtime_error {
 public:
  explicit internal_fault(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace foms
