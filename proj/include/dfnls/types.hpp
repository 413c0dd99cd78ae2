#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace dfnls {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Norm helpers that tolerate empty vectors (m = 0 problems carry
/// zero-length constraint blocks everywhere).
inline double inf_norm(const Vector& v) {
  return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
}

inline double one_norm(const Vector& v) {
  return v.size() > 0 ? v.cwiseAbs().sum() : 0.0;
}

inline double two_norm(const Vector& v) {
  return v.size() > 0 ? v.norm() : 0.0;
}

/// A black-box evaluation produced a non-finite value. The run that hit it
/// is marked failed; benchmark sweeps continue.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The shared function-evaluation budget of a run is exhausted.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear system that is required to be nonsingular is numerically singular.
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dfnls
