#pragma once

#include <cmath>

#include "dfnls/types.hpp"

namespace dfnls {

/// Minimizer of ||A y - b||; the minimum-norm solution if A is rank-deficient.
inline Vector solve_least_squares(const Matrix& A, const Vector& b) {
  if (!A.allFinite() || !b.allFinite())
    throw std::invalid_argument("solve_least_squares: non-finite input");
  if (A.rows() != b.size()) throw std::invalid_argument("solve_least_squares: shape mismatch");
  if (A.cols() == 0) return Vector(0);
  return A.completeOrthogonalDecomposition().solve(b);
}

/// Solves (J^T J + mu I) d = -J^T Phi through a QR factorization of the
/// stacked matrix [J; sqrt(mu) I], never forming J^T J.
inline Vector solve_lm_step(const Matrix& J, const Vector& Phi, double mu) {
  if (!(mu >= 0)) throw std::invalid_argument("solve_lm_step: mu must be nonnegative");
  if (J.rows() != Phi.size()) throw std::invalid_argument("solve_lm_step: shape mismatch");
  const Eigen::Index q = J.rows(), n = J.cols();
  if (mu == 0.0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(J);
    if (qr.rank() < n) throw SingularSystem("singular LM system");
    return qr.solve(-Phi);
  }
  Matrix stacked(q + n, n);
  stacked.topRows(q) = J;
  stacked.bottomRows(n) = std::sqrt(mu) * Matrix::Identity(n, n);
  Vector rhs = Vector::Zero(q + n);
  rhs.head(q) = -Phi;
  return stacked.householderQr().solve(rhs);
}

/// The symmetric saddle-point system
///
///   [ H + rho I   Jr^T    Jc^T     ] [ dx  ]   [ rhs_1 ]
///   [ Jr          -I      0        ] [ dz  ] = [ rhs_2 ]
///   [ Jc          0       -delta I ] [ -dy ]   [ rhs_3 ]
///
/// solved for (dx, dz, dy); the multiplier block carries -dy so the matrix
/// stays symmetric and a symmetric indefinite factorization applies.
struct SaddleSystem {
  Matrix Hrho;  ///< n x n, symmetric
  Matrix Jr;    ///< p x n
  Matrix Jc;    ///< m x n
  double delta = 1.0;
  Vector rhs;   ///< length n + p + m
};

struct SaddleSolution {
  Vector dx, dz, dy;
  bool singular = false;
};

inline Matrix assemble_saddle_matrix(const SaddleSystem& sys) {
  const Eigen::Index n = sys.Hrho.rows(), p = sys.Jr.rows(), m = sys.Jc.rows();
  Matrix M = Matrix::Zero(n + p + m, n + p + m);
  M.topLeftCorner(n, n) = sys.Hrho;
  M.block(0, n, n, p) = sys.Jr.transpose();
  M.block(n, 0, p, n) = sys.Jr;
  M.block(n, n, p, p) = -Matrix::Identity(p, p);
  if (m > 0) {
    M.block(0, n + p, n, m) = sys.Jc.transpose();
    M.block(n + p, 0, m, n) = sys.Jc;
    M.block(n + p, n + p, m, m) = -sys.delta * Matrix::Identity(m, m);
  }
  return M;
}

/// Pivoted factorization of the assembled matrix. The singular flag is set
/// when the smallest pivot magnitude drops below 1e-12 times the largest;
/// no solution is returned in that case (the caller inflates rho and retries).
inline SaddleSolution solve_saddle(const SaddleSystem& sys) {
  if (!(sys.delta > 0)) throw std::invalid_argument("solve_saddle: delta must be positive");
  if (!sys.Hrho.allFinite() || !sys.Jr.allFinite() || !sys.Jc.allFinite() || !sys.rhs.allFinite())
    throw std::invalid_argument("solve_saddle: non-finite input");
  const Eigen::Index n = sys.Hrho.rows(), p = sys.Jr.rows(), m = sys.Jc.rows();
  if (sys.rhs.size() != n + p + m) throw std::invalid_argument("solve_saddle: rhs has wrong length");

  Matrix M = assemble_saddle_matrix(sys);
  Eigen::FullPivLU<Matrix> lu(M);
  Vector piv = lu.matrixLU().diagonal();
  const double pmax = piv.cwiseAbs().maxCoeff();
  SaddleSolution out;
  if (pmax == 0.0 || piv.cwiseAbs().minCoeff() < 1e-12 * pmax) {
    out.singular = true;
    return out;
  }
  Vector sol = lu.solve(sys.rhs);
  out.dx = sol.head(n);
  out.dz = sol.segment(n, p);
  out.dy = -sol.tail(m);
  return out;
}

}  // namespace dfnls
