#pragma once

#include <random>
#include <vector>

#include "dfnls/problem.hpp"
#include "dfnls/types.hpp"

namespace dfnls {

/// How the smoothing directions for a Jacobian estimate are chosen.
enum class DirectionMode {
  OssFresh,    ///< fresh random orthonormal basis per estimate ("oss-v1")
  OssPool,     ///< uniform pick from a pool of 10 pregenerated bases ("oss-v2")
  Coordinate,  ///< U = I, i.e. coordinate forward differences ("fd")
};

/// An n x n orthonormal matrix whose columns are the sampling directions.
struct DirectionSet {
  Matrix U;
};

/// Orthonormal basis distributed uniformly (Haar) over the orthogonal group:
/// QR of a standard Gaussian matrix with the sign convention diag(R) >= 0.
/// A plain QR is not Haar-uniform; fixing the signs restores it.
inline DirectionSet sample_orthonormal(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_orthonormal: n must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Matrix g(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Vector rdiag = qr.matrixQR().diagonal();
    const double dmax = rdiag.cwiseAbs().maxCoeff();
    // numerically rank-deficient Gaussian draw (probability ~0): redraw
    if (dmax == 0.0 || rdiag.cwiseAbs().minCoeff() < 1e-13 * dmax) continue;
    Matrix q = qr.householderQ();
    for (int j = 0; j < n; ++j)
      if (rdiag(j) < 0) q.col(j) = -q.col(j);
    return {std::move(q)};
  }
}

/// Supplies a direction set per estimate. For OssPool the pool of 10 bases
/// is generated once per (run, n) at construction.
class DirectionSampler {
 public:
  DirectionSampler(DirectionMode mode, int n, Rng& rng) : mode_(mode), n_(n) {
    if (mode_ == DirectionMode::OssPool) {
      pool_.reserve(kPoolSize);
      for (int i = 0; i < kPoolSize; ++i) pool_.push_back(sample_orthonormal(n, rng));
    } else if (mode_ == DirectionMode::Coordinate) {
      identity_.U = Matrix::Identity(n, n);
    }
  }

  DirectionMode mode() const { return mode_; }
  int dim() const { return n_; }
  const std::vector<DirectionSet>& pool() const { return pool_; }

  const DirectionSet& next(Rng& rng) {
    switch (mode_) {
      case DirectionMode::OssFresh:
        fresh_ = sample_orthonormal(n_, rng);
        return fresh_;
      case DirectionMode::OssPool: {
        std::uniform_int_distribution<int> pick(0, kPoolSize - 1);
        return pool_[pick(rng)];
      }
      case DirectionMode::Coordinate:
      default:
        return identity_;
    }
  }

  static constexpr int kPoolSize = 10;

 private:
  DirectionMode mode_;
  int n_;
  std::vector<DirectionSet> pool_;
  DirectionSet fresh_;
  DirectionSet identity_;
};

/// Approximate Jacobians of r and c built from the same direction set.
struct JacobianPair {
  Matrix Jr;     ///< p x n
  Matrix Jc;     ///< m x n
  double gamma = 0.0;
  Vector x_at;
};

/// Forward-difference Jacobian estimates along the columns of a sampled
/// orthonormal basis: row i of Jr is sum_j ((r_i(x+gamma*u_j) - r_i(x))/gamma) u_j^T,
/// and likewise for Jc. Both Jacobians share one direction set, so a call
/// costs n+1 vector evaluations of r and of c (n when the base values are
/// supplied by the caller). Coordinate mode is evaluated column-by-column
/// so it matches textbook forward differencing bitwise.
inline JacobianPair estimate_jacobians(EvalContext& ctx, const Vector& x, double gamma,
                                       DirectionSampler& dirs, Rng& rng,
                                       const Vector* base_r = nullptr,
                                       const Vector* base_c = nullptr) {
  if (!(gamma > 0)) throw std::invalid_argument("estimate_jacobians: gamma must be positive");
  const Problem& prob = ctx.prob;
  const int n = prob.n, p = prob.p, m = prob.m;
  if (x.size() != n) throw std::invalid_argument("estimate_jacobians: x has wrong dimension");

  Vector r0, c0;
  if (base_r != nullptr && (m == 0 || base_c != nullptr)) {
    r0 = *base_r;
    if (m > 0) c0 = *base_c;
  } else {
    std::tie(r0, c0) = ctx.eval_pair(x);
  }

  JacobianPair out;
  out.gamma = gamma;
  out.x_at = x;

  if (dirs.mode() == DirectionMode::Coordinate) {
    out.Jr.resize(p, n);
    out.Jc.resize(m, n);
    Vector xp = x;
    for (int j = 0; j < n; ++j) {
      xp(j) = x(j) + gamma;
      auto [rj, cj] = ctx.eval_pair(xp);
      out.Jr.col(j) = (rj - r0) / gamma;
      if (m > 0) out.Jc.col(j) = (cj - c0) / gamma;
      xp(j) = x(j);
    }
    return out;
  }

  const Matrix& u = dirs.next(rng).U;
  Matrix dr(p, n), dc(m, n);
  for (int j = 0; j < n; ++j) {
    auto [rj, cj] = ctx.eval_pair(x + gamma * u.col(j));
    dr.col(j) = (rj - r0) / gamma;
    if (m > 0) dc.col(j) = (cj - c0) / gamma;
  }
  out.Jr = dr * u.transpose();
  out.Jc = m > 0 ? Matrix(dc * u.transpose()) : Matrix(0, n);
  return out;
}

/// Convenience overload without budget/trace plumbing.
inline JacobianPair estimate_jacobians(const Problem& prob, const Vector& x, double gamma,
                                       DirectionSampler& dirs, Rng& rng, EvalCounter& ctr,
                                       const Vector* base_r = nullptr,
                                       const Vector* base_c = nullptr) {
  EvalContext ctx{prob, ctr};
  return estimate_jacobians(ctx, x, gamma, dirs, rng, base_r, base_c);
}

}  // namespace dfnls
