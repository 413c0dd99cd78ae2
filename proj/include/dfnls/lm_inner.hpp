#pragma once

#include <cmath>
#include <vector>

#include "dfnls/dense_linalg.hpp"
#include "dfnls/problem.hpp"
#include "dfnls/smoothing.hpp"
#include "dfnls/types.hpp"

namespace dfnls {

/// Least-squares model of the augmented Lagrangian subproblem at a point:
///   Phi = (r(x), delta^{-1/2} (c(x) - delta y_k)),  J = (Jr; delta^{-1/2} Jc),
///   grad_phi = Jr^T r - Jc^T y_k + delta^{-1} Jc^T c  (= J^T Phi).
struct AugLsModel {
  Vector phi;
  Matrix J;
  Vector grad_phi;
};

inline AugLsModel build_aug_ls(const Vector& r, const Vector& c, const Matrix& Jr,
                               const Matrix& Jc, const Vector& y_k, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("build_aug_ls: delta must be positive");
  const Eigen::Index p = r.size(), m = c.size(), n = Jr.cols();
  AugLsModel out;
  out.phi.resize(p + m);
  out.phi.head(p) = r;
  out.J.resize(p + m, n);
  out.J.topRows(p) = Jr;
  out.grad_phi = Jr.transpose() * r;
  if (m > 0) {
    const double s = 1.0 / std::sqrt(delta);
    out.phi.tail(m) = s * (c - delta * y_k);
    out.J.bottomRows(m) = s * Jc;
    out.grad_phi += -Jc.transpose() * y_k + Jc.transpose() * c / delta;
  }
  return out;
}

inline double aug_phi_squared(const Vector& r, const Vector& c, const Vector& y_k, double delta) {
  double v = r.squaredNorm();
  if (c.size() > 0) v += ((c - delta * y_k) / std::sqrt(delta)).squaredNorm();
  return v;
}

/// Ratio of actual to predicted decrease of ||Phi||^2 for a trial step.
/// Costs one vector evaluation of r and of c at x + d. A vanishing predicted
/// reduction is a null step: the step is rejected and zeta reads -inf.
struct LmRatio {
  double zeta = -kInf;
  bool null_step = true;
  Vector r_trial, c_trial;
};

inline LmRatio lm_ratio(EvalContext& ctx, const Vector& x, const Vector& d,
                        const AugLsModel& model, const Vector& y_k, double delta) {
  LmRatio out;
  const double phi_sq = model.phi.squaredNorm();
  const double predicted = phi_sq - (model.phi + model.J * d).squaredNorm();
  if (!(predicted > 0)) return out;
  std::tie(out.r_trial, out.c_trial) = ctx.eval_pair(x + d);
  const double actual = phi_sq - aug_phi_squared(out.r_trial, out.c_trial, y_k, delta);
  out.zeta = actual / predicted;
  out.null_step = false;
  return out;
}

/// Levenberg-Marquardt parameter schedule: grow on rejection or when the
/// gradient is small relative to 1/lambda, shrink (down to lambda_min) when
/// it is large.
inline double update_lambda(double lambda, double zeta, double g_norm, double p0, double p1,
                            double p2, double lambda_min) {
  if (!(zeta >= p0)) return 4.0 * lambda;
  if (g_norm < p1 / lambda) return 4.0 * lambda;
  if (g_norm < p2 / lambda) return lambda;
  return std::max(0.25 * lambda, lambda_min);
}

/// Smoothing parameter schedule. While delta holds steady the parameter
/// tracks the step norms; right after a delta decrease it reacts to the
/// stationarity measure ||Jc^T c|| instead, never exceeding the outer value.
inline double update_gamma(double gamma, double d_norm, bool delta_changed, double jc_c_norm,
                           double p3, double p4, double gamma_outer) {
  if (!delta_changed) return std::min(0.5 * gamma, d_norm);
  if (jc_c_norm < p3 * gamma) return 0.5 * gamma;
  if (jc_c_norm < p4 * gamma) return gamma;
  return std::min(2.0 * gamma, gamma_outer);
}

/// delta is cut by 10 only when the smoothed augmented-Lagrangian gradient
/// has decreased enough while the constraint violation has not.
inline double maybe_decrease_delta(double delta, double grad_next_norm, double grad_ref_norm,
                                   double cviol_next, double cviol_ref, double theta,
                                   double eps_k) {
  const bool grad_ok = grad_next_norm <= theta * grad_ref_norm + 0.5 * eps_k;
  const bool still_infeasible = cviol_next > theta * cviol_ref + 0.5 * eps_k;
  return (grad_ok && still_infeasible) ? 0.1 * delta : delta;
}

enum class InnerStatus {
  Success,           ///< sufficient decrease of the KKT merit achieved
  FeasibilityStall,  ///< ||Jc^T c|| tiny while still infeasible
  Budget,            ///< iteration limit reached without sufficient decrease
};

struct InnerIterLog {
  int j = 0;
  double lambda = 0, gamma = 0, delta = 0, zeta = 0, step_norm = 0, merit = 0;
  bool accepted = false;
};

struct InnerResult {
  InnerStatus status = InnerStatus::Budget;
  Vector x, z, y;
  Vector r_curr, c_curr;  ///< r(x), c(x) at the returned point
  JacobianPair jac;
  double delta = 0;   ///< penalty parameter at exit
  double rho = kNaN;  ///< lambda * ||grad_phi|| on Success, NaN otherwise
  double gamma = 0;   ///< smoothing parameter of the returned Jacobians
  double merit = kNaN;
  int iters = 0;
  std::vector<InnerIterLog> log;
};

struct InnerParams {
  double theta, p0, p1, p2, p3, p4, lambda_min;
  int max_iters;  ///< K2
};

/// Frozen outer quantities the inner iteration works against.
struct OuterContext {
  Vector x_k, r_k, c_k, z_k, y_k;
  JacobianPair jac_k;
  double merit_k;  ///< ||F_{s_k}||_* at entry
  double eps_k;
  double gamma_k;
  double delta_k;
};

/// Derivative-free Levenberg-Marquardt iteration on the augmented-Lagrangian
/// least-squares reformulation. Runs until the KKT merit satisfies the
/// sufficient-decrease test against the outer value, the stationarity of the
/// constraint violation stalls at an infeasible point, or the iteration
/// budget runs out. Exhaustion of the shared evaluation budget propagates as
/// BudgetExhausted from the evaluation context.
inline InnerResult run_inner(EvalContext& ctx, DirectionSampler& dirs, Rng& rng,
                             const InnerParams& prm, const OuterContext& oc) {
  const int m = ctx.prob.m;
  InnerResult res;
  res.x = oc.x_k;
  res.z = oc.z_k;
  res.y = oc.y_k;
  res.r_curr = oc.r_k;
  res.c_curr = oc.c_k;
  res.jac = oc.jac_k;
  res.gamma = oc.gamma_k;
  res.delta = oc.delta_k;

  Vector r_x = oc.r_k, c_x = oc.c_k;
  double lambda = std::max(prm.lambda_min * 1e8, 1.0);
  double delta = oc.delta_k, delta_prev = oc.delta_k;
  // references for the delta test: ||grad_x L_{s_k}(x_k, y_k)|| and ||c(x_k)||
  Vector grad_l_ref = oc.jac_k.Jr.transpose() * oc.r_k;
  if (m > 0) grad_l_ref -= oc.jac_k.Jc.transpose() * oc.y_k;
  const double grad_ref = grad_l_ref.norm();
  const double cviol_ref = two_norm(oc.c_k);

  for (int j = 0;;) {
    const double jc_c = m > 0 ? (res.jac.Jc.transpose() * c_x).norm() : 0.0;
    if (m > 0 && jc_c <= 1e-6 && inf_norm(c_x) > 1e-5) {
      res.status = InnerStatus::FeasibilityStall;
      res.iters = j;
      return res;
    }
    if (j >= prm.max_iters) {
      res.status = InnerStatus::Budget;
      res.iters = j;
      return res;
    }

    AugLsModel model = build_aug_ls(r_x, c_x, res.jac.Jr, res.jac.Jc, oc.y_k, delta);
    const double g_norm = model.grad_phi.norm();
    Vector d = Vector::Zero(ctx.prob.n);
    LmRatio ratio;
    if (g_norm > 0) {
      d = solve_lm_step(model.J, model.phi, lambda * g_norm);
      ratio = lm_ratio(ctx, res.x, d, model, oc.y_k, delta);
    }
    const bool accepted = !ratio.null_step && ratio.zeta >= prm.p0;
    if (accepted) {
      res.x += d;
      r_x = ratio.r_trial;
      c_x = ratio.c_trial;
    }
    lambda = update_lambda(lambda, ratio.null_step ? -kInf : ratio.zeta, g_norm, prm.p0, prm.p1,
                           prm.p2, prm.lambda_min);
    res.z = r_x;

    double gamma_next = update_gamma(res.gamma, d.norm(), delta != delta_prev, jc_c, prm.p3,
                                     prm.p4, oc.gamma_k);
    if (!(gamma_next > 0))  // a zero step would zero gamma; the estimator needs gamma > 0
      gamma_next = std::min(oc.gamma_k, 1e-12 * (1.0 + res.x.norm()));
    res.jac = estimate_jacobians(ctx, res.x, gamma_next, dirs, rng, &r_x, &c_x);

    Vector grad_l_next = res.jac.Jr.transpose() * r_x;
    if (m > 0)
      grad_l_next += -res.jac.Jc.transpose() * oc.y_k + res.jac.Jc.transpose() * c_x / delta;
    const double delta_next = maybe_decrease_delta(delta, grad_l_next.norm(), grad_ref,
                                                   two_norm(c_x), cviol_ref, prm.theta, oc.eps_k);
    delta_prev = delta;
    delta = delta_next;
    res.gamma = gamma_next;
    ++j;
    res.y = m > 0 ? Vector(oc.y_k - c_x / delta) : Vector(0);
    res.delta = delta;
    res.r_curr = r_x;
    res.c_curr = c_x;

    Vector merit_grad = res.jac.Jr.transpose() * res.z;
    if (m > 0) merit_grad -= res.jac.Jc.transpose() * res.y;
    // the z block is zero by construction (z = r(x)); kept as a self-check
    res.merit = merit_grad.norm() + (res.z - r_x).norm() + two_norm(c_x);
    res.log.push_back({j, lambda, res.gamma, delta, ratio.zeta, d.norm(), res.merit, accepted});

    if (res.merit <= prm.theta * oc.merit_k + oc.eps_k) {
      Vector grad_exit = res.jac.Jr.transpose() * r_x;
      if (m > 0)
        grad_exit += -res.jac.Jc.transpose() * oc.y_k + res.jac.Jc.transpose() * c_x / delta;
      res.rho = lambda * grad_exit.norm();
      res.status = InnerStatus::Success;
      res.iters = j;
      return res;
    }
  }
}

}  // namespace dfnls
