#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "dfnls/types.hpp"

namespace dfnls {

/// An equality-constrained nonlinear least squares problem
///
///   minimize 1/2 ||r(x)||^2   subject to  c(x) = 0,
///
/// given only as black-box evaluators for r and c. Unconstrained problems
/// have m = 0 and no constraint evaluator.
struct Problem {
  std::string name;
  int n = 0;  ///< dimension of x
  int p = 0;  ///< number of residuals
  int m = 0;  ///< number of equality constraints (may be 0)
  Vector x0;
  std::function<Vector(const Vector&)> r_eval;
  std::function<Vector(const Vector&)> c_eval;
  std::optional<double> f_opt;  ///< known optimal 1/2||r||^2, if any
  std::optional<Vector> x_opt;  ///< known minimizer, if any

  double objective(const Vector& r) const { return 0.5 * r.squaredNorm(); }
};

/// Counts vector evaluations of r and c. One counter per run; never shared.
struct EvalCounter {
  long r_calls = 0;
  long c_calls = 0;
  long total() const { return r_calls + c_calls; }
};

inline Vector evaluate_r(const Problem& prob, const Vector& x, EvalCounter& ctr) {
  if (x.size() != prob.n) throw std::invalid_argument("evaluate_r: x has wrong dimension");
  ++ctr.r_calls;
  Vector r = prob.r_eval(x);
  if (r.size() != prob.p) throw std::invalid_argument("evaluate_r: r has wrong dimension");
  if (!r.allFinite()) throw EvaluationError("evaluation failure: non-finite residual in " + prob.name);
  return r;
}

inline Vector evaluate_c(const Problem& prob, const Vector& x, EvalCounter& ctr) {
  if (x.size() != prob.n) throw std::invalid_argument("evaluate_c: x has wrong dimension");
  ++ctr.c_calls;
  if (prob.m == 0) return Vector(0);
  Vector c = prob.c_eval(x);
  if (c.size() != prob.m) throw std::invalid_argument("evaluate_c: c has wrong dimension");
  if (!c.allFinite()) throw EvaluationError("evaluation failure: non-finite constraint in " + prob.name);
  return c;
}

/// Duplicates every constraint and squares the copy:
/// c_hat(x) = (c_1,...,c_m, c_1^2,...,c_m^2), so the constraint Jacobian
/// loses full row rank at every feasible point.
inline Problem make_degenerate(const Problem& prob) {
  if (prob.m == 0) throw std::invalid_argument("make_degenerate: nothing to degenerate (m = 0)");
  Problem out = prob;
  out.name = prob.name + "-degenerate";
  out.m = 2 * prob.m;
  const int m = prob.m;
  auto base_c = prob.c_eval;
  out.c_eval = [base_c, m](const Vector& x) {
    Vector c = base_c(x);
    Vector chat(2 * m);
    chat.head(m) = c;
    chat.tail(m) = c.array().square();
    return chat;
  };
  return out;
}

/// Evaluation plumbing shared by the solver: budget enforcement and an
/// optional per-point hook (used to build the best-so-far merit trace).
///
/// The budget counts combined r+c calls; the check runs before each call,
/// so a run never exceeds max_fevals. For m = 0 problems c is never
/// evaluated, keeping the evaluation count meaningful for benchmarking.
struct EvalContext {
  const Problem& prob;
  EvalCounter& ctr;
  long max_fevals = 0;  ///< 0 = unlimited
  std::function<void(const Vector& x, const Vector& r, const Vector& c, long fevals)> point_hook;

  void check_budget() const {
    if (max_fevals > 0 && ctr.total() >= max_fevals)
      throw BudgetExhausted("evaluation budget exhausted");
  }

  Vector eval_r(const Vector& x) {
    check_budget();
    return evaluate_r(prob, x, ctr);
  }

  Vector eval_c(const Vector& x) {
    if (prob.m == 0) return Vector(0);
    check_budget();
    return evaluate_c(prob, x, ctr);
  }

  /// Evaluates r and c at one point and fires the trace hook.
  std::pair<Vector, Vector> eval_pair(const Vector& x) {
    Vector r = eval_r(x);
    Vector c = eval_c(x);
    if (point_hook) point_hook(x, r, c, ctr.total());
    return {std::move(r), std::move(c)};
  }
};

}  // namespace dfnls
