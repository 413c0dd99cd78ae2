#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "dfnls/problem.hpp"

namespace dfnls {

enum class Family { Constrained, Unconstrained, Degenerate };

struct CorpusEntry {
  Problem problem;
  Family family;
};

namespace detail {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Equality constrained problems. Objectives are stated as residual vectors,
// so the objective value is 1/2 ||r||^2; f_opt follows that convention.

// Hock-Schittkowski 6: min (1-x1)^2 s.t. 10(x2 - x1^2) = 0.
inline Problem hs6() {
  Problem pr;
  pr.name = "hs6";
  pr.n = 2; pr.p = 1; pr.m = 1;
  pr.x0 = vec({-1.2, 1.0});
  pr.r_eval = [](const Vector& x) { return vec({1.0 - x(0)}); };
  pr.c_eval = [](const Vector& x) { return vec({10.0 * (x(1) - x(0) * x(0))}); };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 1.0});
  return pr;
}

// Hock-Schittkowski 26: min (x1-x2)^2 + (x2-x3)^4 s.t. (1+x2^2) x1 + x3^4 - 3 = 0.
inline Problem hs26() {
  Problem pr;
  pr.name = "hs26";
  pr.n = 3; pr.p = 2; pr.m = 1;
  pr.x0 = vec({-2.6, 2.0, 2.0});
  pr.r_eval = [](const Vector& x) {
    const double s = x(1) - x(2);
    return vec({x(0) - x(1), s * s});
  };
  pr.c_eval = [](const Vector& x) {
    return vec({(1.0 + x(1) * x(1)) * x(0) + std::pow(x(2), 4) - 3.0});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 1.0, 1.0});
  return pr;
}

// Hock-Schittkowski 28: min (x1+x2)^2 + (x2+x3)^2 s.t. x1 + 2 x2 + 3 x3 - 1 = 0.
inline Problem hs28() {
  Problem pr;
  pr.name = "hs28";
  pr.n = 3; pr.p = 2; pr.m = 1;
  pr.x0 = vec({-4.0, 1.0, 1.0});
  pr.r_eval = [](const Vector& x) { return vec({x(0) + x(1), x(1) + x(2)}); };
  pr.c_eval = [](const Vector& x) { return vec({x(0) + 2.0 * x(1) + 3.0 * x(2) - 1.0}); };
  pr.f_opt = 0.0;
  pr.x_opt = vec({0.5, -0.5, 0.5});
  return pr;
}

// Hock-Schittkowski 42: min sum (xi - i)^2 s.t. x1 = 2, x3^2 + x4^2 = 2.
inline Problem hs42() {
  Problem pr;
  pr.name = "hs42";
  pr.n = 4; pr.p = 4; pr.m = 2;
  pr.x0 = vec({1.0, 1.0, 1.0, 1.0});
  pr.r_eval = [](const Vector& x) {
    return vec({x(0) - 1.0, x(1) - 2.0, x(2) - 3.0, x(3) - 4.0});
  };
  pr.c_eval = [](const Vector& x) {
    return vec({x(0) - 2.0, x(2) * x(2) + x(3) * x(3) - 2.0});
  };
  pr.f_opt = 14.0 - 5.0 * std::sqrt(2.0);
  pr.x_opt = vec({2.0, 2.0, 0.6 * std::sqrt(2.0), 0.8 * std::sqrt(2.0)});
  return pr;
}

// Hock-Schittkowski 46:
// min (x1-x2)^2 + (x3-1)^2 + (x4-1)^4 + (x5-1)^6
// s.t. x1^2 x4 + sin(x4 - x5) - 1 = 0, x2 + x3^4 x4^2 - 2 = 0.
inline Problem hs46() {
  Problem pr;
  pr.name = "hs46";
  pr.n = 5; pr.p = 4; pr.m = 2;
  pr.x0 = vec({std::sqrt(2.0) / 2.0, 1.75, 0.5, 2.0, 2.0});
  pr.r_eval = [](const Vector& x) {
    const double a = x(3) - 1.0, b = x(4) - 1.0;
    return vec({x(0) - x(1), x(2) - 1.0, a * a, b * b * b});
  };
  pr.c_eval = [](const Vector& x) {
    return vec({x(0) * x(0) * x(3) + std::sin(x(3) - x(4)) - 1.0,
                x(1) + std::pow(x(2), 4) * x(3) * x(3) - 2.0});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 1.0, 1.0, 1.0, 1.0});
  return pr;
}

// Hock-Schittkowski 48: min (x1-1)^2 + (x2-x3)^2 + (x4-x5)^2
// s.t. sum x - 5 = 0, x3 - 2(x4 + x5) + 3 = 0.
inline Problem hs48() {
  Problem pr;
  pr.name = "hs48";
  pr.n = 5; pr.p = 3; pr.m = 2;
  pr.x0 = vec({3.0, 5.0, -3.0, 2.0, -2.0});
  pr.r_eval = [](const Vector& x) {
    return vec({x(0) - 1.0, x(1) - x(2), x(3) - x(4)});
  };
  pr.c_eval = [](const Vector& x) {
    return vec({x.sum() - 5.0, x(2) - 2.0 * (x(3) + x(4)) + 3.0});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 1.0, 1.0, 1.0, 1.0});
  return pr;
}

// Hock-Schittkowski 51: min (x1-x2)^2 + (x2+x3-2)^2 + (x4-1)^2 + (x5-1)^2
// s.t. x1 + 3 x2 - 4 = 0, x3 + x4 - 2 x5 = 0, x2 - x5 = 0.
inline Problem hs51() {
  Problem pr;
  pr.name = "hs51";
  pr.n = 5; pr.p = 4; pr.m = 3;
  pr.x0 = vec({2.5, 0.5, 2.0, -1.0, 0.5});
  pr.r_eval = [](const Vector& x) {
    return vec({x(0) - x(1), x(1) + x(2) - 2.0, x(3) - 1.0, x(4) - 1.0});
  };
  pr.c_eval = [](const Vector& x) {
    return vec({x(0) + 3.0 * x(1) - 4.0, x(2) + x(3) - 2.0 * x(4), x(1) - x(4)});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 1.0, 1.0, 1.0, 1.0});
  return pr;
}

// Unconstrained nonlinear least squares (m = 0).

inline Problem rosenbrock() {
  Problem pr;
  pr.name = "rosenbrock";
  pr.n = 2; pr.p = 2; pr.m = 0;
  pr.x0 = vec({-1.2, 1.0});
  pr.r_eval = [](const Vector& x) {
    return vec({10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0)});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 1.0});
  return pr;
}

// Two uncoupled Rosenbrock blocks.
inline Problem rosenbrock4() {
  Problem pr;
  pr.name = "rosenbrock4";
  pr.n = 4; pr.p = 4; pr.m = 0;
  pr.x0 = vec({-1.2, 1.0, -1.2, 1.0});
  pr.r_eval = [](const Vector& x) {
    return vec({10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0),
                10.0 * (x(3) - x(2) * x(2)), 1.0 - x(2)});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 1.0, 1.0, 1.0});
  return pr;
}

// Powell's singular function: the Jacobian is singular at the solution.
inline Problem powell_singular() {
  Problem pr;
  pr.name = "powell-singular";
  pr.n = 4; pr.p = 4; pr.m = 0;
  pr.x0 = vec({3.0, -1.0, 0.0, 1.0});
  pr.r_eval = [](const Vector& x) {
    const double a = x(1) - 2.0 * x(2), b = x(0) - x(3);
    return vec({x(0) + 10.0 * x(1), std::sqrt(5.0) * (x(2) - x(3)),
                a * a, std::sqrt(10.0) * b * b});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({0.0, 0.0, 0.0, 0.0});
  return pr;
}

inline Problem beale() {
  Problem pr;
  pr.name = "beale";
  pr.n = 2; pr.p = 3; pr.m = 0;
  pr.x0 = vec({1.0, 1.0});
  pr.r_eval = [](const Vector& x) {
    return vec({1.5 - x(0) * (1.0 - x(1)),
                2.25 - x(0) * (1.0 - x(1) * x(1)),
                2.625 - x(0) * (1.0 - x(1) * x(1) * x(1))});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({3.0, 0.5});
  return pr;
}

inline Problem helical_valley() {
  Problem pr;
  pr.name = "helical";
  pr.n = 3; pr.p = 3; pr.m = 0;
  pr.x0 = vec({-1.0, 0.0, 0.0});
  pr.r_eval = [](const Vector& x) {
    const double theta = std::atan2(x(1), x(0)) / (2.0 * M_PI);
    return vec({10.0 * (x(2) - 10.0 * theta),
                10.0 * (std::sqrt(x(0) * x(0) + x(1) * x(1)) - 1.0),
                x(2)});
  };
  pr.f_opt = 0.0;
  pr.x_opt = vec({1.0, 0.0, 0.0});
  return pr;
}

}  // namespace detail

/// The built-in problem set: equality constrained problems with known
/// optima, their degenerate variants (duplicated and squared constraints),
/// and unconstrained least squares problems.
inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    const std::vector<Problem> constrained = {
        detail::hs6(),  detail::hs26(), detail::hs28(), detail::hs42(),
        detail::hs46(), detail::hs48(), detail::hs51()};
    for (const Problem& pr : constrained) v.push_back({pr, Family::Constrained});
    for (const Problem& pr : constrained) v.push_back({make_degenerate(pr), Family::Degenerate});
    v.push_back({detail::rosenbrock(), Family::Unconstrained});
    v.push_back({detail::rosenbrock4(), Family::Unconstrained});
    v.push_back({detail::powell_singular(), Family::Unconstrained});
    v.push_back({detail::beale(), Family::Unconstrained});
    v.push_back({detail::helical_valley(), Family::Unconstrained});
    return v;
  }();
  return entries;
}

inline const CorpusEntry& find_entry(std::string_view name) {
  for (const CorpusEntry& e : corpus())
    if (e.problem.name == name) return e;
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

inline const Problem& find_problem(std::string_view name) { return find_entry(name).problem; }

}  // namespace dfnls
