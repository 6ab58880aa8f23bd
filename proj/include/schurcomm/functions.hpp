#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schurcomm/operator_core.hpp"
#include "schurcomm/quadrature.hpp"
#include "schurcomm/report.hpp"

namespace schurcomm {

// Hölder-boundedness data: |g(s) - g(t)| <= A + B|s-t|^alpha for all real
// s, t. Weaker than Hölder continuity (the additive A absorbs jumps).
struct HolderBound {
  double alpha = 1.0;
  double A = 0.0;
  double B = 0.0;
};

inline HolderBound make_holder_bound(double alpha, double a, double b) {
  if (!(alpha > 0.0)) throw Error("make_holder_bound: alpha must be positive");
  if (a < 0.0 || b < 0.0) throw Error("make_holder_bound: A, B must be nonnegative");
  return HolderBound{alpha, a, b};
}

enum class FunctionKind { AbsValue, TildeLog, LogBeta, HolderSample, AbsContinuous };

// A Borel function g together with whatever analytic data it carries:
// a declared Hölder bound, |g'| with its support (for L^p quadrature),
// a declared (||l||_1, ||u||_inf) decomposition of g', or the LogBeta
// clamp level. Complex values are allowed; all norms use the modulus.
struct FunctionSpec {
  FunctionKind kind = FunctionKind::HolderSample;
  std::string name;
  std::function<Complex(double)> evaluate;
  std::optional<HolderBound> holder;
  // |g'(t)|, defined on [support_lo, support_hi] (infinite endpoints allowed);
  // zero outside. Present for AbsContinuous and LogBeta.
  std::function<double(double)> derivative_abs;
  double support_lo = 0.0;
  double support_hi = 0.0;
  // declared admissible decomposition g' = l + u: (||l||_1, ||u||_inf)
  std::optional<std::pair<double, double>> l1_linf_split;
  double beta = 0.0;  // LogBeta clamp level
};

// g(t) = |t|; (1,0,1)-Hölder bounded since ||s|-|t|| <= |s-t|.
inline FunctionSpec abs_value_spec() {
  FunctionSpec g;
  g.kind = FunctionKind::AbsValue;
  g.name = "abs";
  g.evaluate = [](double t) { return Complex(std::abs(t), 0.0); };
  g.holder = HolderBound{1.0, 0.0, 1.0};
  return g;
}

// tilde-log: log t for t > 0, 0 for t <= 0.
inline FunctionSpec tilde_log_spec() {
  FunctionSpec g;
  g.kind = FunctionKind::TildeLog;
  g.name = "tilde_log";
  g.evaluate = [](double t) { return Complex(t > 0.0 ? std::log(t) : 0.0, 0.0); };
  return g;
}

// g_beta: log t for t >= beta, clamped to log(beta) below. The derivative is
// t^{-1} on [beta, inf) and 0 elsewhere.
inline FunctionSpec log_beta_spec(double beta) {
  if (!(beta > 0.0)) throw Error("log_beta_spec: beta must be positive");
  FunctionSpec g;
  g.kind = FunctionKind::LogBeta;
  g.name = "log_beta";
  g.beta = beta;
  g.evaluate = [beta](double t) { return Complex(std::log(std::max(t, beta)), 0.0); };
  g.derivative_abs = [beta](double t) { return t >= beta ? 1.0 / t : 0.0; };
  g.support_lo = beta;
  g.support_hi = std::numeric_limits<double>::infinity();
  return g;
}

// A sampled function carrying (optionally) a declared Hölder bound.
inline FunctionSpec holder_sample_spec(std::string name, std::function<Complex(double)> evaluate,
                                       std::optional<HolderBound> holder = std::nullopt) {
  FunctionSpec g;
  g.kind = FunctionKind::HolderSample;
  g.name = std::move(name);
  g.evaluate = std::move(evaluate);
  g.holder = holder;
  return g;
}

// The workhorse (alpha,A,B)-Hölder-bounded sample for campaigns:
//   g(t) = (A/2) sgn(t) + B |t|^alpha,  alpha in (0,1].
// The declared bound holds because |sgn s - sgn t| <= 2 and
// ||s|^a - |t|^a| <= ||s|-|t||^a <= |s-t|^a for a <= 1.
inline FunctionSpec holder_power_spec(double alpha, double a, double b) {
  HolderBound hb = make_holder_bound(alpha, a, b);
  if (alpha > 1.0) {
    throw Error("holder_power_spec: alpha > 1 has no valid power-law sample");
  }
  FunctionSpec g;
  g.kind = FunctionKind::HolderSample;
  g.name = "holder_power";
  g.holder = hb;
  g.evaluate = [alpha, a, b](double t) {
    const double sgn = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    return Complex(0.5 * a * sgn + b * std::pow(std::abs(t), alpha), 0.0);
  };
  return g;
}

// An absolutely continuous function with |g'| and its support declared,
// plus an optional admissible (||l||_1, ||u||_inf) decomposition of g'.
inline FunctionSpec abs_cont_spec(std::string name, std::function<Complex(double)> evaluate,
                                  std::function<double(double)> derivative_abs, double support_lo,
                                  double support_hi,
                                  std::optional<std::pair<double, double>> split = std::nullopt) {
  FunctionSpec g;
  g.kind = FunctionKind::AbsContinuous;
  g.name = std::move(name);
  g.evaluate = std::move(evaluate);
  g.derivative_abs = std::move(derivative_abs);
  g.support_lo = support_lo;
  g.support_hi = support_hi;
  g.l1_linf_split = split;
  return g;
}

// arctan: derivative 1/(1+t^2) is bounded by 1, so (0, 1) is an admissible
// split with the whole derivative in the L^inf part.
inline FunctionSpec arctan_spec() {
  const double inf = std::numeric_limits<double>::infinity();
  return abs_cont_spec(
      "arctan", [](double t) { return Complex(std::atan(t), 0.0); },
      [](double t) { return 1.0 / (1.0 + t * t); }, -inf, inf, std::make_pair(0.0, 1.0));
}

// ||l||_1 + ||u||_inf for a caller-supplied decomposition g' = l + u.
// Any admissible decomposition upper-bounds the L^1+L^inf infimum, and the
// theorems remain valid with the upper bound in place of the infimum.
inline double l1_linf_norm(double ell_l1, double u_linf) {
  if (ell_l1 < 0.0 || u_linf < 0.0) throw Error("l1_linf_norm: norms must be nonnegative");
  return ell_l1 + u_linf;
}

// Closed-form split for g_beta': cut the t^{-1} tail at max(beta, 1).
//   beta >= 1: l = 0, u = whole tail, ||u||_inf = 1/beta -> (0, 1/beta)
//   beta <  1: l = 1/t on [beta,1), ||l||_1 = log(1/beta); ||u||_inf = 1.
inline std::pair<double, double> gbeta_l1_linf_split(double beta) {
  if (!(beta > 0.0)) throw Error("gbeta_l1_linf_split: beta must be positive");
  if (beta >= 1.0) return {0.0, 1.0 / beta};
  return {std::log(1.0 / beta), 1.0};
}

// L^p norm of |g'| by adaptive quadrature over the declared support.
inline double lp_norm_quadrature(const FunctionSpec& g, double p, double abs_tol = 1e-8) {
  if (!g.derivative_abs) throw Error("lp_norm_quadrature: no derivative declared for " + g.name);
  if (!(p >= 1.0)) throw POutOfRange("lp_norm_quadrature: p must be >= 1");
  auto integrand = [&g, p](double t) { return std::pow(g.derivative_abs(t), p); };
  const bool lo_inf = std::isinf(g.support_lo);
  const bool hi_inf = std::isinf(g.support_hi);
  double integral;
  if (lo_inf && hi_inf) {
    integral = integrate_infinite(integrand, abs_tol);
  } else if (hi_inf) {
    integral = integrate_semi_infinite(integrand, g.support_lo, abs_tol);
  } else if (lo_inf) {
    auto reflected = [&integrand](double t) { return integrand(-t); };
    integral = integrate_semi_infinite(reflected, -g.support_hi, abs_tol);
  } else {
    integral = integrate(integrand, g.support_lo, g.support_hi, abs_tol);
  }
  if (integral < 0.0) integral = 0.0;
  return std::pow(integral, 1.0 / p);
}

// ||g'||_p: closed form where one exists (LogBeta), quadrature otherwise.
//   LogBeta: integral of t^{-p} over [beta, inf) = beta^{1-p}/(p-1) for p > 1;
//   divergent at p = 1.
inline double lp_norm_of_derivative(const FunctionSpec& g, double p) {
  if (!(p >= 1.0)) throw POutOfRange("lp_norm_of_derivative: p must be >= 1");
  if (g.kind == FunctionKind::LogBeta) {
    if (p == 1.0) {
      throw NonIntegrable("lp_norm_of_derivative: g_beta' has divergent L^1 norm");
    }
    return std::pow(std::pow(g.beta, 1.0 - p) / (p - 1.0), 1.0 / p);
  }
  if (g.kind == FunctionKind::AbsContinuous) return lp_norm_quadrature(g, p);
  throw Error("lp_norm_of_derivative: no derivative data for " + g.name);
}

// Cutoff split of g' at |g'| = 1: the tall part has ||l||_1 <= ||g'||_p^p and
// the rest is bounded by 1, giving the admissible pair (||g'||_p^p, 1).
inline std::pair<double, double> lp_cutoff_split(const FunctionSpec& g, double p) {
  const double lp = lp_norm_of_derivative(g, p);
  return {std::pow(lp, p), 1.0};
}

// Result of checking a declared Hölder bound on a grid: the worst pair and
// the two sides of the defining inequality there.
struct HolderCheckResult {
  bool pass = true;
  double worst_s = 0.0;
  double worst_t = 0.0;
  double lhs = 0.0;  // |g(s) - g(t)| at the worst pair
  double rhs = 0.0;  // A + B|s-t|^alpha there
};

// Checks |g(s) - g(t)| <= A + B|s-t|^alpha over all grid pairs, reporting
// the pair that maximizes the excess lhs - rhs.
inline HolderCheckResult verify_holder_bound(const FunctionSpec& g, const HolderBound& hb,
                                             const std::vector<double>& grid) {
  HolderCheckResult out;
  double worst_excess = -std::numeric_limits<double>::infinity();
  std::vector<Complex> values(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) values[i] = g.evaluate(grid[i]);
  for (size_t i = 0; i < grid.size(); ++i) {
    for (size_t j = i; j < grid.size(); ++j) {
      const double lhs = std::abs(values[i] - values[j]);
      const double rhs = hb.A + hb.B * std::pow(std::abs(grid[i] - grid[j]), hb.alpha);
      if (lhs - rhs > worst_excess) {
        worst_excess = lhs - rhs;
        out.worst_s = grid[i];
        out.worst_t = grid[j];
        out.lhs = lhs;
        out.rhs = rhs;
      }
    }
  }
  out.pass = inequality_pass(out.lhs, out.rhs);
  return out;
}

// Default verification grid: 512 equispaced points on
// [spectral min - 1, spectral max + 1] plus every integer in that range, so
// both the spectrum of D and of its discrete approximant are covered.
inline std::vector<double> default_holder_grid(const HermitianOperator& d) {
  const double lo = d.eigenvalues(0) - 1.0;
  const double hi = d.eigenvalues(d.eigenvalues.size() - 1) + 1.0;
  std::vector<double> grid;
  const int points = 512;
  for (int i = 0; i < points; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
  }
  for (long long n = static_cast<long long>(std::ceil(lo)); n <= std::floor(hi); ++n) {
    grid.push_back(static_cast<double>(n));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace schurcomm
