#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "schurcomm/block_schur.hpp"
#include "schurcomm/functions.hpp"

namespace schurcomm {

// S_ij = (g(i) - g(j)) / (i-j)^n off the diagonal, 0 on it. No row-norm
// bound is attached; this is the raw difference-quotient matrix (it is also
// the exact multiplier of the circle-model identity when n = 1).
inline ScalarMultiplier difference_quotient_multiplier(const FunctionSpec& g, int n) {
  if (n < 1) throw Error("difference_quotient_multiplier: order must be >= 1");
  ScalarMultiplier s;
  std::ostringstream name;
  name << "dq(" << g.name << "," << n << ")";
  s.name = name.str();
  auto evaluate = g.evaluate;
  s.entry = [evaluate, n](long long i, long long j) -> Complex {
    if (i == j) return Complex(0.0, 0.0);
    const Complex num = evaluate(static_cast<double>(i)) - evaluate(static_cast<double>(j));
    return num / std::pow(static_cast<double>(i - j), n);
  };
  return s;
}

// The same matrix with the Hölder row-norm bound attached:
//   ||S||_r <= 2(A+B) sqrt((n-alpha)/(2n-2alpha-1)),
// valid when n > alpha + 1/2 (the defining series converges). A multiplier
// for a g with a declared bound but n <= alpha + 1/2 has no finite bound of
// this form, which is an error here; a g without declared Hölder data gets
// the raw matrix with the bound absent.
inline ScalarMultiplier holder_multiplier(const FunctionSpec& g, int n) {
  ScalarMultiplier s = difference_quotient_multiplier(g, n);
  if (!g.holder) return s;
  const double alpha = g.holder->alpha;
  if (static_cast<double>(n) <= alpha + 0.5) {
    std::ostringstream os;
    os << "holder_multiplier: row-norm series diverges for n = " << n << " <= alpha + 1/2 = "
       << alpha + 0.5;
    throw BoundInapplicable(os.str());
  }
  const double ab = g.holder->A + g.holder->B;
  const double dn = static_cast<double>(n);
  s.analytic_row_bound = 2.0 * ab * std::sqrt((dn - alpha) / (2.0 * dn - 2.0 * alpha - 1.0));
  return s;
}

// S(k)_ij = (|i| - |j|)^k / (i-j)^{k+1} off the diagonal, 0 on it.
// Row norm over Z is bounded by sqrt(2 sum_{m>=1} m^{-2}) = pi/sqrt(3),
// since ||i| - |j|| <= |i-j| leaves at most 1/|i-j| per entry and each gap
// size appears at most twice in a row.
inline ScalarMultiplier abs_multiplier(int k) {
  if (k < 1) throw Error("abs_multiplier: order must be >= 1");
  ScalarMultiplier s;
  std::ostringstream name;
  name << "S(" << k << ")";
  s.name = name.str();
  s.entry = [k](long long i, long long j) -> Complex {
    if (i == j) return Complex(0.0, 0.0);
    const double num = std::pow(static_cast<double>(std::llabs(i) - std::llabs(j)), k);
    const double den = std::pow(static_cast<double>(i - j), k + 1);
    return Complex(num / den, 0.0);
  };
  s.analytic_row_bound = std::numbers::pi / std::sqrt(3.0);
  return s;
}

// Squared row norm of one row over the window [j_lo, j_hi]: the partial sum
// sum_j |S(i,j)|^2. Single-row version so huge windows stay affordable.
inline double row_sum_squares(const ScalarMultiplier& s, long long i, long long j_lo,
                              long long j_hi) {
  if (j_lo > j_hi) throw Error("row_sum_squares: empty window");
  double sum = 0.0;
  for (long long j = j_lo; j <= j_hi; ++j) sum += std::norm(s.entry(i, j));
  return sum;
}

}  // namespace schurcomm
