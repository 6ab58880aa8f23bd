#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "schurcomm/block_schur.hpp"
#include "schurcomm/functions.hpp"
#include "schurcomm/multipliers.hpp"
#include "schurcomm/report.hpp"
#include "schurcomm/spectral_binning.hpp"

namespace schurcomm {

// Exact binomial coefficient as a double (n small here; exact up to 2^53).
inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

// A positive-semidefinite D whose kernel is known by construction: the
// indices carrying an exact-zero eigenvalue are declared, and beta is the
// smallest eigenvalue above the kernel. A numeric guard (eigenvalue below
// 1e-12*||D||) must agree with the declaration — the beta/kernel dichotomy
// is discontinuous and must not hinge on rounding.
struct PositiveInstance {
  HermitianOperator D;
  std::vector<int> kernel_indices;
  double beta = 0.0;

  bool invertible() const { return kernel_indices.empty(); }

  // E0, the projection onto the declared kernel.
  Matrix kernel_projection() const {
    const int n = D.dim();
    Matrix e0 = Matrix::Zero(n, n);
    for (int idx : kernel_indices) {
      e0 += D.eigenvectors.col(idx) * D.eigenvectors.col(idx).adjoint();
    }
    return e0;
  }
};

inline PositiveInstance make_positive_instance(HermitianOperator d,
                                               std::vector<int> kernel_indices) {
  const auto n = d.eigenvalues.size();
  if (d.eigenvalues(0) < 0.0) {
    std::ostringstream os;
    os << "make_positive_instance: negative eigenvalue " << d.eigenvalues(0);
    throw Error(os.str());
  }
  std::vector<bool> declared(static_cast<size_t>(n), false);
  for (int idx : kernel_indices) {
    if (idx < 0 || idx >= n) throw Error("make_positive_instance: kernel index out of range");
    if (d.eigenvalues(idx) != 0.0) {
      std::ostringstream os;
      os << "make_positive_instance: declared kernel index " << idx
         << " has nonzero eigenvalue " << d.eigenvalues(idx);
      throw AmbiguousKernel(os.str());
    }
    declared[static_cast<size_t>(idx)] = true;
  }
  // numeric guard: anything below threshold must be a declared exact zero,
  // and every declared zero trivially sits below it
  const double threshold = 1e-12 * d.eigenvalues(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool numerically_zero = d.eigenvalues(i) < threshold || d.eigenvalues(i) == 0.0;
    if (numerically_zero != declared[static_cast<size_t>(i)]) {
      std::ostringstream os;
      os << "make_positive_instance: eigenvalue " << d.eigenvalues(i) << " at index " << i
         << (declared[static_cast<size_t>(i)]
                 ? " declared kernel but numerically nonzero"
                 : " numerically ambiguous (below 1e-12*||D||) but not declared kernel");
      throw AmbiguousKernel(os.str());
    }
  }
  PositiveInstance inst;
  inst.D = std::move(d);
  inst.kernel_indices = std::move(kernel_indices);
  inst.beta = 0.0;
  bool found = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!declared[static_cast<size_t>(i)]) {
      inst.beta = inst.D.eigenvalues(i);  // ascending: first non-kernel is smallest
      found = true;
      break;
    }
  }
  if (!found) throw NoPositiveSpectrum("make_positive_instance: no eigenvalue above the kernel");
  return inst;
}

// tilde-log of the instance: direct functional calculus when invertible;
// g_beta(D) - log(beta) E0 when the kernel is nontrivial (the two agree on
// the spectrum: eigenvalue 0 maps to log(beta) - log(beta) = 0).
inline BoundedOperator tilde_log_of(const PositiveInstance& inst) {
  if (inst.invertible()) {
    return apply_function(inst.D, tilde_log_spec().evaluate);
  }
  const BoundedOperator gb = apply_function(inst.D, log_beta_spec(inst.beta).evaluate);
  return BoundedOperator{gb.matrix - std::log(inst.beta) * inst.kernel_projection()};
}

// --- interior inequality checks -------------------------------------------
// Each of these is a step inside one of the headline proofs, exposed so it
// can be verified in bulk on random instances.

// ||[g(D) - g(Dbar), y]|| <= 2(A+B)||y||: the functional-calculus difference
// g(D) - g(Dbar) has norm at most A + B(1/2)^alpha <= A + B.
inline SideCheck side_check_gd_difference(const HermitianOperator& d, const BoundedOperator& y,
                                          const FunctionSpec& g) {
  if (!g.holder) throw Error("side_check_gd_difference: g has no declared Hölder bound");
  const BinningPtr binning = build_binning(d);
  const BoundedOperator gd = apply_function(d, g.evaluate);
  const BoundedOperator gdbar = apply_function(binning->Dbar, g.evaluate);
  const double lhs = operator_norm(commutator(BoundedOperator{gd.matrix - gdbar.matrix}, y));
  const double rhs = 2.0 * (g.holder->A + g.holder->B) * operator_norm(y);
  return make_side_check("gd_difference", lhs, rhs);
}

// ||dbar^n(m(y))|| <= sum_k binom(n,k)||ad_D^k(y)||: the binomial expansion
// of dbar = d - f with ||f|| <= 1 applied blockwise.
inline SideCheck side_check_dbar_estimate(const HermitianOperator& d, const BoundedOperator& y,
                                          int n) {
  if (n < 1) throw Error("side_check_dbar_estimate: order must be >= 1");
  const BinningPtr binning = build_binning(d);
  BlockMatrix x = to_blocks(binning, y);
  for (int i = 0; i < n; ++i) x = block_derivation(DerivationKind::dbar, x);
  const double lhs = operator_norm(assemble(x));
  const auto norms = commutator_norms(d, y, n);
  double rhs = 0.0;
  for (int k = 0; k <= n; ++k) rhs += binom(n, k) * norms[static_cast<size_t>(k)];
  return make_side_check("dbar_estimate", lhs, rhs);
}

// Residual of the operator identity dbar^n = sum_k binom(n,k)(-f)^{n-k} d^k
// on a concrete block matrix, compared against 1e-9 * scale.
inline SideCheck side_check_binomial_identity(const BlockMatrix& x, int n) {
  if (n < 1) throw Error("side_check_binomial_identity: order must be >= 1");
  BlockMatrix dbar_n = x;
  for (int i = 0; i < n; ++i) dbar_n = block_derivation(DerivationKind::dbar, dbar_n);
  Matrix sum = Matrix::Zero(x.dim(), x.dim());
  double scale = operator_norm(assemble(dbar_n));
  BlockMatrix dk = x;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) dk = block_derivation(DerivationKind::d, dk);
    BlockMatrix term = dk;
    for (int i = 0; i < n - k; ++i) term = block_derivation(DerivationKind::f, term);
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    const Matrix assembled = assemble(term).matrix;
    sum += binom(n, k) * sign * assembled;
    scale += binom(n, k) * operator_norm(assembled);
  }
  const double residual = operator_norm(assemble(dbar_n).matrix - sum);
  return make_side_check("binomial_identity", residual, 1e-9 * (1.0 + scale));
}

// ||f(x)|| <= ||x||: the commutator with m(b) is a contraction since
// ||b|| <= 1/2.
inline SideCheck side_check_f_contraction(const BlockMatrix& x) {
  const double lhs = operator_norm(assemble(block_derivation(DerivationKind::f, x)));
  const double rhs = operator_norm(assemble(x));
  return make_side_check("f_contraction", lhs, rhs);
}

// ||[E0, y]|| <= ||y||: a projection commutator never grows the norm.
inline SideCheck side_check_kernel_projection(const PositiveInstance& inst,
                                              const BoundedOperator& y) {
  const Matrix e0 = inst.kernel_projection();
  const double lhs = operator_norm(e0 * y.matrix - y.matrix * e0);
  return make_side_check("kernel_projection", lhs, operator_norm(y));
}

// --- headline checkers ------------------------------------------------------

// ||[g(D), y]|| <= 2(A+B)(||y|| + sqrt((n-a)/(2n-2a-1)) sum_k binom(n,k)||ad_D^k(y)||)
// for (alpha,A,B)-Hölder-bounded g, with n the smallest integer > alpha+1/2.
// The declared bound is re-verified on the default grid first. The sum runs
// from k = 0 exactly as the bound is stated, so ||y|| enters twice.
inline InequalityReport check_holder(const HermitianOperator& d, const BoundedOperator& y,
                                     const FunctionSpec& g) {
  if (!g.holder) throw Error("check_holder: g has no declared Hölder bound");
  const HolderCheckResult verified = verify_holder_bound(g, *g.holder, default_holder_grid(d));
  if (!verified.pass) {
    std::ostringstream os;
    os << "check_holder: declared bound fails at (s,t) = (" << verified.worst_s << ", "
       << verified.worst_t << "): |g(s)-g(t)| = " << verified.lhs << " > " << verified.rhs;
    throw HolderBoundViolated(os.str());
  }
  const double alpha = g.holder->alpha;
  const double ab = g.holder->A + g.holder->B;
  const int n = static_cast<int>(std::floor(alpha + 0.5)) + 1;
  const auto norms = commutator_norms(d, y, n);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += binom(n, k) * norms[static_cast<size_t>(k)];
  const double factor =
      std::sqrt((static_cast<double>(n) - alpha) / (2.0 * static_cast<double>(n) - 2.0 * alpha - 1.0));
  const double rhs = 2.0 * ab * (norms[0] + factor * sum);
  const double lhs = operator_norm(commutator(apply_function(d, g.evaluate), y));

  std::map<std::string, double> params;
  params["alpha"] = alpha;
  params["A"] = g.holder->A;
  params["B"] = g.holder->B;
  params["n"] = static_cast<double>(n);
  params["bound_factor"] = factor;
  for (int k = 0; k <= n; ++k) {
    params["delta_norm_" + std::to_string(k)] = norms[static_cast<size_t>(k)];
  }
  InequalityReport report = make_report(TheoremId::HoldThm, std::move(params), lhs, rhs,
                                        digest_of(d));
  report.side_checks.push_back(side_check_gd_difference(d, y, g));
  report.side_checks.push_back(side_check_dbar_estimate(d, y, n));
  return report;
}

// ||[g(D), y]|| <= (||l||_1 + ||u||_inf)(4||y|| + 4||ad_D(y)|| + 2||ad_D^2(y)||)
// for absolutely continuous g with g' = l + u. Any admissible split is a
// valid upper bound for the L^1+L^inf infimum.
inline InequalityReport check_abs_cont(const HermitianOperator& d, const BoundedOperator& y,
                                       const FunctionSpec& g, std::pair<double, double> split) {
  const double norm_factor = l1_linf_norm(split.first, split.second);
  const auto norms = commutator_norms(d, y, 2);
  const double rhs = norm_factor * (4.0 * norms[0] + 4.0 * norms[1] + 2.0 * norms[2]);
  const double lhs = operator_norm(commutator(apply_function(d, g.evaluate), y));
  std::map<std::string, double> params;
  params["ell_l1"] = split.first;
  params["u_linf"] = split.second;
  params["delta_norm_0"] = norms[0];
  params["delta_norm_1"] = norms[1];
  params["delta_norm_2"] = norms[2];
  return make_report(TheoremId::AbsCont, std::move(params), lhs, rhs, digest_of(d));
}

inline InequalityReport check_abs_cont(const HermitianOperator& d, const BoundedOperator& y,
                                       const FunctionSpec& g) {
  if (!g.l1_linf_split) throw Error("check_abs_cont: g carries no L1+Linf split");
  return check_abs_cont(d, y, g, *g.l1_linf_split);
}

// ||[g(D), y]|| <= 2||g'||_p ((1 + 1/sqrt(2-p))||y|| + (1/sqrt(2-p))||ad_D(y)||)
// for p in [1,2). The p = 1 case uses the same closed form (the constant is
// continuous in p and 1/sqrt(2-1) = 1).
inline InequalityReport check_lp(const HermitianOperator& d, const BoundedOperator& y,
                                 const FunctionSpec& g, double p) {
  if (!(p >= 1.0) || p >= 2.0) {
    std::ostringstream os;
    os << "check_lp: p = " << p << " outside [1, 2)";
    throw POutOfRange(os.str());
  }
  const double gp = lp_norm_of_derivative(g, p);
  const double c = 1.0 / std::sqrt(2.0 - p);
  const auto norms = commutator_norms(d, y, 1);
  const double rhs = 2.0 * gp * ((1.0 + c) * norms[0] + c * norms[1]);
  const double lhs = operator_norm(commutator(apply_function(d, g.evaluate), y));
  std::map<std::string, double> params;
  params["p"] = p;
  params["lp_norm"] = gp;
  params["delta_norm_0"] = norms[0];
  params["delta_norm_1"] = norms[1];
  return make_report(TheoremId::Lp, std::move(params), lhs, rhs, digest_of(d));
}

// ||[g_beta(D), y]|| <= beta^{-1/3}(8||y|| + 5||ad_D(y)||) for positive D,
// with beta the smallest positive spectral value.
inline InequalityReport check_gbeta(const PositiveInstance& inst, const BoundedOperator& y) {
  const double beta = inst.beta;
  const FunctionSpec g = log_beta_spec(beta);
  const auto norms = commutator_norms(inst.D, y, 1);
  const double scale = std::pow(beta, -1.0 / 3.0);
  const double rhs = scale * (8.0 * norms[0] + 5.0 * norms[1]);
  const double lhs = operator_norm(commutator(apply_function(inst.D, g.evaluate), y));
  std::map<std::string, double> params;
  params["beta"] = beta;
  params["delta_norm_0"] = norms[0];
  params["delta_norm_1"] = norms[1];
  return make_report(TheoremId::GBeta, std::move(params), lhs, rhs, digest_of(inst.D));
}

// Branch (i), invertible D: ||[tilde-log(D), y]|| obeys the g_beta bound
// (the two functions agree on the spectrum). Branch (ii), nontrivial
// kernel: tilde-log(D) = g_beta(D) - log(beta) E0 and
// ||[tilde-log(D), y]|| <= (8 beta^{-1/3} + |log beta|)||y||
//                          + 5 beta^{-1/3}||[D, y]||.
inline InequalityReport check_tilde_log(const PositiveInstance& inst, const BoundedOperator& y) {
  const double beta = inst.beta;
  const double scale = std::pow(beta, -1.0 / 3.0);
  const auto norms = commutator_norms(inst.D, y, 1);
  const double lhs = operator_norm(commutator(tilde_log_of(inst), y));
  double rhs;
  TheoremId id;
  if (inst.invertible()) {
    id = TheoremId::TildeLogInv;
    rhs = scale * (8.0 * norms[0] + 5.0 * norms[1]);
  } else {
    id = TheoremId::TildeLogNonInv;
    rhs = (8.0 * scale + std::abs(std::log(beta))) * norms[0] + 5.0 * scale * norms[1];
  }
  std::map<std::string, double> params;
  params["beta"] = beta;
  params["kernel_dim"] = static_cast<double>(inst.kernel_indices.size());
  params["delta_norm_0"] = norms[0];
  params["delta_norm_1"] = norms[1];
  InequalityReport report = make_report(id, std::move(params), lhs, rhs, digest_of(inst.D));
  report.side_checks.push_back(side_check_kernel_projection(inst, y));
  return report;
}

// ||[tilde-log(sD), y]|| - ||[tilde-log(D), y]|| in absolute value, for
// s > 0 and invertible D; zero in exact arithmetic since
// tilde-log(sD) = log(s) I + tilde-log(D) and the identity drops out.
inline double tilde_log_scaling_residual(const PositiveInstance& inst, const BoundedOperator& y,
                                         double s) {
  if (!inst.invertible()) {
    throw NonInvertible("tilde_log_scaling_residual: identity requires trivial kernel");
  }
  if (!(s > 0.0)) throw Error("tilde_log_scaling_residual: scale must be positive");
  const auto tl = tilde_log_spec().evaluate;
  const HermitianOperator scaled =
      hermitian_from_eigensystem(inst.D.eigenvectors, s * inst.D.eigenvalues);
  const double base = operator_norm(commutator(apply_function(inst.D, tl), y));
  const double after = operator_norm(commutator(apply_function(scaled, tl), y));
  return std::abs(after - base);
}

// ||[tilde-log(D), y]|| <= 13 beta^{-1/3} ||y||^{2/3} ||ad_D(y)||^{1/3} for
// positive invertible D. The optimized form of the constant is
// 12 (5/4)^{1/3} = 12.926..., reported as <= 13.
inline InequalityReport check_log_interp(const PositiveInstance& inst, const BoundedOperator& y) {
  if (!inst.invertible()) {
    throw NonInvertible("check_log_interp: D must be invertible (trivial kernel)");
  }
  const double beta = inst.beta;
  const auto norms = commutator_norms(inst.D, y, 1);
  const double lhs = operator_norm(commutator(tilde_log_of(inst), y));
  const double rhs = 13.0 * std::pow(beta, -1.0 / 3.0) * std::pow(norms[0], 2.0 / 3.0) *
                     std::cbrt(norms[1]);
  std::map<std::string, double> params;
  params["beta"] = beta;
  params["delta_norm_0"] = norms[0];
  params["delta_norm_1"] = norms[1];
  InequalityReport report =
      make_report(TheoremId::LogInterp13, std::move(params), lhs, rhs, digest_of(inst.D));

  const double scaling = tilde_log_scaling_residual(inst, y, 4.0);
  report.side_checks.push_back(
      make_side_check("scaling_identity_s4", scaling, 1e-10 * (1.0 + lhs)));
  report.side_checks.push_back(
      make_side_check("optimized_constant", 12.0 * std::cbrt(5.0 / 4.0), 13.0));
  return report;
}

// ||[|D|, y]|| <= 4||y|| + 4||ad_D(y)|| + 2||ad_D^2(y)||.
inline InequalityReport check_abs_first(const HermitianOperator& d, const BoundedOperator& y) {
  const auto norms = commutator_norms(d, y, 2);
  const double rhs = 4.0 * norms[0] + 4.0 * norms[1] + 2.0 * norms[2];
  const double lhs = operator_norm(commutator(apply_function(d, abs_value_spec().evaluate), y));
  std::map<std::string, double> params;
  params["delta_norm_0"] = norms[0];
  params["delta_norm_1"] = norms[1];
  params["delta_norm_2"] = norms[2];
  return make_report(TheoremId::AbsFirst, std::move(params), lhs, rhs, digest_of(d));
}

// ||ad_{|D|}^n(y)|| <= 2^n (pi/sqrt(3)) ||y||
//                      + (pi/sqrt(3)) sum_{l=1}^{n+1} binom(n+1,l) 2^{n+1-l} ||ad_D^l(y)||.
inline InequalityReport check_abs_higher(const HermitianOperator& d, const BoundedOperator& y,
                                         int n) {
  if (n < 1) throw Error("check_abs_higher: order must be >= 1");
  const double c = std::numbers::pi / std::sqrt(3.0);
  const BoundedOperator abs_d = apply_function(d, abs_value_spec().evaluate);
  const double lhs = operator_norm(iterated_commutator(abs_d, y, n));
  const auto norms = commutator_norms(d, y, n + 1);
  double sum = 0.0;
  for (int l = 1; l <= n + 1; ++l) {
    sum += binom(n + 1, l) * std::pow(2.0, n + 1 - l) * norms[static_cast<size_t>(l)];
  }
  const double rhs = std::pow(2.0, n) * c * norms[0] + c * sum;
  std::map<std::string, double> params;
  params["n"] = static_cast<double>(n);
  for (int l = 0; l <= n + 1; ++l) {
    params["delta_norm_" + std::to_string(l)] = norms[static_cast<size_t>(l)];
  }
  return make_report(TheoremId::AbsHigher, std::move(params), lhs, rhs, digest_of(d));
}

}  // namespace schurcomm
