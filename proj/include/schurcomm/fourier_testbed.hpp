#pragma once

#include "schurcomm/block_schur.hpp"
#include "schurcomm/multipliers.hpp"
#include "schurcomm/spectral_binning.hpp"

namespace schurcomm {

// Truncated Fourier-basis model on the circle: D is the diagonal matrix of
// the mode numbers -M..M, so every spectral bin is one-dimensional and the
// Schur-product description of commutators is exact, not an estimate.
struct CircleModel {
  int M = 0;
  HermitianOperator D;
  BinningPtr binning;

  int dim() const { return 2 * M + 1; }
};

inline CircleModel make_circle_model(int m_cut) {
  if (m_cut < 1) throw Error("make_circle_model: mode cutoff must be >= 1");
  const int n = 2 * m_cut + 1;
  RealVector modes(n);
  for (int i = 0; i < n; ++i) modes(i) = static_cast<double>(i - m_cut);
  CircleModel model;
  model.M = m_cut;
  model.D = hermitian_from_eigensystem(Matrix::Identity(n, n), modes);
  model.binning = build_binning(model.D);
  return model;
}

// Residual of the exact identity [g(D), y] = S * [D, y] with
// S_ij = (g(i) - g(j))/(i - j) off the diagonal. Contract:
// residual <= 1e-12 * (1 + ||g(D)||) * ||y||.
inline double exact_schur_identity(const CircleModel& model, const FunctionSpec& g,
                                   const BoundedOperator& y) {
  if (y.dim() != model.dim()) {
    throw DimMismatch("exact_schur_identity: y dim " + std::to_string(y.dim()) + " vs model dim " +
                      std::to_string(model.dim()));
  }
  const BoundedOperator lhs = commutator(apply_function(model.D, g.evaluate), y);
  const ScalarMultiplier s = difference_quotient_multiplier(g, 1);
  const BlockMatrix dy = to_blocks(model.binning, commutator(model.D, y));
  const BoundedOperator rhs = assemble(schur_scalar_product(s, dy));
  return operator_norm(lhs.matrix - rhs.matrix);
}

// Residual of the derivation itself as a Schur product:
// [D, y] = (i - j) * y_ij. Contract: residual <= 1e-12 scale-relative with
// scale (1 + ||D||) * ||y||.
inline double derivation_as_schur(const CircleModel& model, const BoundedOperator& y) {
  if (y.dim() != model.dim()) {
    throw DimMismatch("derivation_as_schur: y dim " + std::to_string(y.dim()) + " vs model dim " +
                      std::to_string(model.dim()));
  }
  const BoundedOperator lhs = commutator(model.D, y);
  const BlockMatrix rhs = block_derivation(DerivationKind::dbar, to_blocks(model.binning, y));
  return operator_norm(lhs.matrix - assemble(rhs).matrix);
}

}  // namespace schurcomm
