#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schurcomm/operator_core.hpp"
#include "schurcomm/report.hpp"
#include "schurcomm/spectral_binning.hpp"

namespace schurcomm {

// A scalar matrix S = (S_ij) over integer bin labels, given by a total
// entry function, optionally carrying a proven bound on its row norm
// sup_i sqrt(sum_j |S_ij|^2) over all of Z. Inequality checkers use the
// analytic bound when present so theorem constants are honored exactly;
// windowed numeric row norms are always available for comparison.
struct ScalarMultiplier {
  std::function<Complex(long long, long long)> entry;
  std::optional<double> analytic_row_bound;
  std::string name;
};

// An operator expressed in block coordinates over a spectral binning:
// block (i,j) = e_i x e_j written in D's eigenbasis, shape |bin i| x |bin j|.
// Absent keys are zero blocks.
struct BlockMatrix {
  BinningPtr binning;
  std::map<std::pair<long long, long long>, Matrix> blocks;

  int dim() const { return binning ? binning->dim() : 0; }
};

inline BlockMatrix empty_blocks(BinningPtr binning) {
  if (!binning) throw Error("empty_blocks: null binning");
  BlockMatrix x;
  x.binning = std::move(binning);
  return x;
}

// Inserts (or replaces) one block, validating the shape against bin sizes.
inline void set_block(BlockMatrix& x, long long i, long long j, Matrix block) {
  if (!x.binning) throw Error("set_block: block matrix has no binning");
  if (!x.binning->has(i) || !x.binning->has(j)) {
    throw DimMismatch("set_block: bin pair (" + std::to_string(i) + "," + std::to_string(j) +
                      ") not occupied");
  }
  const int ri = x.binning->bin_size(i);
  const int cj = x.binning->bin_size(j);
  if (block.rows() != ri || block.cols() != cj) {
    throw DimMismatch("set_block: block at (" + std::to_string(i) + "," + std::to_string(j) +
                      ") must be " + std::to_string(ri) + "x" + std::to_string(cj));
  }
  x.blocks[{i, j}] = std::move(block);
}

// Block decomposition m(x)_ij = e_i x e_j, in D's eigenbasis coordinates.
// Exactly-zero blocks are dropped (absent key == zero block).
inline BlockMatrix to_blocks(BinningPtr binning, const BoundedOperator& x) {
  if (!binning) throw Error("to_blocks: null binning");
  if (x.dim() != binning->dim()) {
    throw DimMismatch("to_blocks: operator dim " + std::to_string(x.dim()) +
                      " vs binning dim " + std::to_string(binning->dim()));
  }
  const Matrix& u = binning->D.eigenvectors;
  Matrix rotated = u.adjoint() * x.matrix * u;
  BlockMatrix out;
  out.binning = binning;
  for (const auto& [bi, idx_i] : binning->bins) {
    for (const auto& [bj, idx_j] : binning->bins) {
      Matrix block = rotated.block(idx_i.front(), idx_j.front(),
                                   static_cast<Eigen::Index>(idx_i.size()),
                                   static_cast<Eigen::Index>(idx_j.size()));
      if (block.isZero(0.0)) continue;
      out.blocks[{bi, bj}] = std::move(block);
    }
  }
  return out;
}

// Inverse of to_blocks: place blocks into eigenbasis coordinates, rotate back.
inline BoundedOperator assemble(const BlockMatrix& x) {
  if (!x.binning) throw Error("assemble: block matrix has no binning");
  const auto& binning = *x.binning;
  Matrix rotated = Matrix::Zero(binning.dim(), binning.dim());
  for (const auto& [key, block] : x.blocks) {
    rotated.block(binning.bin_offset(key.first), binning.bin_offset(key.second), block.rows(),
                  block.cols()) = block;
  }
  const Matrix& u = binning.D.eigenvectors;
  return BoundedOperator{u * rotated * u.adjoint()};
}

// Schur product with a scalar multiplier: block (i,j) -> S(i,j) * block.
inline BlockMatrix schur_scalar_product(const ScalarMultiplier& s, const BlockMatrix& x) {
  BlockMatrix out;
  out.binning = x.binning;
  for (const auto& [key, block] : x.blocks) {
    Complex factor = s.entry(key.first, key.second);
    if (factor == Complex(0.0, 0.0)) continue;
    out.blocks[key] = factor * block;
  }
  return out;
}

// max over i in window of sqrt(sum over j in window of |S(i,j)|^2).
// A finite-window lower bound for the true row norm over Z.
inline double row_norm(const ScalarMultiplier& s, const std::vector<long long>& window) {
  if (window.empty()) throw Error("row_norm: empty index window");
  double best = 0.0;
  for (long long i : window) {
    double sumsq = 0.0;
    for (long long j : window) sumsq += std::norm(s.entry(i, j));
    best = std::max(best, std::sqrt(sumsq));
  }
  return best;
}

// Column norm via the Gram-sum definition:
// max over j of sqrt(|| sum_i block(i,j)^* block(i,j) ||).
inline double column_norm_blocks(const BlockMatrix& x) {
  if (!x.binning) throw Error("column_norm_blocks: block matrix has no binning");
  std::map<long long, Matrix> grams;
  for (const auto& [key, block] : x.blocks) {
    const long long j = key.second;
    auto it = grams.find(j);
    if (it == grams.end()) {
      grams.emplace(j, Matrix(block.adjoint() * block));
    } else {
      it->second += block.adjoint() * block;
    }
  }
  double best = 0.0;
  for (const auto& [j, gram] : grams) {
    best = std::max(best, std::sqrt(std::max(0.0, operator_norm(gram))));
  }
  return best;
}

// Independent cross-check for column_norm_blocks: stack the blocks of each
// column vertically and take the largest singular value. Test oracle only.
inline double column_norm_stack_oracle(const BlockMatrix& x) {
  if (!x.binning) throw Error("column_norm_stack_oracle: block matrix has no binning");
  double best = 0.0;
  for (long long j : x.binning->occupied) {
    Eigen::Index rows = 0;
    std::vector<const Matrix*> parts;
    for (long long i : x.binning->occupied) {
      auto it = x.blocks.find({i, j});
      if (it == x.blocks.end()) continue;
      parts.push_back(&it->second);
      rows += it->second.rows();
    }
    if (parts.empty()) continue;
    Matrix stacked(rows, x.binning->bin_size(j));
    Eigen::Index at = 0;
    for (const Matrix* part : parts) {
      stacked.middleRows(at, part->rows()) = *part;
      at += part->rows();
    }
    best = std::max(best, operator_norm(stacked));
  }
  return best;
}

// The three block derivations on M_D:
//   d(x)_ij    = Lambda_i x_ij - x_ij Lambda_j   (commutator with m(D))
//   dbar(x)_ij = (i - j) x_ij                    (commutator with m(Dbar))
//   f(x)_ij    = B_i x_ij - x_ij B_j             (commutator with m(b))
// where Lambda_i = diag of D's eigenvalues in bin i and B_i = Lambda_i - i.
// They satisfy d = dbar + f and all three commute as maps.
enum class DerivationKind { d, dbar, f };

inline BlockMatrix block_derivation(DerivationKind kind, const BlockMatrix& x) {
  if (!x.binning) throw Error("block_derivation: block matrix has no binning");
  const auto& binning = *x.binning;
  const double h = binning.grid_length;
  BlockMatrix out;
  out.binning = x.binning;
  for (const auto& [key, block] : x.blocks) {
    const auto [i, j] = key;
    Matrix result;
    if (kind == DerivationKind::dbar) {
      const double diff = h * static_cast<double>(i - j);
      if (diff == 0.0) continue;
      result = diff * block;
    } else {
      RealVector li = binning.D.eigenvalues.segment(binning.bin_offset(i), block.rows());
      RealVector lj = binning.D.eigenvalues.segment(binning.bin_offset(j), block.cols());
      if (kind == DerivationKind::f) {
        li = li.array() - h * static_cast<double>(i);
        lj = lj.array() - h * static_cast<double>(j);
      }
      result = li.asDiagonal() * block - block * lj.asDiagonal();
      if (result.isZero(0.0)) continue;
    }
    out.blocks[key] = std::move(result);
  }
  return out;
}

inline InstanceDigest digest_of(const HermitianOperator& d, std::uint64_t seed = 0,
                                std::uint64_t trial = 0) {
  InstanceDigest out;
  out.seed = seed;
  out.trial = trial;
  out.dim = d.dim();
  out.spectral_min = d.eigenvalues(0);
  out.spectral_max = d.eigenvalues(d.eigenvalues.size() - 1);
  return out;
}

// ||S * X|| <= ||S||_r ||X||_c: LHS assembled exactly; the row factor is the
// multiplier's analytic bound when it has one, else the numeric row norm
// over the occupied window.
inline InequalityReport bennett_bound_check(const ScalarMultiplier& s, const BlockMatrix& x) {
  if (!x.binning) throw Error("bennett_bound_check: block matrix has no binning");
  const double lhs = operator_norm(assemble(schur_scalar_product(s, x)));
  const double col = column_norm_blocks(x);
  const double row = s.analytic_row_bound ? *s.analytic_row_bound
                                          : row_norm(s, x.binning->occupied);
  std::map<std::string, double> params;
  params["row_factor"] = row;
  params["column_norm"] = col;
  params["used_analytic_bound"] = s.analytic_row_bound ? 1.0 : 0.0;
  return make_report(TheoremId::Bennett, std::move(params), lhs, row * col,
                     digest_of(x.binning->D));
}

}  // namespace schurcomm
