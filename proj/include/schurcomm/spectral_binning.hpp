#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "schurcomm/operator_core.hpp"

namespace schurcomm {

// The unique n with h(n - 1/2) <= lambda < h(n + 1/2), i.e. the half-open
// unit-grid convention: a point sitting exactly on n + 1/2 belongs to bin
// n + 1. No snapping of near-boundary values; the raw rule applies.
inline long long bin_index(double lambda, double grid_length = 1.0) {
  return static_cast<long long>(std::floor(lambda / grid_length + 0.5));
}

// Spectral projections e_n of D onto the grid intervals [n-1/2, n+1/2),
// the discrete approximant Dbar = sum n e_n, and the perturbations
//   b = D - Dbar          (||b|| <= grid/2)
//   c = |D| - |Dbar|      (||c|| <= grid/2).
// Everything is expressed in D's own eigenbasis, so b and c are diagonal
// there and D, Dbar, b, c all commute.
//
// grid_length != 1 is for exploration only: the inequality checkers require
// grid 1 because their constants are derived for that normalization.
struct SpectralBinning {
  HermitianOperator D;
  double grid_length = 1.0;
  // bin label -> eigenvector indices (ascending eigenvalues make each bin a
  // contiguous index range; empty bins are dropped)
  std::map<long long, std::vector<int>> bins;
  std::vector<long long> occupied;
  HermitianOperator Dbar;
  BoundedOperator b;
  BoundedOperator c;

  int dim() const { return D.dim(); }

  bool has(long long n) const { return bins.count(n) != 0; }

  int bin_size(long long n) const {
    auto it = bins.find(n);
    return it == bins.end() ? 0 : static_cast<int>(it->second.size());
  }

  // First eigenvector index of the bin (bins are contiguous ranges).
  int bin_offset(long long n) const {
    auto it = bins.find(n);
    if (it == bins.end()) throw Error("bin_offset: bin " + std::to_string(n) + " is empty");
    return it->second.front();
  }

  // Matrix of the spectral projection e_n in the standard basis.
  Matrix projection(long long n) const {
    auto it = bins.find(n);
    if (it == bins.end()) return Matrix::Zero(dim(), dim());
    const auto& idx = it->second;
    Matrix cols = D.eigenvectors.middleCols(idx.front(), static_cast<Eigen::Index>(idx.size()));
    return cols * cols.adjoint();
  }
};

using BinningPtr = std::shared_ptr<const SpectralBinning>;

inline BinningPtr build_binning(const HermitianOperator& d, double grid_length = 1.0) {
  if (!(grid_length > 0.0)) throw Error("build_binning: grid length must be positive");
  auto binning = std::make_shared<SpectralBinning>();
  binning->D = d;
  binning->grid_length = grid_length;

  const int n = d.dim();
  RealVector dbar_eigen(n);
  RealVector b_eigen(n);
  RealVector c_eigen(n);
  for (int i = 0; i < n; ++i) {
    const double lambda = d.eigenvalues(i);
    const long long bin = bin_index(lambda, grid_length);
    binning->bins[bin].push_back(i);
    const double approx = grid_length * static_cast<double>(bin);
    dbar_eigen(i) = approx;
    b_eigen(i) = lambda - approx;
    c_eigen(i) = std::abs(lambda) - std::abs(approx);
  }
  binning->occupied.reserve(binning->bins.size());
  for (const auto& [bin, idx] : binning->bins) binning->occupied.push_back(bin);

  // lambda ascending => bin labels nondecreasing => contiguous index ranges
  binning->Dbar = hermitian_from_eigensystem(d.eigenvectors, dbar_eigen);
  const Matrix& u = d.eigenvectors;
  binning->b = BoundedOperator{u * b_eigen.asDiagonal() * u.adjoint()};
  binning->c = BoundedOperator{u * c_eigen.asDiagonal() * u.adjoint()};
  return binning;
}

}  // namespace schurcomm
