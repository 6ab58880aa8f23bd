#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "schurcomm/block_schur.hpp"
#include "schurcomm/inequalities.hpp"
#include "schurcomm/operator_core.hpp"

namespace schurcomm {

// Per-trial RNG stream: the engine state depends only on (seed, trial), so
// a campaign produces identical records no matter how trials are scheduled
// across workers. splitmix64 whitening keeps nearby trial indices apart.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(mix_seed(seed, trial));
}

// Uniform and normal draws are hand-rolled from raw engine output: the
// standard distributions are implementation-defined, and reports promise
// bit-reproducibility for a fixed (config, seed).
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  if (lo > hi) throw Error("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

// Standard complex normal via Box-Muller (E|z|^2 = 1).
inline Complex complex_gaussian(std::mt19937_64& rng) {
  double u = uniform_unit(rng);
  while (u == 0.0) u = uniform_unit(rng);
  const double v = uniform_unit(rng);
  const double r = std::sqrt(-std::log(u));  // E r^2 = 1 after the 2pi spin
  const double angle = 2.0 * std::numbers::pi * v;
  return Complex(r * std::cos(angle), r * std::sin(angle));
}

// Dense matrix of iid standard complex gaussians.
inline Matrix ginibre(int dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = complex_gaussian(rng);
  }
  return g;
}

// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal's
// phases pushed into Q (otherwise the QR convention biases the measure).
inline Matrix haar_unitary(int dim, std::mt19937_64& rng) {
  Matrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

// D with eigenvalues uniform on [-radius, radius] in a Haar-random basis.
// Uniform eigenvalues keep many spectral bins occupied.
inline HermitianOperator random_hermitian(int dim, double radius, std::mt19937_64& rng) {
  if (dim < 1) throw Error("random_hermitian: dimension must be >= 1");
  if (!(radius > 0.0)) throw Error("random_hermitian: radius must be positive");
  std::vector<double> lambda(static_cast<size_t>(dim));
  for (auto& l : lambda) l = uniform_range(rng, -radius, radius);
  std::sort(lambda.begin(), lambda.end());
  RealVector ev = Eigen::Map<RealVector>(lambda.data(), dim);
  return hermitian_from_eigensystem(haar_unitary(dim, rng), ev);
}

// Positive instance with the kernel and beta placed by construction:
// an optional exact-zero eigenvalue, one eigenvalue exactly at beta, and
// the rest uniform on [beta, radius]. The exactness is what keeps the
// kernel/beta dichotomy unambiguous under the 1e-12*||D|| guard.
inline PositiveInstance random_positive_instance(int dim, double radius, double beta,
                                                 bool with_kernel, std::mt19937_64& rng) {
  if (dim < 2) throw Error("random_positive_instance: dimension must be >= 2");
  if (!(beta > 0.0) || beta > radius) {
    throw Error("random_positive_instance: need 0 < beta <= radius");
  }
  std::vector<double> lambda;
  lambda.reserve(static_cast<size_t>(dim));
  if (with_kernel) lambda.push_back(0.0);
  lambda.push_back(beta);
  while (static_cast<int>(lambda.size()) < dim) {
    lambda.push_back(uniform_range(rng, beta, radius));
  }
  std::sort(lambda.begin(), lambda.end());
  RealVector ev = Eigen::Map<RealVector>(lambda.data(), dim);
  HermitianOperator d = hermitian_from_eigensystem(haar_unitary(dim, rng), ev);
  std::vector<int> kernel;
  if (with_kernel) kernel.push_back(0);
  return make_positive_instance(std::move(d), std::move(kernel));
}

// Dense Ginibre y normalized to ||y|| = 1.
inline BoundedOperator random_dense_y(int dim, std::mt19937_64& rng) {
  Matrix y = ginibre(dim, rng);
  const double norm = operator_norm(y);
  if (!(norm > 0.0)) throw Error("random_dense_y: degenerate draw");
  return BoundedOperator{y / norm};
}

// Band matrix (|i-j| <= bandwidth) of gaussians, normalized to ||y|| = 1.
// Narrow bands stress the multiplier tails across many bins.
inline BoundedOperator random_band_y(int dim, int bandwidth, std::mt19937_64& rng) {
  if (bandwidth < 0) throw Error("random_band_y: bandwidth must be >= 0");
  Matrix y = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = std::max(0, i - bandwidth); j <= std::min(dim - 1, i + bandwidth); ++j) {
      y(i, j) = complex_gaussian(rng);
    }
  }
  const double norm = operator_norm(y);
  if (!(norm > 0.0)) throw Error("random_band_y: degenerate draw");
  return BoundedOperator{y / norm};
}

// A scalar multiplier with iid gaussian entries on window x window and zeros
// outside, materialized up front so the entry function stays pure.
inline ScalarMultiplier random_window_multiplier(const std::vector<long long>& window,
                                                 std::mt19937_64& rng) {
  if (window.empty()) throw Error("random_window_multiplier: empty window");
  auto table = std::make_shared<std::map<std::pair<long long, long long>, Complex>>();
  for (long long i : window) {
    for (long long j : window) (*table)[{i, j}] = complex_gaussian(rng);
  }
  ScalarMultiplier s;
  s.name = "random_window";
  s.entry = [table](long long i, long long j) -> Complex {
    auto it = table->find({i, j});
    return it == table->end() ? Complex(0.0, 0.0) : it->second;
  };
  return s;
}

}  // namespace schurcomm
