#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <utility>

#include "schurcomm/errors.hpp"

namespace schurcomm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// A general bounded operator on C^dim: just a dense complex matrix.
// Houses y, higher commutators, and g(D) for complex-valued g.
struct BoundedOperator {
  Matrix matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

// A Hermitian matrix together with its eigendecomposition:
//   matrix = eigenvectors * diag(eigenvalues) * eigenvectors^*
// with eigenvalues sorted ascending and unitary eigenvectors.
// Plays the role of the self-adjoint operator D; immutable once built.
struct HermitianOperator {
  Matrix matrix;
  RealVector eigenvalues;
  Matrix eigenvectors;

  int dim() const { return static_cast<int>(matrix.rows()); }

  BoundedOperator bounded() const { return BoundedOperator{matrix}; }
};

// Largest singular value. Realizes the operator norm used throughout.
inline double operator_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

inline double operator_norm(const BoundedOperator& x) { return operator_norm(x.matrix); }

inline double operator_norm(const HermitianOperator& x) { return operator_norm(x.matrix); }

// Independent norm oracle: sqrt of the largest eigenvalue of x^* x.
// Deliberately a different algorithm than operator_norm so the two can
// cross-check each other.
inline double gram_norm_oracle(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Matrix gram = x.adjoint() * x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues()(es.eigenvalues().size() - 1);
  return std::sqrt(std::max(0.0, top));
}

inline double gram_norm_oracle(const BoundedOperator& x) { return gram_norm_oracle(x.matrix); }

namespace detail {

inline double max_asymmetry(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

// Validates Hermiticity (entrywise, relative to the operator norm), then
// eigendecomposes. The stored matrix is the symmetrization (m + m^*)/2, so
// the Hermitian invariant holds exactly.
inline HermitianOperator make_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "make_hermitian: matrix is " << m.rows() << "x" << m.cols() << ", not square";
    throw NotSquare(os.str());
  }
  if (m.rows() == 0) throw NotSquare("make_hermitian: empty matrix");
  const double scale = operator_norm(m);
  const double asym = detail::max_asymmetry(m);
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << "make_hermitian: max |m - m^*| entry = " << asym << " exceeds 1e-12 * ||m|| = "
       << 1e-12 * scale;
    throw NotHermitian(os.str());
  }
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw Error("make_hermitian: eigensolver failed");
  return HermitianOperator{std::move(sym), es.eigenvalues(), es.eigenvectors()};
}

// Builds U diag(lambda) U^* from a trusted eigensystem without re-solving.
// Used where the eigenbasis must be preserved bit-for-bit (discrete
// approximants, designed instances with exact-zero eigenvalues).
// Requires lambda ascending and U unitary.
inline HermitianOperator hermitian_from_eigensystem(const Matrix& u, const RealVector& lambda) {
  const auto n = u.rows();
  if (u.cols() != n || lambda.size() != n) {
    throw DimMismatch("hermitian_from_eigensystem: inconsistent shapes");
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (lambda(i) > lambda(i + 1)) {
      throw Error("hermitian_from_eigensystem: eigenvalues not ascending");
    }
  }
  double unitary_defect = (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitary_defect > 1e-10) {
    throw Error("hermitian_from_eigensystem: basis not unitary (defect " +
                std::to_string(unitary_defect) + ")");
  }
  Matrix m = u * lambda.asDiagonal() * u.adjoint();
  m = 0.5 * (m + m.adjoint());
  return HermitianOperator{std::move(m), lambda, u};
}

// Functional calculus: g applied to the spectrum, U diag(g(lambda_i)) U^*.
// g may be complex-valued; a NaN/Inf value of g at an eigenvalue is treated
// as "undefined there".
inline BoundedOperator apply_function(const HermitianOperator& d,
                                      const std::function<Complex(double)>& g) {
  const auto n = d.eigenvalues.size();
  Eigen::VectorXcd gl(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex v = g(d.eigenvalues(i));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "apply_function: function undefined at eigenvalue " << d.eigenvalues(i);
      throw FunctionUndefinedAtSpectrum(os.str());
    }
    gl(i) = v;
  }
  return BoundedOperator{d.eigenvectors * gl.asDiagonal() * d.eigenvectors.adjoint()};
}

// [a,b] = ab - ba.
inline BoundedOperator commutator(const BoundedOperator& a, const BoundedOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimMismatch("commutator: dims " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
  return BoundedOperator{a.matrix * b.matrix - b.matrix * a.matrix};
}

inline BoundedOperator commutator(const HermitianOperator& a, const BoundedOperator& b) {
  return commutator(a.bounded(), b);
}

// k-fold nested commutator ad_a^k(y) = [a,[a,...,[a,y]...]]; k = 0 returns y.
// The derivation delta = i ad_D has ||delta^k(y)|| = ||ad_D^k(y)||, so all
// reported norms use the ad form.
inline BoundedOperator iterated_commutator(const BoundedOperator& a, const BoundedOperator& y,
                                           int k) {
  if (k < 0) throw Error("iterated_commutator: negative order");
  if (a.dim() != y.dim()) {
    throw DimMismatch("iterated_commutator: dims " + std::to_string(a.dim()) + " vs " +
                      std::to_string(y.dim()));
  }
  BoundedOperator cur = y;
  for (int i = 0; i < k; ++i) {
    cur.matrix = a.matrix * cur.matrix - cur.matrix * a.matrix;
  }
  return cur;
}

inline BoundedOperator iterated_commutator(const HermitianOperator& d, const BoundedOperator& y,
                                           int k) {
  return iterated_commutator(d.bounded(), y, k);
}

// ||ad_D^k(y)|| for k = 0..kmax in one sweep.
inline std::vector<double> commutator_norms(const HermitianOperator& d, const BoundedOperator& y,
                                            int kmax) {
  std::vector<double> norms;
  norms.reserve(static_cast<size_t>(kmax) + 1);
  BoundedOperator cur = y;
  norms.push_back(operator_norm(cur));
  for (int k = 1; k <= kmax; ++k) {
    cur.matrix = d.matrix * cur.matrix - cur.matrix * d.matrix;
    norms.push_back(operator_norm(cur));
  }
  return norms;
}

}  // namespace schurcomm
