#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "schurcomp/errors.hpp"

namespace schurcomp {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class EigenOrder { kNonincreasing, kNondecreasing };

/// Eigenvalues of a Hermitian matrix with a unitary matrix of eigenvectors.
/// Column i of `vectors` pairs with `values[i]`; `values` is sorted per `order`.
/// For repeated eigenvalues any orthonormal basis of the eigenspace may be
/// returned.
struct HermitianEigenSystem {
  RealVector values;
  ComplexMatrix vectors;
  EigenOrder order = EigenOrder::kNonincreasing;

  Index size() const { return values.size(); }
};

/// Sign counts of a Hermitian spectrum. Eigenvalues in [-zero_tol, zero_tol]
/// count as zero.
struct InertiaCounts {
  Index positive = 0;
  Index zero = 0;
  Index negative = 0;
  double zero_tol = 0.0;

  Index dimension() const { return positive + zero + negative; }
  Index nonpositive() const { return zero + negative; }
};

/// Positive singular values sigma_1 >= ... >= sigma_l > 0.
struct SingularProfile {
  std::vector<double> values;

  Index rank() const { return static_cast<Index>(values.size()); }
  double norm() const { return values.empty() ? 0.0 : values.front(); }
};

/// The four blocks of S = [[A, B], [C, D]].
struct BlockMatrix {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  ComplexMatrix d;
};

inline constexpr double kDefaultHermitianTol = 1e-10;

/// Spectral norm (largest singular value); 0 for an empty matrix.
double spectral_norm(const ComplexMatrix& m);

/// 1e-9 * max(1, ||M||).
double default_zero_tol(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double hermitian_tol = kDefaultHermitianTol);

/// Throws kNotSquare or kNotHermitian when the symmetry test
/// ||M - M*|| <= hermitian_tol * max(1, ||M||) fails.
HermitianEigenSystem eigendecompose_hermitian(const ComplexMatrix& m, EigenOrder order,
                                              double hermitian_tol = kDefaultHermitianTol);

InertiaCounts inertia(const HermitianEigenSystem& sys, double zero_tol);

/// rank_tol < 0 selects 1e-12 * sigma_1.
SingularProfile singular_values(const ComplexMatrix& m, double rank_tol = -1.0);

/// Moore-Penrose inverse; singular values below pinv_tol are treated as zero.
/// pinv_tol < 0 selects 1e-12 * sigma_1.
ComplexMatrix pseudo_inverse(const ComplexMatrix& m, double pinv_tol = -1.0);

/// D - C A^+ B. Throws kDimensionMismatch for inconsistent blocks.
ComplexMatrix schur_complement(const BlockMatrix& blocks, double pinv_tol = -1.0);

/// Splits a square matrix after the leading n rows/columns.
BlockMatrix split_blocks(const ComplexMatrix& s, Index n);
ComplexMatrix assemble_blocks(const BlockMatrix& blocks);

/// Rebuilds Q diag(values) Q*.
ComplexMatrix reconstruct(const HermitianEigenSystem& sys);

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues in [-clamp_tol, 0) are clamped to zero; anything more negative
/// raises kNotHermitian.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m, double clamp_tol = -1.0);

/// Inverse principal square root; raises kContractionSingular when the
/// smallest eigenvalue is below floor.
ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& m, double floor);

/// Hermitian part (M + M*) / 2, used to symmetrize products that are
/// Hermitian in exact arithmetic.
inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

}  // namespace schurcomp
