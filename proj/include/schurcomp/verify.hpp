#pragma once

#include <limits>
#include <string>
#include <vector>

#include "schurcomp/hermitian.hpp"

// Numerical oracles. Nothing here may depend on the closed-form spectrum
// prediction; the acceptance suite compares the two paths.

namespace schurcomp {

/// Eigenvalues of a general square matrix: Householder reduction to upper
/// Hessenberg form followed by single-shift complex QR with Wilkinson shifts
/// and deflation. Throws kNoConvergence after 100 * dim iterations.
std::vector<Complex> numeric_spectrum(const ComplexMatrix& m);

/// sigma_min(M - eta I) for each eta.
std::vector<double> spectrum_residuals(const ComplexMatrix& m, const std::vector<Complex>& etas);

struct SpectrumPair {
  Complex predicted;
  Complex numeric;
  double distance = 0.0;
};

struct SpectrumComparison {
  std::vector<SpectrumPair> pairs;
  double max_distance = 0.0;
  bool matched = false;
};

/// Greedy nearest-neighbour bijection: repeatedly pairs the closest
/// remaining (predicted, numeric) couple. Throws kCardinalityMismatch.
SpectrumComparison compare_spectra(const std::vector<Complex>& predicted,
                                   const std::vector<Complex>& numeric, double tol);

struct RankProbe {
  Index d1 = 0;  // nullity of S - eta I
  Index d2 = 0;  // nullity of (S - eta I)^2
};

inline constexpr double kNullityTol = 1e-8;

/// Nullities by singular-value thresholding: values below
/// rel_tol * sigma_max count as zero.
Index numeric_nullity(const ComplexMatrix& m, double rel_tol = kNullityTol);

RankProbe jordan_rank_probe(const ComplexMatrix& s, Complex eta, double rel_tol = kNullityTol);

/// [[I, 0], [C A^-1, I]] * [[A, 0], [0, D - C A^-1 B]] * [[I, A^-1 B], [0, I]]
struct AitkenFactors {
  ComplexMatrix lower;
  ComplexMatrix middle;
  ComplexMatrix upper;
};

/// Throws kSingularA when A is not invertible.
AitkenFactors aitken_factors(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ComplexMatrix& c, const ComplexMatrix& d);

struct InequalityCheck {
  bool ok = true;
  Index checked = 0;
  /// Largest violation lhs - rhs over all checked index pairs (negative when
  /// every pair holds with room to spare).
  double worst = -std::numeric_limits<double>::infinity();
};

/// Both Weyl families for Hermitian x, y of equal size:
///   l_j(x+y) <= l_i(x) + l_{j-i+1}(y)  for i <= j
///   l_j(x+y) >= l_i(x) + l_{j-i+n}(y)  for i >= j
/// with eigenvalues in nonincreasing order.
InequalityCheck check_weyl(const ComplexMatrix& x, const ComplexMatrix& y, double slack);

/// sigma_{i+j-1}(x y*) <= sigma_i(x) sigma_j(y) for i <= rank x, j <= rank y,
/// i+j-1 <= rank(x y*). x and y must have equal shape.
InequalityCheck check_singular_product(const ComplexMatrix& x, const ComplexMatrix& y,
                                       double slack);

/// l_j(K*AK) <= ||K||^2 l_j(A) for j <= min(k, m, rank(K*AK)), A Hermitian.
InequalityCheck check_congruence_bound(const ComplexMatrix& a, const ComplexMatrix& k,
                                       double slack);

struct IdentityReport {
  bool aitken_ok = false;
  double aitken_residual = 0.0;  // ||L M U - S|| / max(1, ||S||)
  bool determinant_ok = false;
  double determinant_residual = 0.0;  // |det S - det A det(S/A)| / max(tiny, |det S|)
  /// Weyl for (D, K*AK), singular products for (K*A, K*), congruence bound
  /// for (A, K). Only evaluated when A and D are Hermitian.
  bool hermitian_checks = false;
  InequalityCheck weyl;
  InequalityCheck singular_product;
  InequalityCheck congruence;

  bool all_ok() const;
};

struct IdentityTolerances {
  double aitken = 1e-10;
  double determinant = 1e-8;
  double inequality_slack = 1e-9;
};

/// Aitken factorization and the Schur determinant formula for S = [[A, B],
/// [C, D]], plus the eigenvalue inequalities on the Hermitian data.
IdentityReport check_identities(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ComplexMatrix& c, const ComplexMatrix& d,
                                const ComplexMatrix& k, const IdentityTolerances& tol = {});

}  // namespace schurcomp
