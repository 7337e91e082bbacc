#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schurcomp/completion.hpp"

namespace schurcomp {

/// The indefinite inner product [x, y] = <J x, y> on C^{n+m} with
/// J = diag(I_n, -I_m).
struct IndefiniteGram {
  Index n_plus = 0;
  Index n_minus = 0;

  Index dimension() const { return n_plus + n_minus; }
  RealVector signature() const;
  ComplexMatrix matrix() const;
  /// sum_{i<n} x_i conj(y_i) - sum_{j<m} x_{n+j} conj(y_{n+j})
  Complex inner(const ComplexVector& x, const ComplexVector& y) const;
};

/// Upper/lower frame-bound estimates that only need the singular values of K
/// and the eigenvalues of A and D.
struct AprioriBounds {
  double beta_minus_upper = 0.0;  // sigma_1^2 lambda_1 + mu_m
  double alpha_plus_lower = 0.0;  // (1 - sigma_1^2) lambda_n
  /// (1 - s^2) lambda_1 with s the n-th singular value of K counted with
  /// zeros, i.e. lambda_max(I - KK*) lambda_1.
  double beta_plus_upper = 0.0;
  /// (1 - sigma_l^2) lambda_1 with sigma_l the smallest positive singular
  /// value. Equals beta_plus_upper when rank K = n; when rank K < n it can
  /// fall below beta_plus, so it is only asserted in the full-rank case.
  double beta_plus_upper_positive_sv = 0.0;
  bool k_full_row_rank = false;
  /// min{lambda_i + mu_i (i < r), lambda_n}; bounds alpha_plus from above
  /// for the constructed K regardless of epsilon.
  double alpha_plus_upper = 0.0;
  /// min{lambda_i + mu_i (i < r), mu_{r+1} if r < m}.
  double alpha_minus_upper = 0.0;
};

/// Frame bounds read off the epsilon schedule:
///   alpha+ = min{(1-eps_i) lambda_i, untouched lambdas}
///   beta+  = max{(1-eps_i) lambda_i, untouched lambdas}
///   alpha- = min{eps_i lambda_i + mu_i, untouched mus}
///   beta-  = max{eps_i lambda_i + mu_i, untouched mus}
/// where "untouched" are lambda_{r+1..n} and mu_{r+1..m}.
struct ExplicitBounds {
  double alpha_plus = 0.0;
  double beta_plus = 0.0;
  double alpha_minus = 0.0;
  double beta_minus = 0.0;
};

struct JFrameReport {
  bool is_jframe_matrix = false;
  std::vector<std::string> witness_failures;
  ComplexMatrix k;  // recovered from the top-right block
  double k_norm = 0.0;
  double alpha_plus = 0.0;
  double beta_plus = 0.0;
  double alpha_minus = 0.0;
  double beta_minus = 0.0;
  std::optional<ExplicitBounds> explicit_bounds;
  std::optional<AprioriBounds> apriori;
};

/// A finite family with signatures sigma_i = sgn [f_i, f_i].
struct JFrameFamily {
  Index n = 0;
  Index m = 0;
  std::vector<ComplexVector> vectors;
  std::vector<int> signatures;
};

inline constexpr double kJFrameTol = 1e-10;

/// Recovers K from top-right = -A K and checks that A is positive definite,
/// ||K|| < 1, D is Hermitian and D + K*AK is positive definite. Failing
/// conditions are listed in witness_failures. Throws kBlockInconsistent when
/// the bottom-left block differs from K*A.
JFrameReport is_jframe_matrix(const ComplexMatrix& s, Index n, Index m, double tol = kJFrameTol);

struct ExistenceVerdict {
  bool exists = false;
  std::vector<Index> violated_indices;  // zero-based i < r - p
  Index r = 0;
  Index p = 0;
};

/// J-frame existence for A positive definite: r <= n and
/// lambda_i + mu_i > 0 for every nonpositive mu_i. Indices with mu_i = 0
/// satisfy the scalar condition automatically. Throws kANotPositiveDefinite.
ExistenceVerdict jframe_existence(const HermitianEigenSystem& eigs_a,
                                  const HermitianEigenSystem& eigs_d, double zero_tol);

struct SplitOperator {
  ComplexMatrix plus;   // [[A, -AK], [K*A, -K*AK]]
  ComplexMatrix minus;  // diag(0, D + K*AK)
};

SplitOperator split_s(const CompletionCertificate& cert);

/// (I - KK*)^{1/2} A (I - KK*)^{1/2}.
ComplexMatrix positive_part_operator(const ComplexMatrix& a, const ComplexMatrix& k);

/// Exact and a-priori frame bounds. Requires a J-frame matrix built with
/// kappa = 1 in definite mode, otherwise kNotJFrame.
JFrameReport frame_bounds(const CompletionCertificate& cert, const BlockSpectra& spectra);

/// Square-root synthesis: negative vectors (0, c_j) with c_j the columns of
/// (D + K*AK)^{1/2}; positive vectors (u_i, K* u_i) with u_i the columns of
/// (I - KK*)^{-1/2} C^{1/2}. The family's J-frame operator equals cert.s.
/// Throws kNotJFrame or kContractionSingular (1 - ||K||^2 < 1e-10).
JFrameFamily synthesize_jframe(const CompletionCertificate& cert);

/// Matrix of f -> sum_i sigma_i [f, f_i] f_i.
ComplexMatrix jframe_operator(const JFrameFamily& family);

/// sum_i sigma_i [f, S^{-1} f_i] f_i.
ComplexVector reconstruct_vector(const JFrameFamily& family, const ComplexMatrix& s,
                                 const ComplexVector& f);

}  // namespace schurcomp
