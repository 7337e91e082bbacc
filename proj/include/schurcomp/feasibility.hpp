#pragma once

#include <optional>
#include <vector>

#include "schurcomp/hermitian.hpp"

namespace schurcomp {

/// Whether the Schur complement D + K*AK must be positive definite
/// (with ||K|| < kappa) or only positive semidefinite (with ||K|| <= kappa).
enum class Mode { kDefinite, kSemidefinite };

/// Spectral data of the pair (A, D) in the conventions the completion uses:
/// A's eigenvalues nonincreasing (lambda_1 >= ... >= lambda_n), D's
/// nondecreasing (mu_1 <= ... <= mu_m).
///
///   k = number of positive eigenvalues of A
///   r = number of nonpositive eigenvalues of D
///   p = dim ker D
struct BlockSpectra {
  ComplexMatrix a;
  ComplexMatrix d;
  HermitianEigenSystem eigs_a;
  HermitianEigenSystem eigs_d;
  InertiaCounts inertia_a;
  InertiaCounts inertia_d;
  double zero_tol = 0.0;

  Index n() const { return a.rows(); }
  Index m() const { return d.rows(); }
  Index k() const { return inertia_a.positive; }
  Index r() const { return inertia_d.nonpositive(); }
  Index p() const { return inertia_d.zero; }
  double lambda(Index i) const { return eigs_a.values(i); }
  double mu(Index i) const { return eigs_d.values(i); }
};

/// 1e-9 * max(1, ||A|| + ||D||).
double default_pair_tol(const ComplexMatrix& a, const ComplexMatrix& d);

/// Eigendecomposes A and D and classifies their inertia with zero_tol
/// (zero_tol < 0 selects default_pair_tol).
BlockSpectra analyze_blocks(const ComplexMatrix& a, const ComplexMatrix& d,
                            double zero_tol = -1.0);

struct FeasibilityVerdict {
  Mode mode = Mode::kDefinite;
  bool feasible = false;
  double kappa = 1.0;
  /// Zero-based indices i < r - p with the scalar condition
  /// kappa^2 lambda_i + mu_i > 0 (>= 0 when semidefinite) failing.
  std::vector<Index> violated_indices;
  /// r <= k (definite) or r - p <= k (semidefinite).
  bool rank_condition_ok = false;
  Index k = 0;
  Index r = 0;
  Index p = 0;
  double zero_tol = 0.0;
  /// Smallest slack kappa^2 lambda_i + mu_i over i < r - p; +inf when the
  /// index set is empty. Reported as a conditioning hint only.
  double min_margin = 0.0;
};

/// Decides whether some K with ||K|| < kappa (<= kappa) makes D + K*AK
/// positive definite (semidefinite). Strict inequalities are realized as
/// "> zero_tol" and non-strict ones as ">= -zero_tol".
FeasibilityVerdict check_feasible(const HermitianEigenSystem& eigs_a,
                                  const HermitianEigenSystem& eigs_d, double kappa, Mode mode,
                                  double zero_tol);

FeasibilityVerdict check_feasible(const BlockSpectra& spectra, double kappa, Mode mode);

enum class WitnessKind {
  /// r > k (r - p > k): no K at all can succeed; v lies in
  /// ker(K*(A + |A|)K) intersected with the nonpositive (negative) eigenspace
  /// of D.
  kRankObstruction,
  /// The obstruction is absent but this particular K fails; v is an
  /// eigenvector of D + K*AK for its smallest eigenvalue.
  kThisK,
};

struct InfeasibilityWitness {
  ComplexVector v;  // unit norm
  WitnessKind kind = WitnessKind::kRankObstruction;
  double quadratic_form = 0.0;  // <(D + K*AK) v, v>
};

/// Returns a unit vector v with <(D + K*AK) v, v> <= zero_tol (< 0 up to
/// tolerance when semidefinite) showing that K does not complete (A, D).
/// Under the rank obstruction the vector comes from the subspace
/// intersection, chosen to minimize the Rayleigh quotient of D + K*AK.
/// Without the obstruction a witness is returned only if this K itself
/// fails; std::nullopt means K is a valid completion.
std::optional<InfeasibilityWitness> infeasibility_witness(const ComplexMatrix& a,
                                                          const ComplexMatrix& d,
                                                          const ComplexMatrix& k, Mode mode,
                                                          double zero_tol = -1.0);

/// Smallest kappa (to within rel_tol) at which check_feasible succeeds, found
/// by bisection on repeated feasibility checks. std::nullopt when the rank
/// condition fails, since no kappa helps then.
std::optional<double> minimal_kappa(const BlockSpectra& spectra, Mode mode,
                                    double rel_tol = 1e-12);

}  // namespace schurcomp
