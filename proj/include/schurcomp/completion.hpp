#pragma once

#include <vector>

#include "schurcomp/feasibility.hpp"
#include "schurcomp/hermitian.hpp"

namespace schurcomp {

/// Parameters epsilon_1..epsilon_r of the completion K = U E V*, where E
/// carries sqrt(epsilon_i) on its leading diagonal.
///
/// definite:     0 < eps_i < kappa^2 with eps_i lambda_i + mu_i > 0 for i < r-p,
///               0 <= eps_j < kappa^2 for r-p <= j < r
/// semidefinite: 0 < eps_i <= kappa^2 with eps_i lambda_i + mu_i >= 0 for i < r-p,
///               eps_j = 0 for r-p <= j < r
struct EpsilonSchedule {
  std::vector<double> epsilons;
  double kappa = 1.0;
  Mode mode = Mode::kDefinite;
};

/// The completed block matrix and what certifies it.
struct CompletionCertificate {
  ComplexMatrix a;
  ComplexMatrix d;
  ComplexMatrix e;      // n x m
  ComplexMatrix k;      // U E V*
  ComplexMatrix s;      // [[A, -AK], [K*A, D]]
  ComplexMatrix schur;  // D + K*AK
  EpsilonSchedule schedule;
  Index k_count = 0;  // positive eigenvalues of A
  Index r = 0;
  Index p = 0;
  double zero_tol = 0.0;

  Index n() const { return a.rows(); }
  Index m() const { return d.rows(); }
};

/// Midpoint parameters for a feasible (kappa, mode). For i < r-p the choice
/// lands strictly inside [-mu_i/lambda_i, min(alpha_i, kappa^2)) when that
/// interval is nonempty (real, diagonalizable spectrum); otherwise it falls
/// back to the midpoint of (alpha_i, kappa^2), or to kappa^2 itself when the
/// semidefinite condition is tight. For r-p <= j < r, mu_j = 0: definite mode
/// uses min(alpha_j, kappa^2) / 2 and semidefinite mode uses 0.
/// Throws kInfeasibleInput when check_feasible rejects the input.
EpsilonSchedule default_epsilons(const BlockSpectra& spectra, double kappa, Mode mode);

/// Throws kScheduleInvalid describing the first violated constraint.
void validate_schedule(const BlockSpectra& spectra, const EpsilonSchedule& schedule);

/// Assembles E, K, S and D + K*AK for arbitrary nonnegative epsilons without
/// checking the schedule constraints (root-locus sweeps step outside them).
CompletionCertificate assemble_completion(const BlockSpectra& spectra,
                                          const EpsilonSchedule& schedule);

/// validate_schedule followed by assemble_completion.
CompletionCertificate build_k(const BlockSpectra& spectra, const EpsilonSchedule& schedule);

}  // namespace schurcomp
