#include "schurcomp/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace schurcomp {

double default_pair_tol(const ComplexMatrix& a, const ComplexMatrix& d) {
  return 1e-9 * std::max(1.0, spectral_norm(a) + spectral_norm(d));
}

BlockSpectra analyze_blocks(const ComplexMatrix& a, const ComplexMatrix& d, double zero_tol) {
  BlockSpectra s;
  s.a = a;
  s.d = d;
  s.eigs_a = eigendecompose_hermitian(a, EigenOrder::kNonincreasing);
  s.eigs_d = eigendecompose_hermitian(d, EigenOrder::kNondecreasing);
  s.zero_tol = zero_tol < 0.0 ? default_pair_tol(a, d) : zero_tol;
  s.inertia_a = inertia(s.eigs_a, s.zero_tol);
  s.inertia_d = inertia(s.eigs_d, s.zero_tol);
  return s;
}

FeasibilityVerdict check_feasible(const HermitianEigenSystem& eigs_a,
                                  const HermitianEigenSystem& eigs_d, double kappa, Mode mode,
                                  double zero_tol) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::kBadKappa, "kappa must be positive, got " + std::to_string(kappa));
  }
  if (eigs_a.order != EigenOrder::kNonincreasing || eigs_d.order != EigenOrder::kNondecreasing) {
    throw Error(ErrorCode::kDimensionMismatch,
                "A eigenvalues must be nonincreasing and D eigenvalues nondecreasing");
  }
  const InertiaCounts ia = inertia(eigs_a, zero_tol);
  const InertiaCounts id = inertia(eigs_d, zero_tol);

  FeasibilityVerdict v;
  v.mode = mode;
  v.kappa = kappa;
  v.k = ia.positive;
  v.r = id.nonpositive();
  v.p = id.zero;
  v.zero_tol = zero_tol;
  v.min_margin = std::numeric_limits<double>::infinity();

  const Index scope = v.r - v.p;
  v.rank_condition_ok = mode == Mode::kDefinite ? v.r <= v.k : scope <= v.k;

  const double k2 = kappa * kappa;
  const Index n = eigs_a.size();
  for (Index i = 0; i < scope; ++i) {
    if (i >= n) {
      // No lambda_i to pair with mu_i.
      v.violated_indices.push_back(i);
      continue;
    }
    const double margin = k2 * eigs_a.values(i) + eigs_d.values(i);
    v.min_margin = std::min(v.min_margin, margin);
    const bool ok = mode == Mode::kDefinite ? margin > zero_tol : margin >= -zero_tol;
    if (!ok) v.violated_indices.push_back(i);
  }
  v.feasible = v.rank_condition_ok && v.violated_indices.empty();
  return v;
}

FeasibilityVerdict check_feasible(const BlockSpectra& spectra, double kappa, Mode mode) {
  return check_feasible(spectra.eigs_a, spectra.eigs_d, kappa, mode, spectra.zero_tol);
}

namespace {

// Orthonormal basis for the intersection of span(q1) and span(q2), both with
// orthonormal columns in C^m. At least `min_dim` directions are returned (the
// dimension count guarantees that many); any further direction whose
// distance from span(q1) is below tol is included too.
ComplexMatrix intersect_subspaces(const ComplexMatrix& q1, const ComplexMatrix& q2, Index min_dim,
                                  double tol) {
  const Index m = q2.rows();
  const ComplexMatrix complement = ComplexMatrix::Identity(m, m) - q1 * q1.adjoint();
  const ComplexMatrix residual = complement * q2;
  Eigen::JacobiSVD<ComplexMatrix> svd(residual, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const Index d2 = q2.cols();
  // JacobiSVD returns min(rows, cols) singular values; the remaining right
  // singular vectors (if d2 > m) belong to the kernel exactly.
  Index count = 0;
  for (Index j = d2 - 1; j >= 0; --j) {
    const double s = j < sv.size() ? sv(j) : 0.0;
    if (count < min_dim || s <= tol) {
      ++count;
    } else {
      break;
    }
  }
  return q2 * svd.matrixV().rightCols(count);
}

}  // namespace

std::optional<InfeasibilityWitness> infeasibility_witness(const ComplexMatrix& a,
                                                          const ComplexMatrix& d,
                                                          const ComplexMatrix& k, Mode mode,
                                                          double zero_tol) {
  if (a.rows() != a.cols() || d.rows() != d.cols() || k.rows() != a.rows() ||
      k.cols() != d.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "need A n x n, D m x m, K n x m");
  }
  const BlockSpectra spectra = analyze_blocks(a, d, zero_tol);
  const double tol = spectra.zero_tol;
  const Index m = spectra.m();
  const ComplexMatrix schur = hermitian_part(d + k.adjoint() * a * k);
  const auto schur_eigs = eigendecompose_hermitian(schur, EigenOrder::kNondecreasing);

  const Index kpos = spectra.k();
  const Index obstruction_dim = mode == Mode::kDefinite ? spectra.r() : spectra.r() - spectra.p();

  if (obstruction_dim <= kpos) {
    if (m == 0) return std::nullopt;
    const double lowest = schur_eigs.values(0);
    const bool fails = mode == Mode::kDefinite ? lowest <= tol : lowest < -tol;
    if (!fails) return std::nullopt;
    return InfeasibilityWitness{schur_eigs.vectors.col(0), WitnessKind::kThisK, lowest};
  }

  // |A| = U |Lambda| U*; A + |A| keeps twice the positive part of A.
  const auto& ea = spectra.eigs_a;
  const ComplexMatrix abs_a =
      ea.vectors * ea.values.cwiseAbs().cast<Complex>().asDiagonal() * ea.vectors.adjoint();
  const ComplexMatrix gram = hermitian_part(k.adjoint() * (a + abs_a) * k);
  const auto gram_eigs = eigendecompose_hermitian(gram, EigenOrder::kNondecreasing);
  const double gram_tol = tol * std::max(1.0, spectral_norm(gram));
  // rank(K*(A + |A|)K) <= k, so at least m - k directions are in the kernel.
  Index d1 = std::max<Index>(0, m - kpos);
  while (d1 < m && gram_eigs.values(d1) <= gram_tol) ++d1;
  const ComplexMatrix kernel_basis = gram_eigs.vectors.leftCols(d1);

  // Eigenvectors of D for nonpositive (definite) or negative (semidefinite)
  // eigenvalues: the leading columns in nondecreasing order.
  const ComplexMatrix d_basis = spectra.eigs_d.vectors.leftCols(obstruction_dim);

  const Index min_dim = std::max<Index>(1, d1 + obstruction_dim - m);
  const ComplexMatrix z = intersect_subspaces(kernel_basis, d_basis, min_dim, tol);

  const ComplexMatrix restricted = hermitian_part(z.adjoint() * schur * z);
  const auto restricted_eigs = eigendecompose_hermitian(restricted, EigenOrder::kNondecreasing);
  ComplexVector v = z * restricted_eigs.vectors.col(0);
  v.normalize();
  const double form = (v.adjoint() * schur * v)(0, 0).real();
  return InfeasibilityWitness{v, WitnessKind::kRankObstruction, form};
}

std::optional<double> minimal_kappa(const BlockSpectra& spectra, Mode mode, double rel_tol) {
  auto feasible = [&](double kappa) { return check_feasible(spectra, kappa, mode).feasible; };
  const auto probe = check_feasible(spectra, 1.0, mode);
  if (!probe.rank_condition_ok) return std::nullopt;
  if (spectra.r() - spectra.p() == 0) return 0.0;

  double hi = 1.0;
  int guard = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (++guard > 200) return std::nullopt;
  }
  double lo = 0.0;
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace schurcomp
