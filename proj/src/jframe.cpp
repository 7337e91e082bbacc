#include "schurcomp/jframe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schurcomp {

RealVector IndefiniteGram::signature() const {
  RealVector sig(dimension());
  sig.head(n_plus).setOnes();
  sig.tail(n_minus).setConstant(-1.0);
  return sig;
}

ComplexMatrix IndefiniteGram::matrix() const {
  return signature().cast<Complex>().asDiagonal();
}

Complex IndefiniteGram::inner(const ComplexVector& x, const ComplexVector& y) const {
  if (x.size() != dimension() || y.size() != dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "vector length differs from n + m");
  }
  Complex sum(0.0, 0.0);
  for (Index i = 0; i < n_plus; ++i) sum += x(i) * std::conj(y(i));
  for (Index j = n_plus; j < dimension(); ++j) sum -= x(j) * std::conj(y(j));
  return sum;
}

ComplexMatrix positive_part_operator(const ComplexMatrix& a, const ComplexMatrix& k) {
  const Index n = a.rows();
  const ComplexMatrix root = hermitian_sqrt(
      hermitian_part(ComplexMatrix::Identity(n, n) - k * k.adjoint()));
  return hermitian_part(root * a * root);
}

namespace {

double min_eigenvalue(const ComplexMatrix& h) {
  if (h.rows() == 0) return std::numeric_limits<double>::infinity();
  return eigendecompose_hermitian(h, EigenOrder::kNondecreasing).values(0);
}

void fill_exact_bounds(JFrameReport& report, const ComplexMatrix& a, const ComplexMatrix& k,
                       const ComplexMatrix& schur) {
  const auto minus = eigendecompose_hermitian(schur, EigenOrder::kNondecreasing);
  const auto plus =
      eigendecompose_hermitian(positive_part_operator(a, k), EigenOrder::kNondecreasing);
  report.alpha_minus = minus.values(0);
  report.beta_minus = minus.values(minus.size() - 1);
  report.alpha_plus = plus.values(0);
  report.beta_plus = plus.values(plus.size() - 1);
}

}  // namespace

JFrameReport is_jframe_matrix(const ComplexMatrix& s, Index n, Index m, double tol) {
  if (s.rows() != n + m || s.cols() != n + m) {
    throw Error(ErrorCode::kDimensionMismatch, "S must be (n+m) x (n+m)");
  }
  JFrameReport report;
  const BlockMatrix blocks = split_blocks(s, n);
  const double scale = std::max(1.0, spectral_norm(s));

  if (!is_hermitian(blocks.a)) {
    report.witness_failures.push_back("A is not Hermitian");
    return report;
  }
  const auto eigs_a = eigendecompose_hermitian(blocks.a, EigenOrder::kNondecreasing);
  const double a_scale = std::max(1.0, std::abs(eigs_a.values(n - 1)));
  if (!(eigs_a.values(0) > tol * a_scale)) {
    report.witness_failures.push_back("A is not positive definite");
    if (std::abs(eigs_a.values(0)) <= tol * a_scale) {
      report.witness_failures.push_back("A is singular; K cannot be recovered");
      return report;
    }
  }

  report.k = -blocks.a.partialPivLu().solve(blocks.b);
  const ComplexMatrix expected_c = report.k.adjoint() * blocks.a;
  if ((blocks.c - expected_c).norm() > tol * scale) {
    throw Error(ErrorCode::kBlockInconsistent, "bottom-left block differs from K*A");
  }
  report.k_norm = spectral_norm(report.k);
  if (!(report.k_norm < 1.0)) {
    report.witness_failures.push_back("K is not strictly contractive");
  }
  if (!is_hermitian(blocks.d)) {
    report.witness_failures.push_back("D is not Hermitian");
    return report;
  }
  const ComplexMatrix schur =
      hermitian_part(blocks.d + report.k.adjoint() * blocks.a * report.k);
  if (!(min_eigenvalue(schur) > tol * scale)) {
    report.witness_failures.push_back("D + K*AK is not positive definite");
  }
  report.is_jframe_matrix = report.witness_failures.empty();
  if (report.is_jframe_matrix) fill_exact_bounds(report, blocks.a, report.k, schur);
  return report;
}

ExistenceVerdict jframe_existence(const HermitianEigenSystem& eigs_a,
                                  const HermitianEigenSystem& eigs_d, double zero_tol) {
  const InertiaCounts ia = inertia(eigs_a, zero_tol);
  if (ia.positive != eigs_a.size()) {
    throw Error(ErrorCode::kANotPositiveDefinite, "A must be positive definite");
  }
  const InertiaCounts id = inertia(eigs_d, zero_tol);
  ExistenceVerdict verdict;
  verdict.r = id.nonpositive();
  verdict.p = id.zero;
  const Index n = eigs_a.size();
  for (Index i = 0; i < verdict.r - verdict.p; ++i) {
    if (i >= n || !(eigs_a.values(i) + eigs_d.values(i) > zero_tol)) {
      verdict.violated_indices.push_back(i);
    }
  }
  verdict.exists = verdict.r <= n && verdict.violated_indices.empty();
  return verdict;
}

SplitOperator split_s(const CompletionCertificate& cert) {
  const Index n = cert.n();
  const Index m = cert.m();
  const ComplexMatrix ak = cert.a * cert.k;
  const ComplexMatrix kak = cert.k.adjoint() * ak;
  SplitOperator split;
  split.plus = assemble_blocks({cert.a, -ak, cert.k.adjoint() * cert.a, -kak});
  split.minus = ComplexMatrix::Zero(n + m, n + m);
  split.minus.bottomRightCorner(m, m) = cert.d + kak;
  return split;
}

JFrameReport frame_bounds(const CompletionCertificate& cert, const BlockSpectra& spectra) {
  if (cert.schedule.mode != Mode::kDefinite) {
    throw Error(ErrorCode::kNotJFrame, "frame bounds need a definite-mode certificate");
  }
  JFrameReport report = is_jframe_matrix(cert.s, cert.n(), cert.m());
  if (!report.is_jframe_matrix) {
    std::string why;
    for (const auto& f : report.witness_failures) why += (why.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::kNotJFrame, why);
  }
  // Use the constructed K rather than the one recovered from S.
  report.k = cert.k;
  report.k_norm = spectral_norm(cert.k);
  fill_exact_bounds(report, cert.a, cert.k, cert.schur);

  const Index n = spectra.n();
  const Index m = spectra.m();
  const Index r = cert.r;
  constexpr double inf = std::numeric_limits<double>::infinity();

  ExplicitBounds ex{inf, -inf, inf, -inf};
  for (Index i = 0; i < r; ++i) {
    const double eps = cert.schedule.epsilons[static_cast<std::size_t>(i)];
    const double plus = (1.0 - eps) * spectra.lambda(i);
    const double minus = eps * spectra.lambda(i) + spectra.mu(i);
    ex.alpha_plus = std::min(ex.alpha_plus, plus);
    ex.beta_plus = std::max(ex.beta_plus, plus);
    ex.alpha_minus = std::min(ex.alpha_minus, minus);
    ex.beta_minus = std::max(ex.beta_minus, minus);
  }
  if (r < n) {
    ex.alpha_plus = std::min(ex.alpha_plus, spectra.lambda(n - 1));
    ex.beta_plus = std::max(ex.beta_plus, spectra.lambda(r));
  }
  if (r < m) {
    ex.alpha_minus = std::min(ex.alpha_minus, spectra.mu(r));
    ex.beta_minus = std::max(ex.beta_minus, spectra.mu(m - 1));
  }
  report.explicit_bounds = ex;

  const SingularProfile sv = singular_values(cert.k);
  const double s1 = sv.norm();
  const double sl = sv.rank() > 0 ? sv.values.back() : 0.0;
  AprioriBounds ap;
  ap.k_full_row_rank = sv.rank() == n;
  const double sn = ap.k_full_row_rank ? sl : 0.0;
  ap.beta_minus_upper = s1 * s1 * spectra.lambda(0) + spectra.mu(m - 1);
  ap.alpha_plus_lower = (1.0 - s1 * s1) * spectra.lambda(n - 1);
  ap.beta_plus_upper = (1.0 - sn * sn) * spectra.lambda(0);
  ap.beta_plus_upper_positive_sv = (1.0 - sl * sl) * spectra.lambda(0);
  ap.alpha_plus_upper = spectra.lambda(n - 1);
  ap.alpha_minus_upper = r < m ? spectra.mu(r) : inf;
  for (Index i = 0; i < r; ++i) {
    const double sum = spectra.lambda(i) + spectra.mu(i);
    ap.alpha_plus_upper = std::min(ap.alpha_plus_upper, sum);
    ap.alpha_minus_upper = std::min(ap.alpha_minus_upper, sum);
  }
  report.apriori = ap;
  return report;
}

JFrameFamily synthesize_jframe(const CompletionCertificate& cert) {
  const Index n = cert.n();
  const Index m = cert.m();
  const JFrameReport check = is_jframe_matrix(cert.s, n, m);
  if (!check.is_jframe_matrix) throw Error(ErrorCode::kNotJFrame, "S is not a J-frame matrix");
  const double k_norm = spectral_norm(cert.k);
  constexpr double kContractionFloor = 1e-10;
  if (1.0 - k_norm * k_norm < kContractionFloor) {
    throw Error(ErrorCode::kContractionSingular, "1 - ||K||^2 below 1e-10");
  }

  JFrameFamily family;
  family.n = n;
  family.m = m;

  const ComplexMatrix gap =
      hermitian_part(ComplexMatrix::Identity(n, n) - cert.k * cert.k.adjoint());
  const ComplexMatrix gap_inv_root = hermitian_inv_sqrt(gap, kContractionFloor);
  const ComplexMatrix c_root = hermitian_sqrt(positive_part_operator(cert.a, cert.k));
  const ComplexMatrix u = gap_inv_root * c_root;
  for (Index i = 0; i < n; ++i) {
    ComplexVector f(n + m);
    f.head(n) = u.col(i);
    f.tail(m) = cert.k.adjoint() * u.col(i);
    family.vectors.push_back(std::move(f));
    family.signatures.push_back(+1);
  }

  const ComplexMatrix schur_root = hermitian_sqrt(cert.schur);
  for (Index j = 0; j < m; ++j) {
    ComplexVector f = ComplexVector::Zero(n + m);
    f.tail(m) = schur_root.col(j);
    family.vectors.push_back(std::move(f));
    family.signatures.push_back(-1);
  }
  return family;
}

ComplexMatrix jframe_operator(const JFrameFamily& family) {
  const IndefiniteGram gram{family.n, family.m};
  const ComplexMatrix j = gram.matrix();
  const Index dim = gram.dimension();
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < family.vectors.size(); ++i) {
    const ComplexVector& f = family.vectors[i];
    op += static_cast<double>(family.signatures[i]) * f * (f.adjoint() * j);
  }
  return op;
}

ComplexVector reconstruct_vector(const JFrameFamily& family, const ComplexMatrix& s,
                                 const ComplexVector& f) {
  const IndefiniteGram gram{family.n, family.m};
  const auto lu = s.partialPivLu();
  ComplexVector out = ComplexVector::Zero(gram.dimension());
  for (std::size_t i = 0; i < family.vectors.size(); ++i) {
    const ComplexVector dual = lu.solve(family.vectors[i]);
    out += static_cast<double>(family.signatures[i]) * gram.inner(f, dual) * family.vectors[i];
  }
  return out;
}

}  // namespace schurcomp
