#include "schurcomp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schurcomp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void reduce_to_hessenberg(ComplexMatrix& h) {
  const Index n = h.rows();
  for (Index k = 0; k + 2 < n; ++k) {
    const Index len = n - k - 1;
    ComplexVector v = h.col(k).segment(k + 1, len);
    const double alpha = v.norm();
    if (alpha == 0.0) continue;
    const Complex lead = v(0);
    const Complex phase = std::abs(lead) == 0.0 ? Complex(1.0, 0.0) : lead / std::abs(lead);
    v(0) += phase * alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // H <- P H P with P = I - 2 v v* acting on rows/cols k+1..n-1.
    auto rows = h.block(k + 1, 0, len, n);
    rows -= 2.0 * v * (v.adjoint() * rows);
    auto cols = h.block(0, k + 1, n, len);
    cols -= 2.0 * (cols * v) * v.adjoint();
    h.col(k).segment(k + 2, len - 1).setZero();
  }
}

// Eigenvalues of [[a, b], [c, d]], computing the larger root first to limit
// cancellation.
std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex half_diff = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_diff * half_diff + b * c);
  const Complex r1 =
      std::abs(half_tr + disc) >= std::abs(half_tr - disc) ? half_tr + disc : half_tr - disc;
  const Complex det = a * d - b * c;
  const Complex r2 = std::abs(r1) == 0.0 ? Complex(0.0, 0.0) : det / r1;
  return {r1, r2};
}

Complex wilkinson_shift(const ComplexMatrix& h, Index hi) {
  const auto [r1, r2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
  return std::abs(r1 - h(hi, hi)) <= std::abs(r2 - h(hi, hi)) ? r1 : r2;
}

// One explicitly shifted QR step restricted to the active window [lo, hi].
void qr_step(ComplexMatrix& h, Index lo, Index hi, Complex shift) {
  for (Index k = lo; k <= hi; ++k) h(k, k) -= shift;
  std::vector<Complex> cs, ss;
  for (Index k = lo; k < hi; ++k) {
    const Complex x = h(k, k);
    const Complex y = h(k + 1, k);
    const double r = std::hypot(std::abs(x), std::abs(y));
    const Complex c = r == 0.0 ? Complex(1.0, 0.0) : x / r;
    const Complex s = r == 0.0 ? Complex(0.0, 0.0) : y / r;
    for (Index j = k; j <= hi; ++j) {
      const Complex t1 = h(k, j);
      const Complex t2 = h(k + 1, j);
      h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
      h(k + 1, j) = -s * t1 + c * t2;
    }
    cs.push_back(c);
    ss.push_back(s);
  }
  for (Index k = lo; k < hi; ++k) {
    const Complex c = cs[static_cast<std::size_t>(k - lo)];
    const Complex s = ss[static_cast<std::size_t>(k - lo)];
    for (Index i = lo; i <= std::min(k + 1, hi); ++i) {
      const Complex t1 = h(i, k);
      const Complex t2 = h(i, k + 1);
      h(i, k) = t1 * c + t2 * s;
      h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
    }
  }
  for (Index k = lo; k <= hi; ++k) h(k, k) += shift;
}

}  // namespace

std::vector<Complex> numeric_spectrum(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kNotSquare, "eigenvalues need a square matrix");
  const Index n = m.rows();
  std::vector<Complex> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  if (!m.allFinite()) throw Error(ErrorCode::kNoConvergence, "matrix has non-finite entries");

  ComplexMatrix h = m;
  reduce_to_hessenberg(h);
  const double hnorm = std::max(h.norm(), std::numeric_limits<double>::min());

  const Index cap = 100 * n;
  Index total = 0;
  Index since_deflation = 0;
  Index hi = n - 1;
  while (hi >= 0) {
    if (hi == 0) {
      out[0] = h(0, 0);
      break;
    }
    Index lo = hi;
    while (lo > 0) {
      double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (scale == 0.0) scale = hnorm;
      if (std::abs(h(lo, lo - 1)) <= kEps * scale) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (lo == hi - 1) {
      const auto [r1, r2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      out[static_cast<std::size_t>(lo)] = r1;
      out[static_cast<std::size_t>(hi)] = r2;
      hi -= 2;
      since_deflation = 0;
      continue;
    }
    if (++total > cap) {
      throw Error(ErrorCode::kNoConvergence, "QR iteration cap of 100 * dim reached");
    }
    ++since_deflation;
    Complex shift = wilkinson_shift(h, hi);
    if (since_deflation % 10 == 0) {
      // Exceptional shift to break cycles.
      shift = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.4 * std::abs(h(hi - 1, hi - 2)));
    }
    qr_step(h, lo, hi, shift);
  }
  return out;
}

std::vector<double> spectrum_residuals(const ComplexMatrix& m, const std::vector<Complex>& etas) {
  std::vector<double> out;
  const Index n = m.rows();
  for (const Complex& eta : etas) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m - eta * ComplexMatrix::Identity(n, n));
    out.push_back(n == 0 ? 0.0 : svd.singularValues()(n - 1));
  }
  return out;
}

SpectrumComparison compare_spectra(const std::vector<Complex>& predicted,
                                   const std::vector<Complex>& numeric, double tol) {
  if (predicted.size() != numeric.size()) {
    throw Error(ErrorCode::kCardinalityMismatch, "predicted and numeric spectra differ in size");
  }
  const std::size_t n = predicted.size();
  std::vector<bool> used_p(n, false), used_q(n, false);
  SpectrumComparison cmp;
  for (std::size_t round = 0; round < n; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bp = 0, bq = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_p[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_q[j]) continue;
        const double dist = std::abs(predicted[i] - numeric[j]);
        if (dist < best) {
          best = dist;
          bp = i;
          bq = j;
        }
      }
    }
    used_p[bp] = used_q[bq] = true;
    cmp.pairs.push_back({predicted[bp], numeric[bq], best});
    cmp.max_distance = std::max(cmp.max_distance, best);
  }
  cmp.matched = cmp.max_distance <= tol;
  return cmp;
}

Index numeric_nullity(const ComplexMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  const double cutoff = rel_tol * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  return m.cols() - rank;
}

RankProbe jordan_rank_probe(const ComplexMatrix& s, Complex eta, double rel_tol) {
  const ComplexMatrix t = s - eta * ComplexMatrix::Identity(s.rows(), s.cols());
  return {numeric_nullity(t, rel_tol), numeric_nullity(t * t, rel_tol)};
}

AitkenFactors aitken_factors(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ComplexMatrix& c, const ComplexMatrix& d) {
  const Index n = a.rows();
  const Index m = d.rows();
  if (a.cols() != n || d.cols() != m || b.rows() != n || b.cols() != m || c.rows() != m ||
      c.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "inconsistent block dimensions");
  }
  if (n > 0) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const RealVector& sv = svd.singularValues();
    if (!(sv(n - 1) > 1e-14 * sv(0))) throw Error(ErrorCode::kSingularA, "A is not invertible");
  }
  const auto lu = a.partialPivLu();
  const ComplexMatrix a_inv = lu.inverse();
  const ComplexMatrix a_inv_b = a_inv * b;
  const ComplexMatrix c_a_inv = c * a_inv;
  AitkenFactors f;
  f.lower = ComplexMatrix::Identity(n + m, n + m);
  f.lower.bottomLeftCorner(m, n) = c_a_inv;
  f.middle = ComplexMatrix::Zero(n + m, n + m);
  f.middle.topLeftCorner(n, n) = a;
  f.middle.bottomRightCorner(m, m) = d - c * a_inv_b;
  f.upper = ComplexMatrix::Identity(n + m, n + m);
  f.upper.topRightCorner(n, m) = a_inv_b;
  return f;
}

namespace {

void record(InequalityCheck& chk, double lhs, double rhs) {
  ++chk.checked;
  chk.worst = std::max(chk.worst, lhs - rhs);
}

RealVector descending_eigs(const ComplexMatrix& h) {
  return eigendecompose_hermitian(hermitian_part(h), EigenOrder::kNonincreasing).values;
}

}  // namespace

InequalityCheck check_weyl(const ComplexMatrix& x, const ComplexMatrix& y, double slack) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "Weyl needs equal sizes");
  }
  const RealVector lx = descending_eigs(x);
  const RealVector ly = descending_eigs(y);
  const RealVector ls = descending_eigs(x + y);
  const Index n = lx.size();
  const double scale = std::max(1.0, spectral_norm(x) + spectral_norm(y));
  InequalityCheck chk;
  // Zero-based: i <= j uses ly(j - i); i >= j uses ly(j - i + n - 1).
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i <= j) record(chk, ls(j), lx(i) + ly(j - i));
      if (i >= j) record(chk, lx(i) + ly(j - i + n - 1), ls(j));
    }
  }
  chk.ok = chk.worst <= slack * scale;
  return chk;
}

InequalityCheck check_singular_product(const ComplexMatrix& x, const ComplexMatrix& y,
                                       double slack) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "singular product bound needs equal shapes");
  }
  const SingularProfile sx = singular_values(x);
  const SingularProfile sy = singular_values(y);
  const SingularProfile sp = singular_values(x * y.adjoint());
  const double scale = std::max(1.0, sx.norm() * sy.norm());
  InequalityCheck chk;
  for (Index i = 0; i < sx.rank(); ++i) {
    for (Index j = 0; j < sy.rank(); ++j) {
      if (i + j >= sp.rank()) continue;
      record(chk, sp.values[static_cast<std::size_t>(i + j)],
             sx.values[static_cast<std::size_t>(i)] * sy.values[static_cast<std::size_t>(j)]);
    }
  }
  chk.ok = chk.worst <= slack * scale;
  return chk;
}

InequalityCheck check_congruence_bound(const ComplexMatrix& a, const ComplexMatrix& k,
                                       double slack) {
  if (a.rows() != k.rows()) throw Error(ErrorCode::kDimensionMismatch, "K must have n rows");
  const RealVector la = eigendecompose_hermitian(a, EigenOrder::kNonincreasing).values;
  const ComplexMatrix kak = hermitian_part(k.adjoint() * a * k);
  const RealVector lk = descending_eigs(kak);
  const double knorm = spectral_norm(k);
  const double scale = std::max(1.0, knorm * knorm * spectral_norm(a));
  Index positive = 0;
  for (Index i = 0; i < la.size(); ++i) {
    if (la(i) > default_zero_tol(a)) ++positive;
  }
  const Index limit =
      std::min({positive, static_cast<Index>(k.cols()), singular_values(kak).rank()});
  InequalityCheck chk;
  for (Index j = 0; j < limit; ++j) record(chk, lk(j), knorm * knorm * la(j));
  chk.ok = chk.worst <= slack * scale;
  return chk;
}

bool IdentityReport::all_ok() const {
  const bool ineq = !hermitian_checks || (weyl.ok && singular_product.ok && congruence.ok);
  return aitken_ok && determinant_ok && ineq;
}

IdentityReport check_identities(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ComplexMatrix& c, const ComplexMatrix& d,
                                const ComplexMatrix& k, const IdentityTolerances& tol) {
  IdentityReport report;
  const AitkenFactors f = aitken_factors(a, b, c, d);
  const ComplexMatrix s = assemble_blocks({a, b, c, d});
  const double s_norm = std::max(1.0, spectral_norm(s));
  report.aitken_residual = spectral_norm(f.lower * f.middle * f.upper - s) / s_norm;
  report.aitken_ok = report.aitken_residual <= tol.aitken;

  const Complex det_s = s.determinant();
  const Complex det_a = a.determinant();
  const Complex det_schur = f.middle.bottomRightCorner(d.rows(), d.rows()).determinant();
  const double denom = std::max(std::abs(det_s), std::numeric_limits<double>::min());
  report.determinant_residual = std::abs(det_s - det_a * det_schur) / denom;
  report.determinant_ok = report.determinant_residual <= tol.determinant;

  report.hermitian_checks = is_hermitian(a) && is_hermitian(d) && k.rows() == a.rows() &&
                            k.cols() == d.rows();
  if (report.hermitian_checks) {
    report.weyl = check_weyl(d, hermitian_part(k.adjoint() * a * k), tol.inequality_slack);
    report.singular_product = check_singular_product(k.adjoint() * a, k.adjoint(),
                                                     tol.inequality_slack);
    report.congruence = check_congruence_bound(a, k, tol.inequality_slack);
  }
  return report;
}

}  // namespace schurcomp
