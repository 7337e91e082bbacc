#include "schurcomp/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace schurcomp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kBadKappa: return "BadKappa";
    case ErrorCode::kInfeasibleInput: return "InfeasibleInput";
    case ErrorCode::kScheduleInvalid: return "ScheduleInvalid";
    case ErrorCode::kNonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::kCertificateMismatch: return "CertificateMismatch";
    case ErrorCode::kJordanDegenerate: return "JordanDegenerate";
    case ErrorCode::kNotDegenerate: return "NotDegenerate";
    case ErrorCode::kGridOutOfRange: return "GridOutOfRange";
    case ErrorCode::kBlockInconsistent: return "BlockInconsistent";
    case ErrorCode::kANotPositiveDefinite: return "ANotPositiveDefinite";
    case ErrorCode::kNotJFrame: return "NotJFrame";
    case ErrorCode::kContractionSingular: return "ContractionSingular";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kCardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::kSingularA: return "SingularA";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double default_zero_tol(const ComplexMatrix& m) {
  return 1e-9 * std::max(1.0, spectral_norm(m));
}

bool is_hermitian(const ComplexMatrix& m, double hermitian_tol) {
  if (m.rows() != m.cols()) return false;
  if (!m.allFinite()) return false;
  const double asym = spectral_norm(m - m.adjoint());
  return asym <= hermitian_tol * std::max(1.0, spectral_norm(m));
}

HermitianEigenSystem eigendecompose_hermitian(const ComplexMatrix& m, EigenOrder order,
                                              double hermitian_tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNotSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()));
  }
  if (!is_hermitian(m, hermitian_tol)) {
    throw Error(ErrorCode::kNotHermitian, "symmetry test ||M - M*|| <= tol ||M|| failed");
  }
  HermitianEigenSystem sys;
  sys.order = order;
  if (m.rows() == 0) {
    sys.values.resize(0);
    sys.vectors.resize(0, 0);
    return sys;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  // Eigen returns ascending eigenvalues.
  sys.values = solver.eigenvalues();
  sys.vectors = solver.eigenvectors();
  if (order == EigenOrder::kNonincreasing) {
    sys.values.reverseInPlace();
    sys.vectors.rowwise().reverseInPlace();
  }
  return sys;
}

InertiaCounts inertia(const HermitianEigenSystem& sys, double zero_tol) {
  InertiaCounts counts;
  counts.zero_tol = zero_tol;
  for (Index i = 0; i < sys.values.size(); ++i) {
    const double v = sys.values(i);
    if (v > zero_tol) {
      ++counts.positive;
    } else if (v < -zero_tol) {
      ++counts.negative;
    } else {
      ++counts.zero;
    }
  }
  return counts;
}

SingularProfile singular_values(const ComplexMatrix& m, double rank_tol) {
  SingularProfile profile;
  if (m.size() == 0) return profile;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  const double tol = rank_tol < 0.0 ? 1e-12 * sv(0) : rank_tol;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol && sv(i) > 0.0) profile.values.push_back(sv(i));
  }
  return profile;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& m, double pinv_tol) {
  ComplexMatrix out = ComplexMatrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double tol = pinv_tol < 0.0 ? 1e-12 * sv(0) : pinv_tol;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol && sv(i) > 0.0) {
      out += svd.matrixV().col(i) * (1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
    }
  }
  return out;
}

ComplexMatrix schur_complement(const BlockMatrix& blocks, double pinv_tol) {
  const auto& [a, b, c, d] = blocks;
  const Index n = a.rows();
  const Index m = d.rows();
  if (a.cols() != n || d.cols() != m || b.rows() != n || b.cols() != m || c.rows() != m ||
      c.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "inconsistent block dimensions");
  }
  return d - c * pseudo_inverse(a, pinv_tol) * b;
}

BlockMatrix split_blocks(const ComplexMatrix& s, Index n) {
  if (s.rows() != s.cols()) throw Error(ErrorCode::kNotSquare, "block matrix must be square");
  if (n < 0 || n > s.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "leading block size out of range");
  }
  const Index m = s.rows() - n;
  return {s.topLeftCorner(n, n), s.topRightCorner(n, m), s.bottomLeftCorner(m, n),
          s.bottomRightCorner(m, m)};
}

ComplexMatrix assemble_blocks(const BlockMatrix& blocks) {
  const Index n = blocks.a.rows();
  const Index m = blocks.d.rows();
  if (blocks.a.cols() != n || blocks.d.cols() != m || blocks.b.rows() != n ||
      blocks.b.cols() != m || blocks.c.rows() != m || blocks.c.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "inconsistent block dimensions");
  }
  ComplexMatrix s(n + m, n + m);
  s << blocks.a, blocks.b, blocks.c, blocks.d;
  return s;
}

ComplexMatrix reconstruct(const HermitianEigenSystem& sys) {
  return sys.vectors * sys.values.cast<Complex>().asDiagonal() * sys.vectors.adjoint();
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m, double clamp_tol) {
  const auto sys = eigendecompose_hermitian(m, EigenOrder::kNondecreasing);
  const double tol = clamp_tol < 0.0 ? default_zero_tol(m) : clamp_tol;
  RealVector roots(sys.size());
  for (Index i = 0; i < sys.size(); ++i) {
    const double v = sys.values(i);
    if (v < -tol) throw Error(ErrorCode::kNotHermitian, "square root of an indefinite matrix");
    roots(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return hermitian_part(sys.vectors * roots.cast<Complex>().asDiagonal() *
                        sys.vectors.adjoint());
}

ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& m, double floor) {
  const auto sys = eigendecompose_hermitian(m, EigenOrder::kNondecreasing);
  RealVector roots(sys.size());
  for (Index i = 0; i < sys.size(); ++i) {
    if (!(sys.values(i) >= floor)) {
      throw Error(ErrorCode::kContractionSingular,
                  "eigenvalue " + std::to_string(sys.values(i)) + " below floor " +
                      std::to_string(floor));
    }
    roots(i) = 1.0 / std::sqrt(sys.values(i));
  }
  return hermitian_part(sys.vectors * roots.cast<Complex>().asDiagonal() *
                        sys.vectors.adjoint());
}

}  // namespace schurcomp
