#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schurcomp/completion.hpp"

namespace schurcomp {

/// alpha_i = (lambda_i - mu_i)^2 / (4 lambda_i^2): the parameter value at
/// which the pair eta_i^+/- collides.
struct AlphaProfile {
  std::vector<double> alphas;
};

/// Which regime of the root locus an eigenvalue pair sits in.
///   a: 0 < eps < -mu/lambda            lambda > eta+ > 0 > eta- > mu
///   b: -mu/lambda <= eps < alpha       real pair inside [min(l+m,0), max(l+m,0)]
///   c: alpha < eps                     nonreal conjugate pair
///   d: eps = alpha                     double eigenvalue with a 2-chain
///   e: eps = 0                         decoupled pair (lambda, mu)
enum class CaseLabel { kA, kB, kC, kD, kE, kInherited };

enum class EigenOrigin { kInheritedA, kInheritedD, kEtaPlus, kEtaMinus };

std::string_view to_string(CaseLabel label);
std::string_view to_string(EigenOrigin origin);

struct PredictedEigen {
  Complex value;
  EigenOrigin origin = EigenOrigin::kInheritedA;
  CaseLabel label = CaseLabel::kInherited;
  /// Zero-based index i into lambda/mu; for inherited eigenvalues the
  /// position in the respective spectrum.
  Index index = 0;
};

/// (S - eta I) lead = tail != 0 and (S - eta I) tail = 0.
struct JordanChain {
  Complex eigenvalue;
  Index index = 0;
  ComplexVector lead;
  ComplexVector tail;
};

struct SpectrumPrediction {
  std::vector<PredictedEigen> eigens;  // n + m entries
  bool diagonalizable = true;
  std::vector<JordanChain> jordan_chains;
  std::vector<std::string> warnings;

  std::vector<Complex> values() const;
};

struct EtaPair {
  Complex plus;
  Complex minus;
};

/// Relative tolerance for deciding eps == alpha.
inline constexpr double kDegeneracyTol = 1e-12;

double alpha_value(double lambda, double mu);

/// eta^+/- = (lambda + mu)/2 +/- lambda sqrt(alpha - eps). For eps > alpha the
/// root is taken as +i sqrt(eps - alpha), so eta^+ is in the upper half-plane.
EtaPair eta_pair(double lambda, double mu, double eps);

/// Regime of (lambda, mu, eps) with lambda > 0. eps within
/// degeneracy_tol * max(1, alpha) of alpha is case d; eps == 0 is case e;
/// eps exactly at -mu/lambda belongs to case b.
CaseLabel classify(double lambda, double mu, double eps, double degeneracy_tol = kDegeneracyTol);

/// alpha_i for i < scope. Throws kNonpositiveLambda if some lambda_i <= 0.
AlphaProfile compute_alphas(const HermitianEigenSystem& eigs_a, const HermitianEigenSystem& eigs_d,
                            Index scope);

/// Closed-form spectrum of cert.s. The eta pairs cover i < r - p in
/// semidefinite mode and i < r in definite mode; the remaining lambdas and
/// mus are inherited unchanged. Throws kCertificateMismatch if cert was not
/// built from `spectra`.
SpectrumPrediction predict_spectrum(const CompletionCertificate& cert, const BlockSpectra& spectra);

/// Eigenvectors (v+, v-) of S for eta_i^+/- lifted by W = diag(U, V).
/// Throws kJordanDegenerate when eps_i = alpha_i.
std::pair<ComplexVector, ComplexVector> eigenvectors(const CompletionCertificate& cert,
                                                     const BlockSpectra& spectra, Index i);

/// W e_j: an eigenvector of S for the inherited eigenvalue at position j of
/// C^{n+m} (j < n pairs with lambda_j, j >= n with mu_{j-n}). Throws
/// kDimensionMismatch if j is coupled by K.
ComplexVector inherited_eigenvector(const CompletionCertificate& cert, const BlockSpectra& spectra,
                                    Index j);

/// Lifted 2-chain for eps_i = alpha_i. Throws kNotDegenerate otherwise.
JordanChain jordan_chain(const CompletionCertificate& cert, const BlockSpectra& spectra, Index i);

struct LocusPoint {
  double epsilon = 0.0;
  Complex plus;
  Complex minus;
  CaseLabel label = CaseLabel::kB;
};

struct RootLocus {
  double lambda = 0.0;
  double mu = 0.0;
  double kappa = 1.0;
  Mode mode = Mode::kDefinite;
  double lower_marker = 0.0;  // -mu/lambda
  double alpha = 0.0;
  double kappa_sq = 1.0;
  /// A nonempty eps range with alpha < eps <= kappa^2 (< kappa^2 when
  /// definite) exists.
  bool case_c_reachable = false;
  std::vector<LocusPoint> points;  // ordered by epsilon
};

/// eta^+/- along the grid. Every grid value must lie in [0, kappa^2];
/// otherwise kGridOutOfRange.
RootLocus root_locus(double lambda, double mu, const std::vector<double>& grid, double kappa,
                     Mode mode);

RootLocus root_locus(const BlockSpectra& spectra, Index i, const std::vector<double>& grid,
                     double kappa, Mode mode);

/// CSV with header epsilon,re_plus,im_plus,re_minus,im_minus,label preceded
/// by '#' comment lines carrying the boundary markers.
std::string root_locus_csv(const RootLocus& locus);

}  // namespace schurcomp
