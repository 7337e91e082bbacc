#include "schurcomp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace schurcomp {

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::kA: return "a";
    case CaseLabel::kB: return "b";
    case CaseLabel::kC: return "c";
    case CaseLabel::kD: return "d";
    case CaseLabel::kE: return "e";
    case CaseLabel::kInherited: return "inherited";
  }
  return "?";
}

std::string_view to_string(EigenOrigin origin) {
  switch (origin) {
    case EigenOrigin::kInheritedA: return "inherited_A";
    case EigenOrigin::kInheritedD: return "inherited_D";
    case EigenOrigin::kEtaPlus: return "eta_plus";
    case EigenOrigin::kEtaMinus: return "eta_minus";
  }
  return "?";
}

std::vector<Complex> SpectrumPrediction::values() const {
  std::vector<Complex> out;
  out.reserve(eigens.size());
  for (const auto& e : eigens) out.push_back(e.value);
  return out;
}

double alpha_value(double lambda, double mu) {
  const double diff = lambda - mu;
  return diff * diff / (4.0 * lambda * lambda);
}

EtaPair eta_pair(double lambda, double mu, double eps) {
  const double center = 0.5 * (lambda + mu);
  const double gap = alpha_value(lambda, mu) - eps;
  if (gap >= 0.0) {
    const double half = lambda * std::sqrt(gap);
    return {Complex(center + half, 0.0), Complex(center - half, 0.0)};
  }
  const double half = lambda * std::sqrt(-gap);
  return {Complex(center, half), Complex(center, -half)};
}

CaseLabel classify(double lambda, double mu, double eps, double degeneracy_tol) {
  if (eps == 0.0) return CaseLabel::kE;
  const double alpha = alpha_value(lambda, mu);
  if (std::abs(eps - alpha) <= degeneracy_tol * std::max(1.0, alpha)) return CaseLabel::kD;
  if (eps > alpha) return CaseLabel::kC;
  if (eps < -mu / lambda) return CaseLabel::kA;
  return CaseLabel::kB;
}

AlphaProfile compute_alphas(const HermitianEigenSystem& eigs_a, const HermitianEigenSystem& eigs_d,
                            Index scope) {
  if (scope > eigs_a.size() || scope > eigs_d.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "scope exceeds the spectra");
  }
  AlphaProfile profile;
  for (Index i = 0; i < scope; ++i) {
    const double lambda = eigs_a.values(i);
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::kNonpositiveLambda, "lambda_" + std::to_string(i) + " <= 0");
    }
    profile.alphas.push_back(alpha_value(lambda, eigs_d.values(i)));
  }
  return profile;
}

namespace {

Index coupled_scope(const CompletionCertificate& cert) {
  return cert.schedule.mode == Mode::kDefinite ? cert.r : cert.r - cert.p;
}

void check_match(const CompletionCertificate& cert, const BlockSpectra& spectra) {
  const bool ok = cert.n() == spectra.n() && cert.m() == spectra.m() && cert.r == spectra.r() &&
                  cert.p == spectra.p() &&
                  static_cast<Index>(cert.schedule.epsilons.size()) == cert.r &&
                  cert.s.rows() == spectra.n() + spectra.m();
  if (!ok) throw Error(ErrorCode::kCertificateMismatch, "certificate does not match spectra");
}

ComplexVector lift(const BlockSpectra& spectra, Index i, Complex top, Complex bottom) {
  const Index n = spectra.n();
  ComplexVector v = ComplexVector::Zero(n + spectra.m());
  v.head(n) = top * spectra.eigs_a.vectors.col(i);
  v.tail(spectra.m()) = bottom * spectra.eigs_d.vectors.col(i);
  return v;
}

double epsilon_at(const CompletionCertificate& cert, Index i) {
  return cert.schedule.epsilons.at(static_cast<std::size_t>(i));
}

}  // namespace

SpectrumPrediction predict_spectrum(const CompletionCertificate& cert,
                                    const BlockSpectra& spectra) {
  check_match(cert, spectra);
  const Index n = spectra.n();
  const Index m = spectra.m();
  const Index scope = coupled_scope(cert);

  SpectrumPrediction pred;
  pred.eigens.reserve(static_cast<std::size_t>(n + m));
  for (Index i = 0; i < scope; ++i) {
    const double lambda = spectra.lambda(i);
    const double mu = spectra.mu(i);
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::kNonpositiveLambda, "coupled lambda must be positive");
    }
    const double eps = epsilon_at(cert, i);
    const CaseLabel label = classify(lambda, mu, eps);
    EtaPair eta = eta_pair(lambda, mu, eps);
    if (label == CaseLabel::kD) {
      const Complex center(0.5 * (lambda + mu), 0.0);
      eta = {center, center};
      pred.diagonalizable = false;
      pred.jordan_chains.push_back(jordan_chain(cert, spectra, i));
      pred.warnings.push_back("index " + std::to_string(i) +
                              ": eps within tolerance of alpha, reported as a Jordan block");
    }
    pred.eigens.push_back({eta.plus, EigenOrigin::kEtaPlus, label, i});
    pred.eigens.push_back({eta.minus, EigenOrigin::kEtaMinus, label, i});
  }
  for (Index i = scope; i < n; ++i) {
    pred.eigens.push_back(
        {Complex(spectra.lambda(i), 0.0), EigenOrigin::kInheritedA, CaseLabel::kInherited, i});
  }
  for (Index j = scope; j < m; ++j) {
    pred.eigens.push_back(
        {Complex(spectra.mu(j), 0.0), EigenOrigin::kInheritedD, CaseLabel::kInherited, j});
  }
  return pred;
}

std::pair<ComplexVector, ComplexVector> eigenvectors(const CompletionCertificate& cert,
                                                     const BlockSpectra& spectra, Index i) {
  check_match(cert, spectra);
  if (i < 0 || i >= coupled_scope(cert)) {
    throw Error(ErrorCode::kDimensionMismatch, "index is not a coupled pair");
  }
  const double lambda = spectra.lambda(i);
  const double mu = spectra.mu(i);
  const double eps = epsilon_at(cert, i);
  if (classify(lambda, mu, eps) == CaseLabel::kD) {
    throw Error(ErrorCode::kJordanDegenerate, "eps_i = alpha_i has a single eigenvector");
  }
  if (eps == 0.0) {
    return {lift(spectra, i, 1.0, 0.0), lift(spectra, i, 0.0, 1.0)};
  }
  const EtaPair eta = eta_pair(lambda, mu, eps);
  const double coupling = lambda * std::sqrt(eps);
  auto vec = [&](Complex value) {
    ComplexVector v = lift(spectra, i, 1.0, -coupling / (mu - value));
    return ComplexVector(v / v.norm());
  };
  return {vec(eta.plus), vec(eta.minus)};
}

ComplexVector inherited_eigenvector(const CompletionCertificate& cert, const BlockSpectra& spectra,
                                    Index j) {
  check_match(cert, spectra);
  const Index n = spectra.n();
  const Index scope = coupled_scope(cert);
  ComplexVector v = ComplexVector::Zero(n + spectra.m());
  if (j >= scope && j < n) {
    v.head(n) = spectra.eigs_a.vectors.col(j);
  } else if (j >= n + scope && j < n + spectra.m()) {
    v.tail(spectra.m()) = spectra.eigs_d.vectors.col(j - n);
  } else {
    throw Error(ErrorCode::kDimensionMismatch, "position is coupled by K or out of range");
  }
  return v;
}

JordanChain jordan_chain(const CompletionCertificate& cert, const BlockSpectra& spectra, Index i) {
  check_match(cert, spectra);
  if (i < 0 || i >= coupled_scope(cert)) {
    throw Error(ErrorCode::kDimensionMismatch, "index is not a coupled pair");
  }
  const double lambda = spectra.lambda(i);
  const double mu = spectra.mu(i);
  if (classify(lambda, mu, epsilon_at(cert, i)) != CaseLabel::kD) {
    throw Error(ErrorCode::kNotDegenerate, "eps_i differs from alpha_i");
  }
  JordanChain chain;
  chain.index = i;
  chain.eigenvalue = Complex(0.5 * (lambda + mu), 0.0);
  chain.lead = lift(spectra, i, 1.0 + 2.0 / (lambda - mu), 1.0);
  chain.tail = lift(spectra, i, 1.0, 1.0);
  return chain;
}

RootLocus root_locus(double lambda, double mu, const std::vector<double>& grid, double kappa,
                     Mode mode) {
  if (!(kappa > 0.0)) throw Error(ErrorCode::kBadKappa, "kappa must be positive");
  if (!(lambda > 0.0)) throw Error(ErrorCode::kNonpositiveLambda, "lambda must be positive");
  RootLocus locus;
  locus.lambda = lambda;
  locus.mu = mu;
  locus.kappa = kappa;
  locus.mode = mode;
  locus.kappa_sq = kappa * kappa;
  locus.lower_marker = -mu / lambda;
  locus.alpha = alpha_value(lambda, mu);
  locus.case_c_reachable = locus.alpha < locus.kappa_sq;

  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  for (double eps : sorted) {
    if (!(eps >= 0.0 && eps <= locus.kappa_sq)) {
      throw Error(ErrorCode::kGridOutOfRange,
                  "epsilon " + std::to_string(eps) + " outside [0, kappa^2]");
    }
    const EtaPair eta = eta_pair(lambda, mu, eps);
    locus.points.push_back({eps, eta.plus, eta.minus, classify(lambda, mu, eps)});
  }
  return locus;
}

RootLocus root_locus(const BlockSpectra& spectra, Index i, const std::vector<double>& grid,
                     double kappa, Mode mode) {
  if (i < 0 || i >= std::min(spectra.n(), spectra.m())) {
    throw Error(ErrorCode::kDimensionMismatch, "index out of range");
  }
  return root_locus(spectra.lambda(i), spectra.mu(i), grid, kappa, mode);
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string root_locus_csv(const RootLocus& locus) {
  std::ostringstream os;
  os << "# lambda=" << fmt(locus.lambda) << " mu=" << fmt(locus.mu)
     << " kappa=" << fmt(locus.kappa)
     << " mode=" << (locus.mode == Mode::kDefinite ? "definite" : "semidefinite") << '\n';
  os << "# boundary lower=-mu/lambda=" << fmt(locus.lower_marker) << '\n';
  os << "# boundary alpha=" << fmt(locus.alpha) << '\n';
  os << "# boundary kappa_sq=" << fmt(locus.kappa_sq) << '\n';
  os << "# case_c_reachable=" << (locus.case_c_reachable ? "true" : "false") << '\n';
  os << "epsilon,re_plus,im_plus,re_minus,im_minus,label\n";
  for (const auto& pt : locus.points) {
    os << fmt(pt.epsilon) << ',' << fmt(pt.plus.real()) << ',' << fmt(pt.plus.imag()) << ','
       << fmt(pt.minus.real()) << ',' << fmt(pt.minus.imag()) << ',' << to_string(pt.label)
       << '\n';
  }
  return os.str();
}

}  // namespace schurcomp
