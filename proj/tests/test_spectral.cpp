#include <gtest/gtest.h>

#include "schurcomp/spectral.hpp"
#include "schurcomp/verify.hpp"
#include "test_support.hpp"

using namespace schurcomp;
using namespace schurcomp::testing;

namespace {

struct Scalar {
  BlockSpectra spectra;
  CompletionCertificate cert;
};

Scalar scalar_instance(double lambda, double mu, double eps, Mode mode = Mode::kDefinite) {
  Scalar s{analyze_blocks(diag({lambda}), diag({mu})), {}};
  s.cert = assemble_completion(s.spectra, {{eps}, 1.0, mode});
  return s;
}

double residual(const ComplexMatrix& s, Complex eta, const ComplexVector& v) {
  return (s * v - eta * v).norm();
}

}  // namespace

TEST(Alphas, ClosedForm) {
  const auto a = eigendecompose_hermitian(diag({2}), EigenOrder::kNonincreasing);
  const auto d = eigendecompose_hermitian(diag({0}), EigenOrder::kNondecreasing);
  EXPECT_NEAR(compute_alphas(a, d, 1).alphas[0], 0.25, 1e-16);
  EXPECT_NEAR(alpha_value(3, -2), 25.0 / 36.0, 1e-16);
  EXPECT_NEAR(alpha_value(1, -1), 1.0, 1e-16);
  EXPECT_NEAR(alpha_value(1, -1), -(-1.0) / 1.0, 1e-16);
}

TEST(Alphas, NonpositiveLambda) {
  const auto a = eigendecompose_hermitian(diag({1, -1}), EigenOrder::kNonincreasing);
  const auto d = eigendecompose_hermitian(diag({-1, -2}), EigenOrder::kNondecreasing);
  EXPECT_NO_THROW(compute_alphas(a, d, 1));
  try {
    compute_alphas(a, d, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonpositiveLambda);
  }
}

TEST(Alphas, BoundsOnRandomFeasibleData) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const double kappa = std::vector<double>{0.5, 1.0, 2.0}[trial % 3];
    const double lambda = uniform_values(1, 0.1, 5, rng)[0];
    // mu < 0 with kappa^2 lambda + mu > 0.
    const double mu = -uniform_values(1, 1e-3, 0.999, rng)[0] * kappa * kappa * lambda;
    const double alpha = alpha_value(lambda, mu);
    EXPECT_GT(-mu / lambda, 0.0);
    EXPECT_LE(-mu / lambda, alpha * (1 + 1e-15));
    const double upper = std::pow((kappa * kappa + 1) / 2, 2);
    EXPECT_LT(alpha, upper);
  }
}

TEST(EtaPair, BranchConvention) {
  const auto eta = eta_pair(2, 0, 0.5);
  EXPECT_NEAR(eta.plus.real(), 1.0, 1e-15);
  EXPECT_NEAR(eta.plus.imag(), 1.0, 1e-15);
  EXPECT_EQ(eta.minus, std::conj(eta.plus));
}

TEST(Classify, Boundaries) {
  EXPECT_EQ(classify(3, -2, 0.0), CaseLabel::kE);
  EXPECT_EQ(classify(3, -2, 0.5), CaseLabel::kA);
  EXPECT_EQ(classify(3, -2, 2.0 / 3.0), CaseLabel::kB);
  EXPECT_EQ(classify(3, -2, 0.68), CaseLabel::kB);
  EXPECT_EQ(classify(3, -2, 25.0 / 36.0), CaseLabel::kD);
  EXPECT_EQ(classify(3, -2, 0.9), CaseLabel::kC);
  EXPECT_EQ(classify(2, 0, 3.0 / 16.0), CaseLabel::kB);
}

TEST(Predict, RealSplitScalar) {
  const auto s = scalar_instance(2, 0, 3.0 / 16.0);
  const auto p = predict_spectrum(s.cert, s.spectra);
  ASSERT_EQ(p.eigens.size(), 2u);
  EXPECT_NEAR(p.eigens[0].value.real(), 1.5, 1e-15);
  EXPECT_NEAR(p.eigens[1].value.real(), 0.5, 1e-15);
  EXPECT_EQ(p.eigens[0].label, CaseLabel::kB);
  EXPECT_TRUE(p.diagonalizable);
  // Characteristic polynomial of [[2, -sqrt3/2], [sqrt3/2, 0]]: z^2 - 2z + 3/4.
  const auto roots = quadratic_roots(2.0, 0.75);
  EXPECT_NEAR(std::abs(roots.first - p.eigens[0].value), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(roots.second - p.eigens[1].value), 0.0, 1e-15);
}

TEST(Predict, DoubleEigenvalueScalar) {
  const auto s = scalar_instance(2, 0, 0.25);
  const auto p = predict_spectrum(s.cert, s.spectra);
  EXPECT_FALSE(p.diagonalizable);
  ASSERT_EQ(p.jordan_chains.size(), 1u);
  EXPECT_EQ(p.eigens[0].value, Complex(1, 0));
  EXPECT_EQ(p.eigens[1].value, Complex(1, 0));
  EXPECT_EQ(p.eigens[0].label, CaseLabel::kD);
  EXPECT_FALSE(p.warnings.empty());
}

TEST(Predict, ComplexPairScalar) {
  const auto s = scalar_instance(2, 0, 0.5);
  const auto p = predict_spectrum(s.cert, s.spectra);
  EXPECT_TRUE(p.diagonalizable);
  EXPECT_NEAR(std::abs(p.eigens[0].value - Complex(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.eigens[1].value - Complex(1, -1)), 0.0, 1e-15);
  EXPECT_EQ(p.eigens[0].label, CaseLabel::kC);
}

TEST(Predict, SemidefiniteKernelIsInherited) {
  const auto spectra = analyze_blocks(diag({2, 1}), diag({-1, 0}));
  const auto cert = build_k(spectra, {{0.6, 0.0}, 1.0, Mode::kSemidefinite});
  const auto p = predict_spectrum(cert, spectra);
  ASSERT_EQ(p.eigens.size(), 4u);
  int inherited = 0;
  for (const auto& e : p.eigens) inherited += e.label == CaseLabel::kInherited;
  EXPECT_EQ(inherited, 2);
  const auto cmp = compare_spectra(p.values(), numeric_spectrum(cert.s), 1e-10);
  EXPECT_TRUE(cmp.matched);
}

TEST(Predict, DefiniteKernelIndexIsCaseE) {
  const auto spectra = analyze_blocks(diag({2, 1}), diag({-1, 0}));
  const auto cert = build_k(spectra, {{0.6, 0.0}, 1.0, Mode::kDefinite});
  const auto p = predict_spectrum(cert, spectra);
  bool found = false;
  for (const auto& e : p.eigens) {
    if (e.index == 1 && e.label == CaseLabel::kE) {
      found = true;
      if (e.origin == EigenOrigin::kEtaPlus) EXPECT_NEAR(e.value.real(), 1.0, 1e-15);
      if (e.origin == EigenOrigin::kEtaMinus) EXPECT_NEAR(e.value.real(), 0.0, 1e-15);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Predict, CertificateMismatch) {
  const auto s = scalar_instance(2, 0, 0.1);
  const auto other = analyze_blocks(diag({2, 1}), diag({1}));
  try {
    predict_spectrum(s.cert, other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCertificateMismatch);
  }
}

TEST(Predict, MatchesNumericOnRandomInstances) {
  Rng rng(31);
  std::uniform_int_distribution<int> dim(1, 8);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Index n = dim(rng), m = dim(rng);
    auto lambdas = uniform_values(n, -2, 4, rng);
    auto mus = uniform_values(m, -3, 3, rng);
    if (trial % 3 == 0) mus[0] = 0.0;
    const auto spectra =
        analyze_blocks(hermitian_with_spectrum(lambdas, rng), hermitian_with_spectrum(mus, rng));
    for (auto mode : {Mode::kDefinite, Mode::kSemidefinite}) {
      if (!check_feasible(spectra, 2.0, mode).feasible) continue;
      const auto cert = build_k(spectra, default_epsilons(spectra, 2.0, mode));
      const auto p = predict_spectrum(cert, spectra);
      ASSERT_EQ(p.eigens.size(), static_cast<std::size_t>(n + m));
      const auto cmp =
          compare_spectra(p.values(), numeric_spectrum(cert.s), 1e-8 * (1 + spectral_norm(cert.s)));
      EXPECT_TRUE(cmp.matched) << cmp.max_distance;
      ++checked;
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(Eigenvectors, ScalarResiduals) {
  const auto s = scalar_instance(2, 0, 3.0 / 16.0);
  const auto [vp, vm] = eigenvectors(s.cert, s.spectra, 0);
  EXPECT_LT(residual(s.cert.s, 1.5, vp), 1e-12);
  EXPECT_LT(residual(s.cert.s, 0.5, vm), 1e-12);
}

TEST(Eigenvectors, ComplexPairResiduals) {
  const auto s = scalar_instance(2, 0, 0.5);
  const auto [vp, vm] = eigenvectors(s.cert, s.spectra, 0);
  EXPECT_LT(residual(s.cert.s, Complex(1, 1), vp), 1e-12);
  EXPECT_LT(residual(s.cert.s, Complex(1, -1), vm), 1e-12);
}

TEST(Eigenvectors, InheritedVector) {
  const auto spectra = analyze_blocks(diag({3, 1}), diag({-2, 5}));
  const auto cert = build_k(spectra, default_epsilons(spectra, 1.0, Mode::kDefinite));
  const ComplexVector v = inherited_eigenvector(cert, spectra, 1);
  EXPECT_LT(residual(cert.s, 1.0, v), 1e-12);
  const ComplexVector w = inherited_eigenvector(cert, spectra, 3);
  EXPECT_LT(residual(cert.s, 5.0, w), 1e-12);
  EXPECT_THROW(inherited_eigenvector(cert, spectra, 0), Error);
}

TEST(Eigenvectors, ZeroKAllInherited) {
  Rng rng(6);
  const auto spectra = analyze_blocks(hermitian_with_spectrum({2, 1}, rng),
                                      hermitian_with_spectrum({1, 4}, rng));
  const auto cert = build_k(spectra, {{}, 1.0, Mode::kDefinite});
  for (Index j = 0; j < 4; ++j) {
    const ComplexVector v = inherited_eigenvector(cert, spectra, j);
    const double value = j < 2 ? spectra.lambda(j) : spectra.mu(j - 2);
    EXPECT_LT(residual(cert.s, value, v), 1e-12);
  }
}

TEST(Eigenvectors, RandomCoupledResiduals) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spectra = analyze_blocks(hermitian_with_spectrum({4, 2, 1}, rng),
                                        hermitian_with_spectrum({-1.5, -0.5, 2}, rng));
    const auto cert = build_k(spectra, default_epsilons(spectra, 1.0, Mode::kDefinite));
    const auto p = predict_spectrum(cert, spectra);
    for (Index i = 0; i < cert.r; ++i) {
      const auto [vp, vm] = eigenvectors(cert, spectra, i);
      const auto eta = eta_pair(spectra.lambda(i), spectra.mu(i),
                                cert.schedule.epsilons[static_cast<std::size_t>(i)]);
      EXPECT_LT(residual(cert.s, eta.plus, vp), 1e-10 * spectral_norm(cert.s));
      EXPECT_LT(residual(cert.s, eta.minus, vm), 1e-10 * spectral_norm(cert.s));
    }
  }
}

TEST(Eigenvectors, DegenerateThrows) {
  const auto s = scalar_instance(2, 0, 0.25);
  try {
    eigenvectors(s.cert, s.spectra, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJordanDegenerate);
  }
}

TEST(JordanChain, ScalarChainAndClosedFormVectors) {
  for (double a : {0.5, 1.0, 2.0, 10.0}) {
    const auto s = scalar_instance(a, 0, 0.25);
    const auto chain = jordan_chain(s.cert, s.spectra, 0);
    const ComplexMatrix shifted = s.cert.s - chain.eigenvalue * ComplexMatrix::Identity(2, 2);
    EXPECT_LT((shifted * chain.lead - chain.tail).norm(), 1e-12 * a);
    EXPECT_LT((shifted * chain.tail).norm(), 1e-12 * a);
    EXPECT_GT(chain.tail.norm(), 0.5);
    // Chain (1/a, -1/a), (1, 1) from the direct 2x2 computation.
    const ComplexVector lead = (ComplexVector(2) << 1.0 / a, -1.0 / a).finished();
    const ComplexVector tail = (ComplexVector(2) << 1.0, 1.0).finished();
    EXPECT_LT((shifted * lead - tail).norm(), 1e-12);
    EXPECT_LT((shifted * tail).norm(), 1e-12 * a);
  }
}

TEST(JordanChain, RankProbeOnLiftedInstance) {
  Rng rng(17);
  const auto spectra = analyze_blocks(hermitian_with_spectrum({3, 1}, rng),
                                      hermitian_with_spectrum({-2, 5}, rng));
  const auto cert = build_k(spectra, {{25.0 / 36.0}, 1.0, Mode::kDefinite});
  const auto chain = jordan_chain(cert, spectra, 0);
  EXPECT_NEAR(chain.eigenvalue.real(), 0.5, 1e-15);
  const ComplexMatrix shifted = cert.s - chain.eigenvalue * ComplexMatrix::Identity(4, 4);
  EXPECT_LT((shifted * chain.lead - chain.tail).norm(), 1e-10);
  EXPECT_LT((shifted * chain.tail).norm(), 1e-10);
  const auto probe = jordan_rank_probe(cert.s, chain.eigenvalue);
  EXPECT_EQ(probe.d1, 1);
  EXPECT_EQ(probe.d2, 2);
}

TEST(JordanChain, NotDegenerate) {
  const auto s = scalar_instance(2, 0, 0.1);
  try {
    jordan_chain(s.cert, s.spectra, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotDegenerate);
  }
}

TEST(RootLocus, ScalarGrid) {
  const auto locus = root_locus(2, 0, {0.5, 0.1, 0.25}, 1.0, Mode::kDefinite);
  ASSERT_EQ(locus.points.size(), 3u);
  EXPECT_EQ(locus.points[0].epsilon, 0.1);
  EXPECT_EQ(locus.points[0].label, CaseLabel::kB);
  EXPECT_EQ(locus.points[0].plus.imag(), 0.0);
  EXPECT_GT(locus.points[0].plus.real(), locus.points[0].minus.real());
  EXPECT_EQ(locus.points[1].label, CaseLabel::kD);
  EXPECT_NEAR(locus.points[1].plus.real(), 1.0, 1e-15);
  EXPECT_EQ(locus.points[2].label, CaseLabel::kC);
  EXPECT_NEAR(locus.points[2].plus.imag(), 1.0, 1e-15);
}

TEST(RootLocus, CaseCReachability) {
  EXPECT_TRUE(root_locus(3, -2, {0.7}, 0.9, Mode::kDefinite).case_c_reachable);
  const auto blocked = root_locus(1, -0.5, {0.36, 0.2, 0.1}, 0.6, Mode::kDefinite);
  EXPECT_FALSE(blocked.case_c_reachable);
  EXPECT_NEAR(blocked.alpha, 9.0 / 16.0, 1e-16);
  for (const auto& pt : blocked.points) {
    EXPECT_EQ(pt.plus.imag(), 0.0);
    EXPECT_EQ(pt.minus.imag(), 0.0);
  }
}

TEST(RootLocus, GridOutOfRange) {
  for (double eps : {-0.1, 1.5}) {
    try {
      root_locus(2, 0, {eps}, 1.0, Mode::kDefinite);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kGridOutOfRange);
    }
  }
}

TEST(RootLocus, CsvHasBoundaryMarkers) {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
  grid.back() = 1.0;
  const auto csv = root_locus_csv(root_locus(3, -2, grid, 1.0, Mode::kDefinite));
  EXPECT_NE(csv.find("# boundary lower=-mu/lambda=0.66666666666666663"), std::string::npos);
  EXPECT_NE(csv.find("# boundary alpha=0.69444444444444442"), std::string::npos);
  EXPECT_NE(csv.find("epsilon,re_plus,im_plus,re_minus,im_minus,label\n"), std::string::npos);
  EXPECT_NE(csv.find("\n0,3,0,-2,0,e\n"), std::string::npos);
}

TEST(CaseBounds, SampledRanges) {
  Rng rng(23);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = 0.2 + 4 * u(rng);
    const double mu = -lambda * 0.9 * u(rng);
    const double lo = -mu / lambda;
    const double alpha = alpha_value(lambda, mu);
    {
      const auto eta = eta_pair(lambda, mu, lo * u(rng));
      EXPECT_GT(lambda, eta.plus.real());
      EXPECT_GT(eta.plus.real(), 0.0);
      EXPECT_GT(0.0, eta.minus.real());
      EXPECT_GT(eta.minus.real(), mu);
    }
    {
      const double eps = lo + (alpha - lo) * u(rng);
      const auto eta = eta_pair(lambda, mu, eps);
      EXPECT_EQ(classify(lambda, mu, eps), CaseLabel::kB);
      EXPECT_GE(std::max(lambda + mu, 0.0) + 1e-9, eta.plus.real());
      EXPECT_GT(eta.plus.real(), eta.minus.real());
      EXPECT_GE(eta.minus.real(), std::min(lambda + mu, 0.0) - 1e-9);
    }
    {
      const auto eta = eta_pair(lambda, mu, alpha + 0.5 * u(rng));
      EXPECT_NE(eta.plus.imag(), 0.0);
      EXPECT_EQ(eta.plus, std::conj(eta.minus));
    }
  }
}
