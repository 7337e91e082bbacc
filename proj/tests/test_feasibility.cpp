#include <gtest/gtest.h>

#include "schurcomp/completion.hpp"
#include "schurcomp/feasibility.hpp"
#include "test_support.hpp"

using namespace schurcomp;
using namespace schurcomp::testing;

namespace {

FeasibilityVerdict verdict(const ComplexMatrix& a, const ComplexMatrix& d, double kappa, Mode mode) {
  return check_feasible(analyze_blocks(a, d), kappa, mode);
}

// Brute-force oracle: the scalar conditions enumerated straight from the
// sorted eigenvalue lists.
bool oracle_feasible(std::vector<double> lambdas, std::vector<double> mus, double kappa, Mode mode,
                     double tol) {
  std::sort(lambdas.rbegin(), lambdas.rend());
  std::sort(mus.begin(), mus.end());
  std::size_t k = 0, r = 0, p = 0;
  for (double l : lambdas) k += l > tol;
  for (double m : mus) {
    r += m <= tol;
    p += std::abs(m) <= tol;
  }
  const std::size_t scope = r - p;
  if (mode == Mode::kDefinite ? r > k : scope > k) return false;
  for (std::size_t i = 0; i < scope; ++i) {
    const double margin = kappa * kappa * lambdas[i] + mus[i];
    if (mode == Mode::kDefinite ? !(margin > tol) : !(margin >= -tol)) return false;
  }
  return true;
}

}  // namespace

TEST(CheckFeasible, HandExample) {
  const auto v = verdict(diag({3, 1}), diag({-2, 5}), 1.0, Mode::kDefinite);
  EXPECT_TRUE(v.feasible);
  EXPECT_TRUE(v.rank_condition_ok);
  EXPECT_EQ(v.k, 2);
  EXPECT_EQ(v.r, 1);
  EXPECT_EQ(v.p, 0);
  EXPECT_NEAR(v.min_margin, 1.0, 1e-12);
}

TEST(CheckFeasible, KernelOnlyIsVacuous) {
  const auto v = verdict(diag({2}), diag({0}), 1.0, Mode::kDefinite);
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.r, 1);
  EXPECT_EQ(v.p, 1);
  EXPECT_TRUE(v.violated_indices.empty());
}

TEST(CheckFeasible, RankObstruction) {
  for (double kappa : {0.1, 1.0, 100.0}) {
    const auto v = verdict(diag({1}), diag({-2, -3}), kappa, Mode::kDefinite);
    EXPECT_FALSE(v.feasible);
    EXPECT_FALSE(v.rank_condition_ok);
    EXPECT_EQ(v.r, 2);
    EXPECT_EQ(v.k, 1);
  }
}

TEST(CheckFeasible, ScalarConditionFailsBelowThreshold) {
  // kappa^2 * 3 - 2 > 0 needs kappa > sqrt(2/3).
  const auto lo = verdict(diag({3, 1}), diag({-2, 5}), 0.8, Mode::kDefinite);
  EXPECT_FALSE(lo.feasible);
  EXPECT_TRUE(lo.rank_condition_ok);
  ASSERT_EQ(lo.violated_indices.size(), 1u);
  EXPECT_EQ(lo.violated_indices[0], 0);
  EXPECT_TRUE(verdict(diag({3, 1}), diag({-2, 5}), 0.82, Mode::kDefinite).feasible);
}

TEST(CheckFeasible, SemidefiniteAcceptsEqualityAndIgnoresKernel) {
  // kappa^2 lambda + mu = 0 exactly: semidefinite only.
  EXPECT_FALSE(verdict(diag({1}), diag({-1}), 1.0, Mode::kDefinite).feasible);
  EXPECT_TRUE(verdict(diag({1}), diag({-1}), 1.0, Mode::kSemidefinite).feasible);
  // Kernel of D does not count against k in semidefinite mode.
  EXPECT_FALSE(verdict(diag({1, -1}), diag({-1, 0}), 2.0, Mode::kDefinite).feasible);
  EXPECT_TRUE(verdict(diag({1, -1}), diag({-1, 0}), 2.0, Mode::kSemidefinite).feasible);
}

TEST(CheckFeasible, BadKappa) {
  const auto s = analyze_blocks(diag({1}), diag({1}));
  for (double kappa : {0.0, -1.0}) {
    try {
      check_feasible(s, kappa, Mode::kDefinite);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadKappa);
    }
  }
}

TEST(CheckFeasible, MatchesEnumerationOracle) {
  Rng rng(42);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = dim(rng), m = dim(rng);
    auto lambdas = uniform_values(n, -3, 3, rng);
    auto mus = uniform_values(m, -3, 3, rng);
    if (trial % 5 == 0) mus[0] = 0.0;
    const ComplexMatrix a = hermitian_with_spectrum(lambdas, rng);
    const ComplexMatrix d = hermitian_with_spectrum(mus, rng);
    const auto spectra = analyze_blocks(a, d);
    for (double kappa : {0.5, 1.0, 2.0}) {
      for (auto mode : {Mode::kDefinite, Mode::kSemidefinite}) {
        const auto v = check_feasible(spectra, kappa, mode);
        EXPECT_EQ(v.feasible, oracle_feasible(lambdas, mus, kappa, mode, spectra.zero_tol));
        EXPECT_EQ(v.feasible, v.rank_condition_ok && v.violated_indices.empty());
      }
    }
  }
}

TEST(Witness, RankObstructionScalarA) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix k = random_complex(1, 2, rng);
    const auto w = infeasibility_witness(diag({1}), diag({-1, -1}), k, Mode::kDefinite);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->kind, WitnessKind::kRankObstruction);
    EXPECT_NEAR(w->v.norm(), 1.0, 1e-12);
    const ComplexMatrix schur = diag({-1, -1}) + k.adjoint() * k;
    const double form = (w->v.adjoint() * schur * w->v)(0, 0).real();
    EXPECT_LE(form, 1e-9);
    EXPECT_NEAR(form, w->quadratic_form, 1e-12);
  }
}

TEST(Witness, ThisKFailsAlthoughFeasible) {
  const auto w = infeasibility_witness(diag({1, 1}), diag({-1, 5}), ComplexMatrix::Zero(2, 2),
                                       Mode::kDefinite);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kind, WitnessKind::kThisK);
  EXPECT_NEAR(w->quadratic_form, -1.0, 1e-12);
}

TEST(Witness, NoneForValidCompletion) {
  const auto spectra = analyze_blocks(diag({3, 1}), diag({-2, 5}));
  const auto cert = build_k(spectra, default_epsilons(spectra, 1.0, Mode::kDefinite));
  EXPECT_FALSE(infeasibility_witness(spectra.a, spectra.d, cert.k, Mode::kDefinite).has_value());
}

TEST(Witness, DimensionMismatch) {
  try {
    infeasibility_witness(diag({1}), diag({1, 2}), ComplexMatrix::Zero(2, 2), Mode::kDefinite);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Witness, RandomObstructedInstances) {
  Rng rng(99);
  std::uniform_int_distribution<int> dim(1, 5);
  int produced = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = dim(rng);
    const Index m = dim(rng) + 1;
    std::vector<double> lambdas = uniform_values(n, -3, 3, rng);
    std::vector<double> mus = uniform_values(m, -3, 0.5, rng);
    const ComplexMatrix a = hermitian_with_spectrum(lambdas, rng);
    const ComplexMatrix d = hermitian_with_spectrum(mus, rng);
    const auto spectra = analyze_blocks(a, d);
    for (auto mode : {Mode::kDefinite, Mode::kSemidefinite}) {
      const Index obstruction = mode == Mode::kDefinite ? spectra.r() : spectra.r() - spectra.p();
      if (obstruction <= spectra.k()) continue;
      const ComplexMatrix k = random_complex(n, m, rng) * 2.0;
      const auto w = infeasibility_witness(a, d, k, mode);
      ASSERT_TRUE(w.has_value());
      ++produced;
      const ComplexMatrix schur = d + k.adjoint() * a * k;
      EXPECT_NEAR(w->v.norm(), 1.0, 1e-12);
      EXPECT_LE((w->v.adjoint() * schur * w->v)(0, 0).real(), 1e-9 * std::max(1.0, schur.norm()));
    }
  }
  EXPECT_GT(produced, 10);
}

TEST(MinimalKappa, BisectsToThreshold) {
  const auto spectra = analyze_blocks(diag({3, 1}), diag({-2, 5}));
  const auto kappa = minimal_kappa(spectra, Mode::kDefinite);
  ASSERT_TRUE(kappa.has_value());
  EXPECT_NEAR(*kappa, std::sqrt(2.0 / 3.0), 1e-8);
  EXPECT_FALSE(minimal_kappa(analyze_blocks(diag({1}), diag({-2, -3})), Mode::kDefinite));
  EXPECT_EQ(*minimal_kappa(analyze_blocks(diag({1}), diag({2})), Mode::kDefinite), 0.0);
}
