#include "schurcomp/completion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace schurcomp {

namespace {

double alpha_of(double lambda, double mu) {
  const double diff = lambda - mu;
  return diff * diff / (4.0 * lambda * lambda);
}

[[noreturn]] void invalid(Index i, const std::string& what) {
  std::ostringstream os;
  os << "epsilon[" << i << "]: " << what;
  throw Error(ErrorCode::kScheduleInvalid, os.str());
}

}  // namespace

EpsilonSchedule default_epsilons(const BlockSpectra& spectra, double kappa, Mode mode) {
  const auto verdict = check_feasible(spectra, kappa, mode);
  if (!verdict.feasible) {
    throw Error(ErrorCode::kInfeasibleInput,
                verdict.rank_condition_ok ? "scalar condition kappa^2 lambda_i + mu_i fails"
                                          : "rank obstruction r > k");
  }
  const double k2 = kappa * kappa;
  const Index r = spectra.r();
  const Index scope = r - spectra.p();

  EpsilonSchedule schedule;
  schedule.kappa = kappa;
  schedule.mode = mode;
  schedule.epsilons.assign(static_cast<std::size_t>(r), 0.0);

  for (Index i = 0; i < scope; ++i) {
    const double lambda = spectra.lambda(i);
    const double mu = spectra.mu(i);
    const double lo = -mu / lambda;
    const double alpha = alpha_of(lambda, mu);
    const double hi = std::min(alpha, k2);
    double eps = 0.0;
    if (lo < hi) {
      eps = 0.5 * (lo + hi);
    } else if (lo < k2) {
      // lambda_i + mu_i = 0, so lo = alpha_i: only the complex range remains.
      eps = 0.5 * (std::max(lo, alpha) + k2);
    } else {
      // Semidefinite with kappa^2 lambda_i + mu_i = 0 up to tolerance.
      eps = k2;
    }
    schedule.epsilons[static_cast<std::size_t>(i)] = eps;
  }
  if (mode == Mode::kDefinite) {
    for (Index j = scope; j < r; ++j) {
      const double alpha = alpha_of(spectra.lambda(j), spectra.mu(j));
      schedule.epsilons[static_cast<std::size_t>(j)] = 0.5 * std::min(alpha, k2);
    }
  }
  return schedule;
}

void validate_schedule(const BlockSpectra& spectra, const EpsilonSchedule& schedule) {
  const Index r = spectra.r();
  const Index scope = r - spectra.p();
  if (static_cast<Index>(schedule.epsilons.size()) != r) {
    throw Error(ErrorCode::kScheduleInvalid, "expected " + std::to_string(r) +
                                                 " epsilons, got " +
                                                 std::to_string(schedule.epsilons.size()));
  }
  if (!(schedule.kappa > 0.0)) throw Error(ErrorCode::kBadKappa, "kappa must be positive");
  const double k2 = schedule.kappa * schedule.kappa;
  const bool definite = schedule.mode == Mode::kDefinite;
  for (Index i = 0; i < r; ++i) {
    const double eps = schedule.epsilons[static_cast<std::size_t>(i)];
    if (!std::isfinite(eps)) invalid(i, "not finite");
    if (i < scope) {
      if (i >= spectra.k()) invalid(i, "lambda_i is not positive (rank condition)");
      const double slack = eps * spectra.lambda(i) + spectra.mu(i);
      if (definite) {
        if (!(eps > 0.0 && eps < k2)) invalid(i, "must lie in (0, kappa^2)");
        if (!(slack > 0.0)) invalid(i, "eps_i lambda_i + mu_i must be positive");
      } else {
        if (!(eps > 0.0 && eps <= k2)) invalid(i, "must lie in (0, kappa^2]");
        if (!(slack >= -spectra.zero_tol)) invalid(i, "eps_i lambda_i + mu_i must be nonnegative");
      }
    } else if (definite) {
      if (i >= spectra.k()) invalid(i, "lambda_j is not positive (rank condition)");
      if (!(eps >= 0.0 && eps < k2)) invalid(i, "must lie in [0, kappa^2)");
    } else if (eps != 0.0) {
      invalid(i, "kernel indices must be zero in semidefinite mode");
    }
  }
}

CompletionCertificate assemble_completion(const BlockSpectra& spectra,
                                          const EpsilonSchedule& schedule) {
  const Index n = spectra.n();
  const Index m = spectra.m();
  const Index count = static_cast<Index>(schedule.epsilons.size());
  if (count > m) {
    throw Error(ErrorCode::kDimensionMismatch, "more epsilons than columns of K");
  }
  CompletionCertificate cert;
  cert.a = spectra.a;
  cert.d = spectra.d;
  cert.e = ComplexMatrix::Zero(n, m);
  for (Index i = 0; i < count; ++i) {
    const double eps = schedule.epsilons[static_cast<std::size_t>(i)];
    if (eps < 0.0) throw Error(ErrorCode::kScheduleInvalid, "negative epsilon");
    if (i >= n) {
      if (eps != 0.0) throw Error(ErrorCode::kDimensionMismatch, "epsilon index beyond n");
      continue;
    }
    cert.e(i, i) = std::sqrt(eps);
  }
  cert.k = spectra.eigs_a.vectors * cert.e * spectra.eigs_d.vectors.adjoint();
  const ComplexMatrix ak = spectra.a * cert.k;
  cert.s = assemble_blocks({spectra.a, -ak, cert.k.adjoint() * spectra.a, spectra.d});
  cert.schur = hermitian_part(spectra.d + cert.k.adjoint() * ak);
  cert.schedule = schedule;
  cert.k_count = spectra.k();
  cert.r = spectra.r();
  cert.p = spectra.p();
  cert.zero_tol = spectra.zero_tol;
  return cert;
}

CompletionCertificate build_k(const BlockSpectra& spectra, const EpsilonSchedule& schedule) {
  validate_schedule(spectra, schedule);
  return assemble_completion(spectra, schedule);
}

}  // namespace schurcomp
