// Copyright 2026 The qelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qelicit/classical.hpp"
#include "qelicit/extended_hermitian.hpp"
#include "qelicit/measurement.hpp"

namespace qelicit {

/// The measurement a report induces together with the payment for each of
/// its outcomes.
struct ScoredMeasurement {
  Measurement measurement;
  std::vector<ExtendedReal> payments;
};

/// A quantum score S = (s, mu): report rho' -> measurement mu(rho') and
/// payments s(rho', y).
///
/// `assess` produces both at once so that report-dependent work (typically
/// a spectral decomposition) happens once per report. When the measurement
/// does not depend on the report, `fixed_measurement` holds it.
struct QuantumScore {
  std::string name;
  std::function<ScoredMeasurement(const DensityMatrix&)> assess;
  std::function<bool(const DensityMatrix&)> report_domain = nullptr;
  std::optional<Measurement> fixed_measurement = std::nullopt;

  bool accepts_report(const DensityMatrix& report) const {
    return !report_domain || report_domain(report);
  }

  ScoredMeasurement at(const DensityMatrix& report) const {
    if (!accepts_report(report)) throw DomainError(name + ": report outside the score's domain");
    auto sm = assess(report);
    if (sm.payments.size() != sm.measurement.size()) {
      throw InvariantViolation(name + ": payment count does not match outcome count");
    }
    return sm;
  }

  Measurement measure(const DensityMatrix& report) const { return at(report).measurement; }

  /// s(rho', y). Outcomes beyond |Y(rho')| are not defined.
  ExtendedReal score(const DensityMatrix& report, std::size_t y) const {
    return at(report).payments.at(y);
  }

  ExtendedReal expected(const DensityMatrix& report, const DensityMatrix& belief) const;
};

/// E_{Y ~ <mu(rho'), rho>} s(rho', Y) with 0 * (-inf) = 0.
inline ExtendedReal expected_score(const ScoredMeasurement& sm, const DensityMatrix& belief) {
  const auto p = apply_measurement(sm.measurement, belief);
  ExtendedReal total(0.0);
  for (std::size_t y = 0; y < sm.payments.size(); ++y) {
    total += weight_payment(p[static_cast<Eigen::Index>(y)], sm.payments[y], tol::prob_zero);
  }
  return total;
}

inline ExtendedReal expected_score(const QuantumScore& s, const DensityMatrix& report,
                                   const DensityMatrix& belief) {
  require_same_dim(report.dim(), belief.dim(), "expected_score");
  return expected_score(s.at(report), belief);
}

inline ExtendedReal QuantumScore::expected(const DensityMatrix& report,
                                           const DensityMatrix& belief) const {
  return expected_score(*this, report, belief);
}

/// Expected-score function rho', rho -> S(rho'; rho) with no measurement
/// attached. Scores that are not extended linear in rho (and therefore not
/// physically implementable) only exist in this form.
struct ExpectedScoreFn {
  std::string name;
  std::function<ExtendedReal(const DensityMatrix&, const DensityMatrix&)> fn;
  std::function<bool(const DensityMatrix&)> report_domain = nullptr;

  bool accepts_report(const DensityMatrix& report) const {
    return !report_domain || report_domain(report);
  }
  ExtendedReal expected(const DensityMatrix& report, const DensityMatrix& belief) const {
    if (!accepts_report(report)) throw DomainError(name + ": report outside the score's domain");
    return fn(report, belief);
  }

  static ExpectedScoreFn of(const QuantumScore& s) {
    return {s.name,
            [s](const DensityMatrix& r, const DensityMatrix& b) { return expected_score(s, r, b); },
            s.report_domain};
  }
};

/// Z_S(rho') = sum_y mu(rho')_y s(rho', y) as an extended Hermitian matrix,
/// so that S(rho'; rho) = <Z_S(rho'), rho>.
inline ExtendedHermitian z_matrix(const ScoredMeasurement& sm) {
  std::vector<WeightedPsd> terms;
  terms.reserve(sm.payments.size());
  for (std::size_t y = 0; y < sm.payments.size(); ++y) {
    terms.push_back({sm.measurement[y], sm.payments[y]});
  }
  return canonicalize_extended(terms);
}

inline ExtendedHermitian z_matrix(const QuantumScore& s, const DensityMatrix& report) {
  return z_matrix(s.at(report));
}

/// PVM plus payments realizing an extended Hermitian matrix: eigenvectors of
/// the finite part on ker(B) pay their eigenvalue, range(B) pays -inf.
inline ScoredMeasurement projective_realization(const ExtendedHermitian& z) {
  const auto n = z.dim();
  if (!z.has_infinite_part()) {
    const auto sd = spectral_decompose(z.finite_part());
    std::vector<ExtendedReal> pay(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) pay[static_cast<std::size_t>(i)] = sd.eigenvalues(i);
    return {Measurement::from_basis(sd.eigenvectors), std::move(pay)};
  }
  const auto bsd = spectral_decompose(z.infinite_part());
  const double thr = tol::zero_rel * std::max(1.0, z.infinite_part().trace());
  Eigen::Index r = 0;
  while (r < n && bsd.eigenvalues(r) > thr) ++r;
  const ComplexMatrix range = bsd.eigenvectors.leftCols(r);
  const ComplexMatrix kernel = bsd.eigenvectors.rightCols(n - r);
  ComplexMatrix basis(n, n);
  std::vector<ExtendedReal> pay;
  pay.reserve(static_cast<std::size_t>(n));
  if (n - r > 0) {
    const ComplexMatrix ak = kernel.adjoint() * z.finite_part().matrix() * kernel;
    const auto ksd = spectral_decompose(HermitianMatrix::unchecked(ak));
    basis.leftCols(n - r) = kernel * ksd.eigenvectors;
    for (Eigen::Index i = 0; i < n - r; ++i) pay.emplace_back(ksd.eigenvalues(i));
  }
  basis.rightCols(r) = range;
  for (Eigen::Index i = 0; i < r; ++i) pay.push_back(kNegInf);
  return {Measurement::from_basis(basis), std::move(pay)};
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Constant measurement mu_fixed; payment s(rho', y) = s_hat(<mu_fixed, rho'>, y).
inline QuantumScore fixed_measurement_score(ClassicalScoringRule rule, Measurement mu_fixed) {
  std::string name = "fixed:" + rule.name;
  auto assess = [rule = std::move(rule), mu_fixed](const DensityMatrix& report) {
    const auto p = apply_measurement(mu_fixed, report);
    return ScoredMeasurement{mu_fixed, rule.payments(p)};
  };
  return {std::move(name), std::move(assess), nullptr, std::move(mu_fixed)};
}

/// s(rho', y) = f(<mu, rho'>) + <d_{rho'}, 1_y - <mu, rho'>> for a convex f on
/// the outcome simplex. f is self-checked as in from_convex.
inline QuantumScore fixed_meas_from_convex(ConvexPotential f, Measurement mu_fixed,
                                           const ConvexitySelfCheck& check = {}) {
  ConvexitySelfCheck c = check;
  c.dims = {static_cast<Eigen::Index>(mu_fixed.size())};
  return fixed_measurement_score(from_convex(std::move(f), c), std::move(mu_fixed));
}

/// mu(rho') = {I - rho', rho'}, s(rho', y) = 2y - <rho', rho'>.
inline QuantumScore binary_brier() {
  return {"binary-brier", [](const DensityMatrix& report) {
            const auto& r = report.hermitian();
            const double purity = hs_inner(r, r);
            Measurement mu = Measurement::from_psd_elements(
                {HermitianMatrix::identity(r.dim()) - r, r});
            return ScoredMeasurement{std::move(mu), {ExtendedReal(-purity), ExtendedReal(2.0 - purity)}};
          }};
}

/// Spectral PVM of the report; classical rule applied to its eigenvalues.
inline ScoredMeasurement spectral_assessment(const ClassicalScoringRule& rule,
                                             const DensityMatrix& report) {
  const auto sd = spectral_decompose(report.hermitian());
  RealVector lambda = sd.eigenvalues.cwiseMax(0.0);
  lambda /= lambda.sum();
  return {Measurement::from_basis(sd.eigenvectors), rule.payments(OutcomeDistribution(lambda))};
}

/// Projective Brier: spectral PVM, s(rho', y) = 2 lambda_y - <rho', rho'>.
inline QuantumScore projective_brier() {
  return {"projective-brier", [](const DensityMatrix& report) {
            const auto sd = spectral_decompose(report.hermitian());
            const double purity = hs_inner(report.hermitian(), report.hermitian());
            std::vector<ExtendedReal> pay(static_cast<std::size_t>(sd.dim()));
            for (Eigen::Index y = 0; y < sd.dim(); ++y) {
              pay[static_cast<std::size_t>(y)] = 2.0 * sd.eigenvalues(y) - purity;
            }
            return ScoredMeasurement{Measurement::from_basis(sd.eigenvectors), std::move(pay)};
          }};
}

/// Largest deviation from s(pi p, z) = s(p, pi(z)) over sampled p and
/// permutations; +inf when -inf payments disagree.
inline double permutation_invariance_defect(const ClassicalScoringRule& rule,
                                            std::size_t trials = 64, std::uint64_t seed = 0x9e1) {
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = stream_rng(seed, t);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(t % 4);
    RealVector p = random_simplex(n, rng);
    if (t % 3 == 0) {
      p(0) = 0.0;
      p /= p.sum();
    }
    std::vector<Eigen::Index> pi(static_cast<std::size_t>(n));
    std::iota(pi.begin(), pi.end(), Eigen::Index{0});
    std::shuffle(pi.begin(), pi.end(), rng);
    RealVector q(n);
    for (Eigen::Index z = 0; z < n; ++z) q(z) = p(pi[static_cast<std::size_t>(z)]);
    const auto sp = rule.payments(OutcomeDistribution(p));
    const auto sq = rule.payments(OutcomeDistribution(q));
    for (Eigen::Index z = 0; z < n; ++z) {
      const auto a = sq[static_cast<std::size_t>(z)];
      const auto b = sp[static_cast<std::size_t>(pi[static_cast<std::size_t>(z)])];
      if (a.is_neg_inf() || b.is_neg_inf()) {
        if (a.is_neg_inf() != b.is_neg_inf()) return std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, std::abs(a.value() - b.value()));
    }
  }
  return worst;
}

/// Spectral score S[s_hat]: measure in the report's eigenbasis, pay
/// s_hat(lambda(rho'), y). The rule must be permutation invariant (checked by
/// sampling; DomainError otherwise).
inline QuantumScore spectral_score(ClassicalScoringRule rule) {
  if (permutation_invariance_defect(rule) > 1e-12) {
    throw DomainError("spectral_score(" + rule.name + "): rule is not permutation invariant");
  }
  std::string name = "spectral:" + rule.name;
  return {std::move(name), [rule = std::move(rule)](const DensityMatrix& report) {
            return spectral_assessment(rule, report);
          }};
}

/// S[log]: expected score <log rho', rho>.
inline QuantumScore log_spectral() { return spectral_score(log_rule()); }

/// Truthful score of the form S(rho'; rho) = F(rho') + <dF(rho'), rho - rho'>
/// for a convex F with (finite) subgradient selection dF, realized as a
/// projective score on the eigenbasis of
/// Z(rho') = (F(rho') - <dF(rho'), rho'>) I + dF(rho').
inline QuantumScore score_from_potential(std::string name,
                                         std::function<double(const DensityMatrix&)> f,
                                         std::function<HermitianMatrix(const DensityMatrix&)> df,
                                         std::function<bool(const DensityMatrix&)> domain = nullptr) {
  auto assess = [f = std::move(f), df = std::move(df)](const DensityMatrix& report) {
    const HermitianMatrix d = df(report);
    const double shift = f(report) - hs_inner(d, report.hermitian());
    const HermitianMatrix z = d + shift * HermitianMatrix::identity(report.dim());
    return projective_realization(ExtendedHermitian::finite(z));
  };
  return {std::move(name), std::move(assess), std::move(domain)};
}

// ---------------------------------------------------------------------------
// Entropies
// ---------------------------------------------------------------------------

/// H(rho) = -<log rho, rho>, with 0 log 0 = 0.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  return -ext_inner(matrix_log(rho), rho.hermitian()).value();
}

inline double shannon_entropy(const RealVector& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) h -= p(i) * std::log(p(i));
  }
  return h;
}

/// D(rho || sigma) = -H(rho) - <log sigma, rho>. Returns +infinity (as a
/// double) when rho has weight on ker(sigma), i.e. when <log sigma, rho> = -inf.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
  const ExtendedReal cross = ext_inner(matrix_log(sigma), rho.hermitian());
  if (cross.is_neg_inf()) return std::numeric_limits<double>::infinity();
  return -von_neumann_entropy(rho) - cross.value();
}

// ---------------------------------------------------------------------------
// Expressiveness
// ---------------------------------------------------------------------------

/// Reports used to probe a score for -inf payments.
inline std::vector<DensityMatrix> finiteness_probes(Eigen::Index n) {
  std::vector<DensityMatrix> probes;
  for (Eigen::Index k = 0; k < n; ++k) probes.push_back(DensityMatrix::pure(ComplexVector::Unit(n, k)));
  probes.push_back(DensityMatrix::maximally_mixed(n));
  Rng rng = stream_rng(0xf1f1, 0);
  for (int i = 0; i < 4; ++i) probes.push_back(DensityMatrix::pure(random_pure(n, rng)));
  if (n > 1) probes.push_back(random_density(n, n - 1, rng));
  return probes;
}

/// Fixed-measurement score equivalent to a finite score S: solve
/// sum_y alpha_y(rho') mu_y = Z_S(rho') (minimum-norm least squares, exact for
/// complete mu) and pay s(rho', y) = alpha_y(rho').
///
/// Throws DomainError if mu is not tomographically complete or S pays -inf
/// (at construction on probe reports, or later on any report).
inline QuantumScore fixed_meas_expression(const QuantumScore& s, Measurement mu_fixed) {
  TomographicMap map(mu_fixed);
  if (!map.complete()) throw DomainError("fixed_meas_expression: measurement is not complete");
  for (const auto& probe : finiteness_probes(mu_fixed.dim())) {
    if (!s.accepts_report(probe)) continue;
    for (const auto& pay : s.at(probe).payments) {
      if (pay.is_neg_inf()) {
        throw DomainError("fixed_meas_expression: " + s.name + " is not finite");
      }
    }
  }
  std::string name = "fixed-expr(" + s.name + ")";
  auto assess = [s, map](const DensityMatrix& report) {
    const auto sm = s.at(report);
    for (const auto& pay : sm.payments) {
      if (pay.is_neg_inf()) throw DomainError("fixed_meas_expression: " + s.name + " is not finite");
    }
    const auto z = z_matrix(sm);
    const RealVector alpha = map.pinv_adjoint(z.finite_part());
    std::vector<ExtendedReal> pay(static_cast<std::size_t>(alpha.size()));
    for (Eigen::Index y = 0; y < alpha.size(); ++y) pay[static_cast<std::size_t>(y)] = alpha(y);
    return ScoredMeasurement{map.measurement(), std::move(pay)};
  };
  return {std::move(name), std::move(assess), s.report_domain, std::move(mu_fixed)};
}

/// Projective score equivalent to S, built from the spectral decomposition of
/// Z_S(rho') (its -inf directions paying -inf).
inline QuantumScore projective_expression(const QuantumScore& s) {
  std::string name = "projective-expr(" + s.name + ")";
  auto assess = [s](const DensityMatrix& report) {
    return projective_realization(z_matrix(s, report));
  };
  return {std::move(name), std::move(assess), s.report_domain};
}

}  // namespace qelicit
