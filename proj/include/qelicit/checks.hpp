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

#include <algorithm>
#include <complex>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "qelicit/parallel.hpp"
#include "qelicit/quantum_score.hpp"
#include "qelicit/random.hpp"

namespace qelicit {

/// Anything with an expected score S(rho'; rho) and a report domain.
template <typename S>
concept ExpectedScorer = requires(const S& s, const DensityMatrix& r) {
  { s.expected(r, r) } -> std::same_as<ExtendedReal>;
  { s.accepts_report(r) } -> std::same_as<bool>;
  { s.name } -> std::convertible_to<std::string>;
};

enum class TruthMode { weak, strict };

struct CheckConfig {
  std::size_t trials = 10000;
  std::vector<Eigen::Index> dims{2, 3, 4};
  std::uint64_t seed = 1;
  double margin = 1e-9;             // S(rho'; rho) may exceed S(rho; rho) by this much
  double tie_gap = 1e-9;            // strict mode: |gap| at or below this is a tie
  double distinct_distance = 1e-6;  // strict mode: Frobenius distance that makes reports distinct
  double equivalence_tol = 1e-8;
  double invariance_tol = 1e-8;
  double linearity_tol = 1e-8;      // relative to max(1, |value|)
  double subgradient_margin = 1e-9;
  std::size_t max_recorded = 16;
};

struct ScoreViolation {
  ComplexMatrix belief;
  ComplexMatrix report;
  double gap = 0.0;
  std::string kind;
};

struct ScoreReport {
  std::string name;
  std::string check;
  std::size_t trials = 0;
  std::vector<Eigen::Index> dims;
  std::size_t pairs = 0;
  std::vector<ScoreViolation> violations;
  std::size_t violation_count = 0;
  double max_gap = -std::numeric_limits<double>::infinity();

  bool pass() const { return violation_count == 0; }
};

namespace detail {

struct TrialResult {
  std::vector<ScoreViolation> violations;
  std::size_t pairs = 0;
  double max_gap = -std::numeric_limits<double>::infinity();
};

inline ScoreReport merge(std::string name, std::string check, const CheckConfig& cfg,
                         std::vector<TrialResult> results) {
  ScoreReport rep;
  rep.name = std::move(name);
  rep.check = std::move(check);
  rep.trials = cfg.trials;
  rep.dims = cfg.dims;
  for (auto& r : results) {
    rep.pairs += r.pairs;
    rep.max_gap = std::max(rep.max_gap, r.max_gap);
    rep.violation_count += r.violations.size();
    for (auto& v : r.violations) {
      if (rep.violations.size() < cfg.max_recorded) rep.violations.push_back(std::move(v));
    }
  }
  return rep;
}

inline Eigen::Index pick(Eigen::Index n, Rng& rng) {
  return static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
}

/// Random state of random rank (1..n).
inline DensityMatrix any_rank_density(Eigen::Index n, Rng& rng) {
  return random_density(n, 1 + pick(n, rng), rng);
}

/// Belief for trial t: full rank, rank deficient, pure, or near maximally
/// mixed, cycling with t.
inline DensityMatrix sample_belief(Eigen::Index n, std::size_t t, Rng& rng) {
  switch (t % 4) {
    case 0:
      return random_density(n, n, rng);
    case 1:
      return n > 1 ? random_density(n, 1 + pick(n - 1, rng), rng) : random_density(n, n, rng);
    case 2:
      return DensityMatrix::pure(random_pure(n, rng));
    default:
      return DensityMatrix::mix(DensityMatrix::maximally_mixed(n), random_density(n, n, rng), 0.9);
  }
}

/// Moves a state into the score's report domain by mixing toward I/n, or
/// returns false.
template <ExpectedScorer S>
bool into_domain(const S& s, DensityMatrix& rho) {
  if (s.accepts_report(rho)) return true;
  const auto mm = DensityMatrix::maximally_mixed(rho.dim());
  for (double t : {0.98, 0.9}) {
    auto mixed = DensityMatrix::mix(rho, mm, t);
    if (s.accepts_report(mixed)) {
      rho = std::move(mixed);
      return true;
    }
  }
  return false;
}

/// a - b, with -inf differences mapped to -inf and +inf when only b is -inf.
inline double extended_gap(ExtendedReal a, ExtendedReal b) {
  if (a.is_neg_inf() && b.is_neg_inf()) return 0.0;
  if (a.is_neg_inf()) return -std::numeric_limits<double>::infinity();
  if (b.is_neg_inf()) return std::numeric_limits<double>::infinity();
  return a.value() - b.value();
}

/// |a - b| with -inf equal to -inf and +inf for a mismatch.
inline double extended_distance(ExtendedReal a, ExtendedReal b) {
  if (a.is_neg_inf() != b.is_neg_inf()) return std::numeric_limits<double>::infinity();
  if (a.is_neg_inf()) return 0.0;
  return std::abs(a.value() - b.value());
}

}  // namespace detail

/// Adversarial reports against belief rho: a random state, eigenbasis
/// permutations of rho's spectrum, eigenvector (vertex) reports, Haar
/// rotations U rho U*, mixtures toward random states, and reports that keep
/// rho's diagonal (diagonal-phase conjugation and complex conjugation).
inline std::vector<DensityMatrix> adversarial_reports(const DensityMatrix& rho, Rng& rng) {
  const auto n = rho.dim();
  const auto sd = spectral_decompose(rho.hermitian());
  std::vector<DensityMatrix> out;
  out.push_back(detail::any_rank_density(n, rng));
  RealVector perm = sd.eigenvalues;
  std::reverse(perm.data(), perm.data() + n);
  out.emplace_back(sd.reconstruct_with(perm));
  std::shuffle(perm.data(), perm.data() + n, rng);
  out.emplace_back(sd.reconstruct_with(perm));
  out.push_back(DensityMatrix::pure(sd.vector(0)));
  out.push_back(DensityMatrix::pure(sd.vector(detail::pick(n, rng))));
  out.push_back(rho.conjugated(random_unitary(n, rng).matrix()));
  const double eps = 0.01 + 0.99 * uniform01(rng);
  out.push_back(DensityMatrix::mix(rho, detail::any_rank_density(n, rng), 1.0 - eps));
  out.push_back(DensityMatrix::mix(rho, DensityMatrix::pure(random_pure(n, rng)), 0.99));
  ComplexVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
  out.push_back(rho.conjugated(phases.asDiagonal().toDenseMatrix()));
  out.emplace_back(HermitianMatrix::unchecked(rho.matrix().conjugate()));
  return out;
}

/// Flags S(rho'; rho) > S(rho; rho) + margin; in strict mode also ties
/// |gap| <= tie_gap between reports at Frobenius distance > distinct_distance.
template <ExpectedScorer S>
ScoreReport truthfulness_check(const S& score, const CheckConfig& cfg, TruthMode mode) {
  auto results = parallel_map(cfg.trials, [&](std::size_t t) {
    detail::TrialResult out;
    Rng rng = stream_rng(cfg.seed, t, 1);
    const auto n = cfg.dims[t % cfg.dims.size()];
    DensityMatrix rho = detail::sample_belief(n, t / cfg.dims.size(), rng);
    if (!detail::into_domain(score, rho)) return out;
    const ExtendedReal truth = score.expected(rho, rho);
    for (auto& report : adversarial_reports(rho, rng)) {
      if (!detail::into_domain(score, report)) continue;
      ++out.pairs;
      const double gap = detail::extended_gap(score.expected(report, rho), truth);
      out.max_gap = std::max(out.max_gap, gap);
      if (gap > cfg.margin) {
        out.violations.push_back({rho.matrix(), report.matrix(), gap, "truthfulness"});
      } else if (mode == TruthMode::strict && std::abs(gap) <= cfg.tie_gap &&
                 frobenius_distance(rho, report) > cfg.distinct_distance) {
        out.violations.push_back({rho.matrix(), report.matrix(), gap, "strictness"});
      }
    }
    return out;
  });
  return detail::merge(score.name,
                       mode == TruthMode::strict ? "strict-truthfulness" : "truthfulness", cfg,
                       std::move(results));
}

/// Flags |S(rho'; rho) - S'(rho'; rho)| > equivalence_tol over random pairs.
template <ExpectedScorer A, ExpectedScorer B>
ScoreReport equivalence_check(const A& a, const B& b, const CheckConfig& cfg) {
  auto results = parallel_map(cfg.trials, [&](std::size_t t) {
    detail::TrialResult out;
    Rng rng = stream_rng(cfg.seed, t, 2);
    const auto n = cfg.dims[t % cfg.dims.size()];
    DensityMatrix report = detail::any_rank_density(n, rng);
    if (!detail::into_domain(a, report) || !b.accepts_report(report)) return out;
    const DensityMatrix belief = t % 5 == 4 ? DensityMatrix::pure(random_pure(n, rng))
                                            : detail::any_rank_density(n, rng);
    ++out.pairs;
    const double gap = detail::extended_distance(a.expected(report, belief), b.expected(report, belief));
    out.max_gap = std::max(out.max_gap, gap);
    if (gap > cfg.equivalence_tol) {
      out.violations.push_back({belief.matrix(), report.matrix(), gap, "equivalence"});
    }
    return out;
  });
  return detail::merge(a.name + " vs " + b.name, "equivalence", cfg, std::move(results));
}

/// Flags |S(rho'; rho) - S(U rho' U*; U rho U*)| > invariance_tol.
template <ExpectedScorer S>
ScoreReport unitary_invariance_check(const S& score, const CheckConfig& cfg) {
  auto results = parallel_map(cfg.trials, [&](std::size_t t) {
    detail::TrialResult out;
    Rng rng = stream_rng(cfg.seed, t, 3);
    const auto n = cfg.dims[t % cfg.dims.size()];
    DensityMatrix report = detail::any_rank_density(n, rng);
    if (!detail::into_domain(score, report)) return out;
    const DensityMatrix belief = detail::any_rank_density(n, rng);
    const ComplexMatrix u = random_unitary(n, rng).matrix();
    const DensityMatrix ur = report.conjugated(u);
    if (!score.accepts_report(ur)) return out;
    ++out.pairs;
    const double gap = detail::extended_distance(score.expected(report, belief),
                                                 score.expected(ur, belief.conjugated(u)));
    out.max_gap = std::max(out.max_gap, gap);
    if (gap > cfg.invariance_tol) {
      out.violations.push_back({belief.matrix(), report.matrix(), gap, "unitary-invariance"});
    }
    return out;
  });
  return detail::merge(score.name, "unitary-invariance", cfg, std::move(results));
}

/// Physical implementability: S(rho'; a rho1 + (1-a) rho2) must equal
/// a S(rho'; rho1) + (1-a) S(rho'; rho2) under extended arithmetic.
template <ExpectedScorer S>
ScoreReport linearity_check(const S& score, const CheckConfig& cfg) {
  auto results = parallel_map(cfg.trials, [&](std::size_t t) {
    detail::TrialResult out;
    Rng rng = stream_rng(cfg.seed, t, 4);
    const auto n = cfg.dims[t % cfg.dims.size()];
    DensityMatrix report = detail::any_rank_density(n, rng);
    if (!detail::into_domain(score, report)) return out;
    const DensityMatrix r1 = detail::any_rank_density(n, rng);
    const DensityMatrix r2 = detail::any_rank_density(n, rng);
    const double a = 0.05 + 0.9 * uniform01(rng);
    const ExtendedReal lhs = score.expected(report, DensityMatrix::mix(r1, r2, a));
    const ExtendedReal rhs =
        score.expected(report, r1) * a + score.expected(report, r2) * (1.0 - a);
    ++out.pairs;
    double gap = detail::extended_distance(lhs, rhs);
    if (rhs.is_finite()) gap /= std::max(1.0, std::abs(rhs.value()));
    out.max_gap = std::max(out.max_gap, gap);
    if (gap > cfg.linearity_tol) {
      out.violations.push_back({r1.matrix(), report.matrix(), gap, "linearity"});
    }
    return out;
  });
  return detail::merge(score.name, "implementability", cfg, std::move(results));
}

/// Flags F(rho) < F(rho') + <dF(rho'), rho - rho'> - margin. A -inf right-hand
/// side always passes; a subgradient that would produce +inf is a violation.
inline ScoreReport subgradient_inequality_check(
    const std::string& name, const std::function<double(const DensityMatrix&)>& f,
    const std::function<ExtendedHermitian(const DensityMatrix&)>& df, const CheckConfig& cfg) {
  auto results = parallel_map(cfg.trials, [&](std::size_t t) {
    detail::TrialResult out;
    Rng rng = stream_rng(cfg.seed, t, 5);
    const auto n = cfg.dims[t % cfg.dims.size()];
    const DensityMatrix anchor = detail::sample_belief(n, t / cfg.dims.size(), rng);
    const DensityMatrix rho =
        t % 2 == 0 ? detail::any_rank_density(n, rng)
                   : DensityMatrix::mix(anchor, detail::any_rank_density(n, rng), 0.9);
    ++out.pairs;
    double gap = 0.0;
    try {
      const ExtendedReal lin =
          ExtendedReal(f(anchor)) + ext_inner(df(anchor), rho.hermitian() - anchor.hermitian());
      if (lin.is_finite()) gap = lin.value() - f(rho);
      else gap = -std::numeric_limits<double>::infinity();
    } catch (const ExtendedArithmeticError&) {
      gap = std::numeric_limits<double>::infinity();
    }
    out.max_gap = std::max(out.max_gap, gap);
    if (gap > cfg.subgradient_margin) {
      out.violations.push_back({rho.matrix(), anchor.matrix(), gap, "subgradient"});
    }
    return out;
  });
  return detail::merge(name, "subgradient-inequality", cfg, std::move(results));
}

}  // namespace qelicit
