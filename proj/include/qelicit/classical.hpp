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

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qelicit/extended_real.hpp"
#include "qelicit/hermitian.hpp"
#include "qelicit/parallel.hpp"
#include "qelicit/random.hpp"

namespace qelicit {

/// Probability vector over outcomes 0..|Y|-1.
///
/// Entries in [-prob_clip, 0) are clipped to zero and the vector is
/// renormalized; anything more negative, or a sum off by more than
/// prob_sum, is rejected.
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  explicit OutcomeDistribution(RealVector p) : p_(std::move(p)) {
    if (p_.size() == 0) throw InvariantViolation("distribution: no outcomes");
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
      if (!std::isfinite(p_(i))) throw InvariantViolation("distribution: non-finite entry");
      if (p_(i) < -tol::prob_clip) {
        throw InvariantViolation("distribution: negative entry " + std::to_string(p_(i)));
      }
      if (p_(i) < 0.0) p_(i) = 0.0;
    }
    const double s = p_.sum();
    if (std::abs(s - 1.0) > tol::prob_sum) {
      throw InvariantViolation("distribution: entries sum to " + std::to_string(s));
    }
    p_ /= s;
  }

  static OutcomeDistribution point_mass(Eigen::Index n, Eigen::Index y) {
    RealVector p = RealVector::Zero(n);
    p(y) = 1.0;
    return OutcomeDistribution(std::move(p));
  }

  const RealVector& probs() const { return p_; }
  Eigen::Index size() const { return p_.size(); }
  double operator[](Eigen::Index y) const { return p_(y); }

 private:
  RealVector p_;
};

/// <d, x> for an extended vector d in (R u {-inf})^Y and real x. Terms with
/// d_y = -inf are grouped first, so inf - inf never arises.
inline ExtendedReal ext_vector_inner(const std::vector<ExtendedReal>& d, const RealVector& x) {
  require_same_dim(static_cast<long>(d.size()), x.size(), "ext_vector_inner");
  double fin = 0.0;
  double inf_mass = 0.0;
  for (std::size_t y = 0; y < d.size(); ++y) {
    const double xy = x(static_cast<Eigen::Index>(y));
    if (d[y].is_neg_inf()) {
      inf_mass += xy;
    } else {
      fin += d[y].value() * xy;
    }
  }
  if (inf_mass > tol::inner_zero) return kNegInf;
  if (inf_mass < -tol::inner_zero) throw ExtendedArithmeticError("ext_vector_inner: +inf");
  return ExtendedReal(fin);
}

/// Classical scoring rule s(q, y), stored as the full payment vector per
/// report so that rules built from a potential evaluate it once.
struct ClassicalScoringRule {
  std::string name;
  std::function<std::vector<ExtendedReal>(const OutcomeDistribution&)> payments;
  std::function<bool(const OutcomeDistribution&)> in_domain = [](const OutcomeDistribution&) {
    return true;
  };

  ExtendedReal score(const OutcomeDistribution& q, Eigen::Index y) const {
    return payments(q).at(static_cast<std::size_t>(y));
  }
};

/// Brier score 2 p_y - |p|^2.
inline ClassicalScoringRule brier_rule() {
  return {"brier", [](const OutcomeDistribution& q) {
            const double sq = q.probs().squaredNorm();
            std::vector<ExtendedReal> out(static_cast<std::size_t>(q.size()));
            for (Eigen::Index y = 0; y < q.size(); ++y) {
              out[static_cast<std::size_t>(y)] = 2.0 * q[y] - sq;
            }
            return out;
          }};
}

/// Log score log p_y; -inf where p_y is (numerically) zero.
inline ClassicalScoringRule log_rule() {
  return {"log", [](const OutcomeDistribution& q) {
            std::vector<ExtendedReal> out(static_cast<std::size_t>(q.size()));
            for (Eigen::Index y = 0; y < q.size(); ++y) {
              out[static_cast<std::size_t>(y)] =
                  q[y] <= tol::zero_rel ? kNegInf : ExtendedReal(std::log(q[y]));
            }
            return out;
          }};
}

/// s(q, y) = q_y. Not proper: the optimum is a vertex.
inline ClassicalScoringRule linear_rule() {
  return {"linear", [](const OutcomeDistribution& q) {
            std::vector<ExtendedReal> out(static_cast<std::size_t>(q.size()));
            for (Eigen::Index y = 0; y < q.size(); ++y) out[static_cast<std::size_t>(y)] = q[y];
            return out;
          }};
}

/// Convex G on the simplex paired with a selection of (extended) subgradients.
/// Subgradient entries may be -inf only where the point has zero mass.
struct ConvexPotential {
  std::string name;
  std::function<double(const RealVector&)> value;
  std::function<std::vector<ExtendedReal>(const RealVector&)> subgradient;
};

namespace potentials {

/// |p|^2 with gradient 2p.
inline ConvexPotential squared_norm() {
  return {"squared-norm", [](const RealVector& p) { return p.squaredNorm(); },
          [](const RealVector& p) {
            std::vector<ExtendedReal> d(static_cast<std::size_t>(p.size()));
            for (Eigen::Index i = 0; i < p.size(); ++i) d[static_cast<std::size_t>(i)] = 2.0 * p(i);
            return d;
          }};
}

/// sum p log p, gradient 1 + log p_y (-inf at p_y = 0).
inline ConvexPotential negative_entropy() {
  return {"negative-entropy",
          [](const RealVector& p) {
            double s = 0.0;
            for (Eigen::Index i = 0; i < p.size(); ++i) {
              if (p(i) > 0.0) s += p(i) * std::log(p(i));
            }
            return s;
          },
          [](const RealVector& p) {
            std::vector<ExtendedReal> d(static_cast<std::size_t>(p.size()));
            for (Eigen::Index i = 0; i < p.size(); ++i) {
              d[static_cast<std::size_t>(i)] =
                  p(i) <= tol::zero_rel ? kNegInf : ExtendedReal(1.0 + std::log(p(i)));
            }
            return d;
          }};
}

/// max_i p_i with subgradient the indicator of the first argmax.
inline ConvexPotential max_norm() {
  return {"max-norm", [](const RealVector& p) { return p.maxCoeff(); },
          [](const RealVector& p) {
            Eigen::Index arg = 0;
            p.maxCoeff(&arg);
            std::vector<ExtendedReal> d(static_cast<std::size_t>(p.size()), ExtendedReal(0.0));
            d[static_cast<std::size_t>(arg)] = 1.0;
            return d;
          }};
}

inline ConvexPotential constant(double c) {
  return {"constant", [c](const RealVector&) { return c; },
          [](const RealVector& p) {
            return std::vector<ExtendedReal>(static_cast<std::size_t>(p.size()), ExtendedReal(0.0));
          }};
}

}  // namespace potentials

/// Sampled self-check applied by from_convex.
struct ConvexitySelfCheck {
  std::vector<Eigen::Index> dims{2, 3, 4};
  std::size_t trials = 64;
  std::uint64_t seed = 0x5eed;
  double margin = 1e-9;
};

/// Samples pairs (x, x') on the simplex and returns the largest violation of
/// G(x') >= G(x) + <d_x, x' - x> and of midpoint convexity (<= 0 means none).
inline double max_subgradient_violation(const ConvexPotential& g, const ConvexitySelfCheck& cfg) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = stream_rng(cfg.seed, t);
    const auto n = cfg.dims[t % cfg.dims.size()];
    RealVector x = random_simplex(n, rng);
    RealVector xp = random_simplex(n, rng);
    if (t % 4 == 1) {
      // Boundary point with one zero coordinate.
      x(static_cast<Eigen::Index>(t % static_cast<std::size_t>(n))) = 0.0;
      x /= x.sum();
    }
    const auto lin = ext_vector_inner(g.subgradient(x), xp - x);
    if (lin.is_finite()) worst = std::max(worst, g.value(x) + lin.value() - g.value(xp));
    const double mid = g.value(0.5 * (x + xp)) - 0.5 * (g.value(x) + g.value(xp));
    worst = std::max(worst, mid);
  }
  return worst;
}

/// s(p, y) = G(p) + <dG_p, 1_y - p>.
///
/// The potential is self-checked on sampled pairs first; a subgradient or
/// convexity violation beyond the margin throws DomainError.
inline ClassicalScoringRule from_convex(ConvexPotential g, const ConvexitySelfCheck& check = {}) {
  const double v = max_subgradient_violation(g, check);
  if (v > check.margin) {
    throw DomainError("from_convex(" + g.name + "): subgradient inequality violated by " +
                      std::to_string(v));
  }
  std::string name = "convex:" + g.name;
  return {std::move(name), [g = std::move(g)](const OutcomeDistribution& q) {
            const RealVector& p = q.probs();
            const double gp = g.value(p);
            const auto d = g.subgradient(p);
            std::vector<ExtendedReal> out(static_cast<std::size_t>(p.size()));
            for (Eigen::Index y = 0; y < p.size(); ++y) {
              RealVector dir = -p;
              dir(y) += 1.0;
              out[static_cast<std::size_t>(y)] = ExtendedReal(gp) + ext_vector_inner(d, dir);
            }
            return out;
          }};
}

/// E_{Y~p} s(q, Y) with 0 * (-inf) = 0.
inline ExtendedReal expected_classical(const ClassicalScoringRule& rule,
                                       const OutcomeDistribution& q,
                                       const OutcomeDistribution& p) {
  require_same_dim(q.size(), p.size(), "expected_classical");
  const auto s = rule.payments(q);
  ExtendedReal total(0.0);
  for (Eigen::Index y = 0; y < p.size(); ++y) {
    total += weight_payment(p[y], s[static_cast<std::size_t>(y)], tol::prob_zero);
  }
  return total;
}

struct PropernessViolation {
  RealVector belief;
  RealVector report;
  double gap = 0.0;  // s(q;p) - s(p;p)
  std::string kind;  // "properness" or "strictness"
};

struct PropernessReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t pairs = 0;
  std::vector<PropernessViolation> violations;
  std::size_t violation_count = 0;
  double max_gap = -std::numeric_limits<double>::infinity();
  bool pass() const { return violation_count == 0; }
};

struct PropernessConfig {
  std::size_t trials = 10000;
  std::vector<Eigen::Index> dims{2, 3, 4, 5, 6};
  std::uint64_t seed = 1;
  bool strict = true;
  double margin = 1e-9;            // properness slack
  double tie_gap = 1e-9;           // |gap| below this counts as a tie
  double distinct_distance = 1e-6; // reports farther than this must lose strictly
  std::size_t max_recorded = 32;
};

/// Samples beliefs p (interior and boundary) against random, vertex,
/// permuted and perturbed reports q; records s(q;p) > s(p;p) + margin, and in
/// strict mode ties |gap| <= tie_gap at |p - q| > distinct_distance.
inline PropernessReport properness_check(const ClassicalScoringRule& rule,
                                         const PropernessConfig& cfg) {
  struct TrialOut {
    std::vector<PropernessViolation> v;
    std::size_t pairs = 0;
    double max_gap = -std::numeric_limits<double>::infinity();
  };
  auto results = parallel_map(cfg.trials, [&](std::size_t t) {
    TrialOut out;
    Rng rng = stream_rng(cfg.seed, t);
    const auto n = cfg.dims[t % cfg.dims.size()];
    RealVector p = random_simplex(n, rng);
    if (t % 3 == 2 && n > 1) {
      p(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n))) = 0.0;
      p /= p.sum();
    }
    std::vector<RealVector> reports;
    reports.push_back(random_simplex(n, rng));
    Eigen::Index arg = 0;
    p.maxCoeff(&arg);
    reports.push_back(RealVector::Unit(n, arg));
    reports.push_back(RealVector::Unit(n, static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n))));
    reports.push_back(0.9 * p + 0.1 * reports.front());
    RealVector perm = p;
    std::shuffle(perm.data(), perm.data() + n, rng);
    reports.push_back(perm);

    const OutcomeDistribution pd(p);
    const ExtendedReal truth = expected_classical(rule, pd, pd);
    for (const auto& q : reports) {
      const ExtendedReal val = expected_classical(rule, OutcomeDistribution(q), pd);
      ++out.pairs;
      if (val.is_neg_inf()) continue;
      const double gap = val.value() - truth.value();
      out.max_gap = std::max(out.max_gap, gap);
      if (gap > cfg.margin) {
        out.v.push_back({p, q, gap, "properness"});
      } else if (cfg.strict && std::abs(gap) <= cfg.tie_gap &&
                 (p - q).norm() > cfg.distinct_distance) {
        out.v.push_back({p, q, gap, "strictness"});
      }
    }
    return out;
  });
  PropernessReport rep;
  rep.name = rule.name;
  rep.trials = cfg.trials;
  for (auto& r : results) {
    rep.pairs += r.pairs;
    rep.max_gap = std::max(rep.max_gap, r.max_gap);
    rep.violation_count += r.v.size();
    for (auto& v : r.v) {
      if (rep.violations.size() < cfg.max_recorded) rep.violations.push_back(std::move(v));
    }
  }
  return rep;
}

}  // namespace qelicit
