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


#include <cmath>

#include <gtest/gtest.h>

#include "qelicit/classical.hpp"
#include "qelicit/random.hpp"

namespace qelicit {
namespace {

OutcomeDistribution dist(std::initializer_list<double> v) {
  RealVector p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p(i++) = x;
  return OutcomeDistribution(p);
}

TEST(OutcomeDistribution, RejectsInvalidVectors) {
  EXPECT_THROW(dist({0.5, 0.6}), InvariantViolation);
  EXPECT_THROW(dist({1.2, -0.2}), InvariantViolation);
  EXPECT_THROW(OutcomeDistribution{RealVector()}, InvariantViolation);
  EXPECT_NO_THROW(dist({0.25, 0.75}));
}

TEST(Rules, BrierValues) {
  const auto q = dist({0.2, 0.3, 0.5});
  const double sq = 0.04 + 0.09 + 0.25;
  const auto rule = brier_rule();
  EXPECT_DOUBLE_EQ(rule.score(q, 0).value(), 0.4 - sq);
  EXPECT_DOUBLE_EQ(rule.score(q, 2).value(), 1.0 - sq);
}

TEST(Rules, LogValuesAndZeroProbability) {
  const auto q = dist({0.25, 0.75, 0.0});
  const auto rule = log_rule();
  EXPECT_DOUBLE_EQ(rule.score(q, 0).value(), std::log(0.25));
  EXPECT_TRUE(rule.score(q, 2).is_neg_inf());
}

TEST(Rules, ExpectedScoreUsesZeroTimesNegInfIsZero) {
  const auto q = dist({0.5, 0.5, 0.0});
  EXPECT_NEAR(expected_classical(log_rule(), q, q).value(), std::log(0.5), 1e-15);
  EXPECT_TRUE(expected_classical(log_rule(), q, dist({0.3, 0.3, 0.4})).is_neg_inf());
}

TEST(Rules, ExpectedBrierClosedForm) {
  // E_p[2 q_Y - |q|^2] = 2 <p, q> - |q|^2.
  Rng rng = stream_rng(20, 0);
  for (int t = 0; t < 100; ++t) {
    const RealVector p = random_simplex(4, rng), q = random_simplex(4, rng);
    const double oracle = 2.0 * p.dot(q) - q.squaredNorm();
    EXPECT_NEAR(expected_classical(brier_rule(), OutcomeDistribution(q), OutcomeDistribution(p)).value(),
                oracle, 1e-14);
  }
}

TEST(FromConvex, SquaredNormGivesBrierUpToConstant) {
  // G(q) + <dG(q), e_y - q> = |q|^2 + 2 q_y - 2|q|^2 = brier.
  const auto rule = from_convex(potentials::squared_norm());
  Rng rng = stream_rng(21, 0);
  for (int t = 0; t < 50; ++t) {
    const OutcomeDistribution q(random_simplex(3, rng));
    for (Eigen::Index y = 0; y < 3; ++y) {
      EXPECT_NEAR(rule.score(q, y).value(), brier_rule().score(q, y).value(), 1e-14);
    }
  }
}

TEST(FromConvex, NegativeEntropyGivesLogRule) {
  const auto rule = from_convex(potentials::negative_entropy());
  Rng rng = stream_rng(22, 0);
  for (int t = 0; t < 50; ++t) {
    const OutcomeDistribution q(random_simplex(4, rng));
    for (Eigen::Index y = 0; y < 4; ++y) {
      EXPECT_NEAR(rule.score(q, y).value(), std::log(q[y]), 1e-12);
    }
  }
  EXPECT_TRUE(rule.score(dist({1.0, 0.0}), 1).is_neg_inf());
}

TEST(FromConvex, RejectsConcavePotential) {
  ConvexPotential concave{"concave", [](const RealVector& p) { return -p.squaredNorm(); },
                          [](const RealVector& p) {
                            std::vector<ExtendedReal> d;
                            for (Eigen::Index i = 0; i < p.size(); ++i) d.emplace_back(-2.0 * p(i));
                            return d;
                          }};
  EXPECT_THROW(from_convex(concave), DomainError);
}

PropernessConfig quick(bool strict) {
  PropernessConfig cfg;
  cfg.trials = 2000;
  cfg.strict = strict;
  return cfg;
}

TEST(Properness, StrictlyProperRulesPass) {
  EXPECT_TRUE(properness_check(brier_rule(), quick(true)).pass());
  EXPECT_TRUE(properness_check(log_rule(), quick(true)).pass());
  EXPECT_TRUE(properness_check(from_convex(potentials::squared_norm()), quick(true)).pass());
}

TEST(Properness, LinearRuleFails) {
  const auto rep = properness_check(linear_rule(), quick(false));
  EXPECT_FALSE(rep.pass());
  EXPECT_GT(rep.max_gap, 0.0);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_EQ(rep.violations.front().kind, "properness");
}

TEST(Properness, WeakButNotStrictRules) {
  const auto constant = from_convex(potentials::constant(1.0));
  EXPECT_TRUE(properness_check(constant, quick(false)).pass());
  EXPECT_FALSE(properness_check(constant, quick(true)).pass());
  const auto maxn = from_convex(potentials::max_norm());
  EXPECT_TRUE(properness_check(maxn, quick(false)).pass());
  EXPECT_FALSE(properness_check(maxn, quick(true)).pass());
}

}  // namespace
}  // namespace qelicit
