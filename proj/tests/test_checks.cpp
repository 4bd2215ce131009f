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


#include <gtest/gtest.h>

#include "qelicit/checks.hpp"
#include "qelicit/ml_scores.hpp"

namespace qelicit {
namespace {

CheckConfig small(std::vector<Eigen::Index> dims = {2, 3}, std::size_t trials = 600) {
  CheckConfig cfg;
  cfg.trials = trials;
  cfg.dims = std::move(dims);
  cfg.seed = 7;
  return cfg;
}

TEST(Truthfulness, StrictlyTruthfulScoresPass) {
  const auto cfg = small();
  for (const auto& s : {binary_brier(), projective_brier(), log_spectral(), ml::s2()}) {
    const auto rep = truthfulness_check(s, cfg, TruthMode::strict);
    EXPECT_TRUE(rep.pass()) << s.name << " max_gap " << rep.max_gap;
    EXPECT_GT(rep.pairs, cfg.trials);
  }
}

TEST(Truthfulness, ConstantScoreIsWeakButNotStrict) {
  const auto s = fixed_meas_from_convex(potentials::constant(0.0), standard_basis_pvm(2));
  EXPECT_TRUE(truthfulness_check(s, small({2}), TruthMode::weak).pass());
  const auto strict = truthfulness_check(s, small({2}), TruthMode::strict);
  EXPECT_FALSE(strict.pass());
  ASSERT_FALSE(strict.violations.empty());
  EXPECT_EQ(strict.violations.front().kind, "strictness");
}

TEST(Truthfulness, IncompleteFixedMeasurementIsNotStrict) {
  const auto s = fixed_measurement_score(brier_rule(), standard_basis_pvm(3));
  EXPECT_TRUE(truthfulness_check(s, small({3}), TruthMode::weak).pass());
  EXPECT_FALSE(truthfulness_check(s, small({3}), TruthMode::strict).pass());
  const auto complete = fixed_measurement_score(brier_rule(), canonical_complete(3));
  EXPECT_TRUE(truthfulness_check(complete, small({3}), TruthMode::strict).pass());
}

TEST(Truthfulness, NonTruthfulScoresFailWithPositiveGap) {
  const auto s3 = truthfulness_check(ml::s3(), small(), TruthMode::weak);
  EXPECT_FALSE(s3.pass());
  EXPECT_GT(s3.max_gap, 1e-3);
  EXPECT_EQ(s3.check, "truthfulness");
  EXPECT_FALSE(truthfulness_check(ml::s4(), small(), TruthMode::weak).pass());
  EXPECT_FALSE(truthfulness_check(ml::s5(), small(), TruthMode::weak).pass());
}

TEST(Truthfulness, ViolationsAreCappedButCounted) {
  auto cfg = small();
  cfg.max_recorded = 3;
  const auto rep = truthfulness_check(ml::s3(), cfg, TruthMode::weak);
  EXPECT_LE(rep.violations.size(), 3u);
  EXPECT_GT(rep.violation_count, 3u);
}

TEST(Truthfulness, DeterministicForFixedSeed) {
  const auto a = truthfulness_check(ml::s3(), small(), TruthMode::weak);
  const auto b = truthfulness_check(ml::s3(), small(), TruthMode::weak);
  EXPECT_EQ(a.violation_count, b.violation_count);
  EXPECT_EQ(a.max_gap, b.max_gap);
}

TEST(AdversarialReports, AreValidStates) {
  Rng rng = stream_rng(60, 0);
  for (Eigen::Index n = 2; n <= 4; ++n) {
    const auto rho = random_density(n, n, rng);
    for (const auto& r : adversarial_reports(rho, rng)) {
      EXPECT_EQ(r.dim(), n);
      EXPECT_NEAR(r.hermitian().trace(), 1.0, 1e-10);
    }
  }
}

TEST(Equivalence, BinaryAndProjectiveBrierAgree) {
  const auto rep = equivalence_check(binary_brier(), projective_brier(), small());
  EXPECT_TRUE(rep.pass()) << rep.max_gap;
  EXPECT_LT(rep.max_gap, 1e-10);
}

TEST(Equivalence, S1AndLogSpectralAgreeButBrierDiffers) {
  EXPECT_TRUE(equivalence_check(ml::s1(), log_spectral(), small()).pass());
  EXPECT_FALSE(equivalence_check(binary_brier(), ml::s3(), small()).pass());
}

TEST(UnitaryInvariance, FixedMeasurementScoresFail) {
  EXPECT_FALSE(unitary_invariance_check(fixed_measurement_score(brier_rule(), canonical_complete(2)), small({2}))
                   .pass());
  EXPECT_TRUE(unitary_invariance_check(ml::s3(), small()).pass());
  EXPECT_TRUE(unitary_invariance_check(log_spectral(), small()).pass());
  EXPECT_TRUE(unitary_invariance_check(ml::s5(), small()).pass());
}

TEST(Linearity, ImplementableScoresAreLinearInBelief) {
  EXPECT_TRUE(linearity_check(binary_brier(), small()).pass());
  EXPECT_TRUE(linearity_check(log_spectral(), small()).pass());
  EXPECT_TRUE(linearity_check(ExpectedScoreFn::of(ml::s3()), small()).pass());
  const auto s4 = linearity_check(ml::s4(), small());
  EXPECT_FALSE(s4.pass());
  EXPECT_EQ(s4.check, "implementability");
  EXPECT_FALSE(linearity_check(ml::s5(), small()).pass());
}

TEST(Subgradient, PurityAndNegativeEntropyPass) {
  const auto purity = [](const DensityMatrix& r) { return hs_inner(r.hermitian(), r.hermitian()); };
  const auto dpurity = [](const DensityMatrix& r) { return ExtendedHermitian::finite(2.0 * r.hermitian()); };
  EXPECT_TRUE(subgradient_inequality_check("purity", purity, dpurity, small()).pass());

  const auto negent = [](const DensityMatrix& r) { return -von_neumann_entropy(r); };
  const auto dnegent = [](const DensityMatrix& r) {
    return matrix_log(r).plus(HermitianMatrix::identity(r.dim()));
  };
  EXPECT_TRUE(subgradient_inequality_check("neg-entropy", negent, dnegent, small()).pass());
}

TEST(Subgradient, WrongGradientFails) {
  const auto purity = [](const DensityMatrix& r) { return hs_inner(r.hermitian(), r.hermitian()); };
  const auto wrong = [](const DensityMatrix& r) { return ExtendedHermitian::finite(0.5 * r.hermitian()); };
  const auto rep = subgradient_inequality_check("purity-half", purity, wrong, small());
  EXPECT_FALSE(rep.pass());
  EXPECT_EQ(rep.violations.front().kind, "subgradient");
}

}  // namespace
}  // namespace qelicit
