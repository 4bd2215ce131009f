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

#include "qelicit/measurement.hpp"
#include "qelicit/random.hpp"

namespace qelicit {
namespace {

DensityMatrix example_state() {
  RealMatrix m(2, 2);
  m << 1.0 / 6, -1.0 / 6, -1.0 / 6, 5.0 / 6;
  return DensityMatrix(HermitianMatrix::from_real(m));
}

TEST(Measurement, RejectsElementsNotSummingToIdentity) {
  std::vector<HermitianMatrix> els{HermitianMatrix::identity(2), HermitianMatrix::identity(2)};
  EXPECT_THROW(Measurement{els}, InvariantViolation);
}

TEST(Measurement, StandardBasisOnExampleState) {
  const auto p = apply_measurement(standard_basis_pvm(2), example_state());
  EXPECT_NEAR(p[0], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(p[1], 5.0 / 6.0, 1e-15);
}

TEST(Measurement, HadamardBasisOnExampleState) {
  // <+|rho|+> = (1/6 + 5/6 - 2/6) / 2.
  const auto p = apply_measurement(basis_pvm(UnitaryMatrix::hadamard()), example_state());
  EXPECT_NEAR(p[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p[1], 2.0 / 3.0, 1e-15);
}

TEST(Measurement, SamplingFrequenciesMatchBornRule) {
  Rng rng = stream_rng(30, 0);
  const auto rho = random_density(3, 3, rng);
  const auto mu = basis_pvm(random_unitary(3, rng));
  const auto p = apply_measurement(mu, rho);
  const int draws = 60000;
  RealVector counts = RealVector::Zero(3);
  for (int i = 0; i < draws; ++i) counts(static_cast<Eigen::Index>(sample_outcome(mu, rho, rng))) += 1.0;
  for (Eigen::Index y = 0; y < 3; ++y) {
    const double sd = std::sqrt(p[y] * (1 - p[y]) / draws);
    EXPECT_NEAR(counts(y) / draws, p[y], 5 * sd + 1e-12);
  }
}

TEST(Measurement, SamplerNeverReturnsZeroProbabilityOutcome) {
  RealVector p(3);
  p << 0.5, 0.5, 0.0;
  const OutcomeDistribution d(p);
  Rng rng = stream_rng(31, 0);
  for (int i = 0; i < 10000; ++i) EXPECT_NE(sample_index(d, rng), 2u);
}

TEST(Measurement, PvmDetection) {
  Rng rng = stream_rng(32, 0);
  EXPECT_TRUE(is_pvm(basis_pvm(random_unitary(4, rng))));
  EXPECT_FALSE(is_pvm(canonical_complete(2)));
}

TEST(Tomography, PvmIsIncompleteCanonicalIsComplete) {
  for (Eigen::Index n = 1; n <= 5; ++n) {
    const auto mu = canonical_complete(n);
    EXPECT_EQ(mu.size(), static_cast<std::size_t>(n * n));
    EXPECT_TRUE(is_tomographically_complete(mu));
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& e : mu.elements()) {
      sum += e.matrix();
      EXPECT_GE(eigenvalues(e).minCoeff(), -1e-12);
    }
    EXPECT_LE(max_abs(sum - ComplexMatrix::Identity(n, n)), 1e-12);
    if (n > 1) {
      EXPECT_FALSE(is_tomographically_complete(standard_basis_pvm(n)));
    }
  }
}

TEST(Tomography, LiftInvertsApplyWhenComplete) {
  Rng rng = stream_rng(33, 0);
  for (Eigen::Index n = 2; n <= 4; ++n) {
    const TomographicMap map(canonical_complete(n));
    ASSERT_TRUE(map.complete());
    for (int t = 0; t < 10; ++t) {
      const auto x = random_hermitian(n, rng);
      EXPECT_LE(max_abs(map.lift(map.apply(x)).matrix() - x.matrix()), 1e-10);
    }
  }
}

TEST(Tomography, AdjointIdentity) {
  // <phi X, v> = <X, phi* v>.
  Rng rng = stream_rng(34, 0);
  for (Eigen::Index n = 2; n <= 4; ++n) {
    const TomographicMap map(canonical_complete(n));
    for (int t = 0; t < 10; ++t) {
      const auto x = random_hermitian(n, rng);
      RealVector v(static_cast<Eigen::Index>(map.outcomes()));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = uniform01(rng) - 0.5;
      EXPECT_NEAR(map.apply(x).dot(v), hs_inner(x, map.adjoint(v)), 1e-12);
      // phi^{+*} is the adjoint of phi^+.
      EXPECT_NEAR(map.pinv_adjoint(x).dot(v), hs_inner(x, map.lift(v)), 1e-10);
    }
  }
}

TEST(Tomography, IncompleteLiftIsProjection) {
  Rng rng = stream_rng(35, 0);
  const TomographicMap map(standard_basis_pvm(3));
  EXPECT_FALSE(map.complete());
  const auto x = random_hermitian(3, rng);
  const RealVector p = map.apply(x);
  EXPECT_LE((map.apply(map.lift(p)) - p).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HermCoords, RoundTripAndIsometry) {
  Rng rng = stream_rng(36, 0);
  for (Eigen::Index n = 1; n <= 5; ++n) {
    const auto a = random_hermitian(n, rng);
    const auto b = random_hermitian(n, rng);
    EXPECT_LE(max_abs(from_herm_coords(herm_coords(a), n).matrix() - a.matrix()), 1e-14);
    EXPECT_NEAR(herm_coords(a).dot(herm_coords(b)), hs_inner(a, b), 1e-12);
  }
}

}  // namespace
}  // namespace qelicit
