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

#include "qelicit/properties.hpp"

namespace qelicit {
namespace {

OptimizeConfig quick_opt() {
  OptimizeConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 1500;
  return cfg;
}

// rho = U diag(p) U* with the spectrum known to the test.
struct KnownState {
  DensityMatrix rho;
  RealVector spectrum;
  ComplexMatrix basis;
};

KnownState known_state(RealVector p, std::uint64_t seed) {
  Rng rng = stream_rng(seed, 0);
  const ComplexMatrix u = random_unitary(p.size(), rng).matrix();
  return {DensityMatrix::diagonal(p).conjugated(u), p, u};
}

RealVector vec(std::initializer_list<double> v) {
  RealVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

TEST(TopEigenvector, OptimizerRecoversTopVector) {
  const auto ks = known_state(vec({0.5, 0.3, 0.15, 0.05}), 70);
  const auto opt = maximize_top_eigenvector(top_eigenvector_score(), ks.rho, quick_opt());
  EXPECT_NEAR(opt.value, 0.5, 1e-9);
  EXPECT_NEAR(std::abs(ks.basis.col(0).dot(opt.report)), 1.0, 1e-6);
  EXPECT_TRUE(top_eigenvector_property().contains(ks.rho, flatten(opt.report)));
}

TEST(TopEigenvector, RejectsNonUnitReport) {
  EXPECT_THROW(top_eigenvector_score().at(ComplexVector::Constant(2, 1.0)), DomainError);
}

TEST(TopEigenvector, DegenerateTopIsSetValued) {
  const auto rho = DensityMatrix::diagonal(vec({0.4, 0.4, 0.2}));
  const auto prop = top_eigenvector_property();
  ComplexVector x(3);
  x << 1.0, Complex(0.0, 1.0), 0.0;
  x /= std::sqrt(2.0);
  EXPECT_TRUE(prop.set_valued);
  EXPECT_TRUE(prop.contains(rho, flatten(x)));
  EXPECT_FALSE(prop.contains(rho, flatten(ComplexVector::Unit(3, 2))));
}

TEST(TopK, OptimizerMatchesWeightedSpectrum) {
  const auto ks = known_state(vec({0.45, 0.3, 0.2, 0.05}), 71);
  const auto s = top_k_eigenvector_score(2, vec({2.0, 1.0}));
  const auto opt = maximize_frame_score(s, ks.rho, 2, quick_opt());
  EXPECT_NEAR(opt.value, 2 * 0.45 + 0.3, 1e-9);
  for (Eigen::Index i = 0; i < 2; ++i) {
    EXPECT_NEAR(std::abs(ks.basis.col(i).dot(opt.report.col(i))), 1.0, 1e-5);
  }
}

TEST(TopK, RejectsBadWeightsAndFrames) {
  EXPECT_THROW(top_k_eigenvector_score(2, vec({1.0, 1.0})), DomainError);
  EXPECT_THROW(top_k_eigenvector_score(2, vec({1.0, -1.0})), DomainError);
  const auto s = top_k_eigenvector_score(2, vec({2.0, 1.0}));
  ComplexMatrix x = ComplexMatrix::Zero(3, 2);
  x(0, 0) = 1.0;
  x(0, 1) = 1.0;
  EXPECT_THROW(s.at(x), DomainError);
}

TEST(TopBottom, OptimizerMatchesSpectrumExtremes) {
  const auto ks = known_state(vec({0.5, 0.3, 0.15, 0.05}), 72);
  const auto s = top_bottom_score(1, 1, vec({1.0, 0.0, 0.0, -1.0}));
  const auto opt = maximize_frame_score(s, ks.rho, 2, quick_opt());
  EXPECT_NEAR(opt.value, 0.5 - 0.05, 1e-9);
  EXPECT_NEAR(std::abs(ks.basis.col(0).dot(opt.report.col(0))), 1.0, 1e-5);
  EXPECT_NEAR(std::abs(ks.basis.col(3).dot(opt.report.col(1))), 1.0, 1e-5);
  EXPECT_THROW(top_bottom_score(1, 1, vec({1.0, 0.5, -1.0})), DomainError);
}

TEST(EigenPair, OptimizerReturnsTopKTruncation) {
  const auto ks = known_state(vec({0.5, 0.3, 0.15, 0.05}), 73);
  const auto opt = maximize_eigen_pair(eigen_pair_score(2), ks.rho, 2, quick_opt());
  RealVector trunc = ks.spectrum;
  trunc.tail(2).setZero();
  const ComplexMatrix oracle = ks.basis * trunc.cast<Complex>().asDiagonal() * ks.basis.adjoint();
  EXPECT_LE(max_abs(opt.report.matrix() - oracle), 1e-6);
  EXPECT_NEAR(opt.value, 0.25 + 0.09, 1e-9);
}

TEST(EigenPair, RejectsRankAboveK) {
  EXPECT_THROW(eigen_pair_score(1).at(HermitianMatrix::identity(2) * 0.5), DomainError);
}

TEST(WithValue, OptimalValueEqualsBaseOptimum) {
  const auto ks = known_state(vec({0.6, 0.3, 0.1}), 74);
  const auto s = with_value<ComplexVector>(
      top_eigenvector_score(), [](double a) { return std::exp(a); }, [](double a) { return std::exp(a); });
  const ComplexVector top = ks.basis.col(0);
  const auto opt = maximize_value(s, top, ks.rho, -2.0, 2.0);
  EXPECT_NEAR(opt.report.alpha, 0.6, 1e-6);
  // G(a) + G'(a)(b - a) <= G(b) for convex G.
  EXPECT_NEAR(opt.value, std::exp(0.6), 1e-9);
  EXPECT_THROW(with_value<ComplexVector>(
                   top_eigenvector_score(), [](double a) { return -a * a; }, [](double a) { return -2 * a; }),
               DomainError);
}

TEST(Abstain, AbstainsExactlyBelowThreshold) {
  const auto s = abstain_score(0.5);
  const auto high = known_state(vec({0.7, 0.2, 0.1}), 75);
  const auto low = known_state(vec({0.4, 0.35, 0.25}), 76);
  const auto abst = AbstainReport::abstain(3);
  const auto vote_high = AbstainReport::of(high.basis.col(0));
  const auto vote_low = AbstainReport::of(low.basis.col(0));
  EXPECT_NEAR(s.expected(abst, high.rho), 0.5, 1e-15);
  EXPECT_NEAR(s.expected(vote_high, high.rho), 0.7, 1e-12);
  EXPECT_GT(s.expected(vote_high, high.rho), s.expected(abst, high.rho));
  EXPECT_NEAR(s.expected(vote_low, low.rho), 0.4, 1e-12);
  EXPECT_GT(s.expected(abst, low.rho), s.expected(vote_low, low.rho));
  EXPECT_THROW(abstain_score(1.0), DomainError);
}

TEST(Expectation, ScoreIsMaximizedAtTheMean) {
  Rng rng = stream_rng(77, 0);
  RealMatrix z(3, 2);
  z << 0.0, 1.0, 1.0, -1.0, 2.0, 0.5;
  const auto mu = basis_pvm(random_unitary(3, rng));
  const auto e = expectation_property(z, mu);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density(3, 3, rng);
    const RealVector gamma = e.property(rho);
    const RealVector p = apply_measurement(mu, rho).probs();
    EXPECT_LE((gamma - z.transpose() * p).cwiseAbs().maxCoeff(), 1e-14);
    const auto obs = e.observables();
    for (Eigen::Index i = 0; i < 2; ++i) EXPECT_NEAR(hs_inner(obs[static_cast<std::size_t>(i)], rho), gamma(i), 1e-12);
    const RealVector r = gamma + RealVector::Random(2) * 0.3;
    // E(r) = |gamma|^2 - |r - gamma|^2.
    EXPECT_NEAR(e.score.expected(gamma, rho) - e.score.expected(r, rho), (r - gamma).squaredNorm(), 1e-12);
  }
}

TEST(LevelSets, NonlinearPropertiesHaveWitnesses) {
  for (const auto& prop : {eigenvalue_property(), top_eigenvalue_property(), entropy_property(),
                           tsallis2_property(), norm2_property()}) {
    const auto w = find_level_set_witness(prop, 3, 200, 5);
    ASSERT_TRUE(w.found) << prop.name;
    EXPECT_LE(w.witness.level_gap, 1e-8);
    EXPECT_GT(w.witness.mix_gap, 1e-6);
    // Recheck the witness independently.
    const auto again = level_set_witness(prop, w.rho1, w.rho2, w.t);
    EXPECT_TRUE(again.is_counterexample);
  }
}

TEST(LevelSets, LinearPropertyHasNoWitness) {
  RealMatrix z(3, 1);
  z << 0.0, 1.0, 2.0;
  const auto e = expectation_property(z, standard_basis_pvm(3));
  EXPECT_FALSE(find_level_set_witness(e.property, 3, 200, 5).found);
  // Same spectrum, mixture changes it.
  const auto a = DensityMatrix::diagonal(vec({0.8, 0.2}));
  const auto b = DensityMatrix::diagonal(vec({0.2, 0.8}));
  const auto w = level_set_witness(eigenvalue_property(), a, b, 0.5);
  EXPECT_TRUE(w.is_counterexample);
  EXPECT_NEAR(w.mix_gap, 0.3, 1e-12);
}

TEST(GammaDiamond, AgreesWithQuantumPropertyOnImage) {
  const TomographicMap map(canonical_complete(3));
  const auto diamond = gamma_diamond(entropy_property(), map);
  Rng rng = stream_rng(78, 0);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density(3, 1 + t % 3, rng);
    EXPECT_NEAR(diamond(map.apply(rho))(0), von_neumann_entropy(rho), 1e-9);
  }
}

TEST(GammaDiamond, IdentityPropertyIsLift) {
  const TomographicMap map(canonical_complete(2));
  const QuantumProperty coords{"coords", [](const DensityMatrix& r) { return herm_coords(r); }};
  const auto diamond = gamma_diamond(coords, map);
  const auto rho = DensityMatrix::maximally_mixed(2);
  EXPECT_LE((diamond(map.apply(rho)) - herm_coords(rho)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GammaDiamond, RejectsNonStatesAndIncompleteMaps) {
  const TomographicMap map(canonical_complete(2));
  const auto diamond = gamma_diamond(entropy_property(), map);
  const auto bad = HermitianMatrix::diagonal(vec({1.5, -0.5}));
  EXPECT_THROW(diamond(map.apply(bad)), DomainError);
  EXPECT_THROW(gamma_diamond(entropy_property(), TomographicMap(standard_basis_pvm(2))), DomainError);
}

TEST(Identification, TranslationRoundTrip) {
  const TomographicMap map(canonical_complete(2));
  Rng rng = stream_rng(79, 0);
  RealMatrix z(4, 2);
  for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = uniform01(rng) * 2 - 1;
  const auto classical = mean_identification(z);
  const auto quantum = identification_translate(classical, map);
  const auto back = identification_translate(quantum, map);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density(2, 1 + t % 2, rng);
    const RealVector p = map.apply(rho);
    const RealVector gamma = z.transpose() * p;
    const RealVector off = gamma + RealVector::Constant(2, 0.1);
    const auto v = quantum(gamma);
    const auto w = quantum(off);
    const auto c = back(gamma);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_NEAR(hs_inner(v[i], rho), 0.0, 1e-12);
      EXPECT_NEAR(hs_inner(w[i], rho), -0.1, 1e-12);
      EXPECT_NEAR(c[i].dot(p), 0.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace qelicit
