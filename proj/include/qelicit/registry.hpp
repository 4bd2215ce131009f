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
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qelicit/ml_scores.hpp"
#include "qelicit/properties.hpp"

namespace qelicit {

/// Implementable scores are QuantumScore; S4/S5 only have an expected score.
using AnyScore = std::variant<QuantumScore, ExpectedScoreFn>;

/// Verdicts each check is expected to produce.
struct ExpectedVerdicts {
  bool truthful = true;
  bool strictly_truthful = true;
  bool unitary_invariant = true;
  bool implementable = true;
};

struct ScoreEntry {
  std::string name;
  std::function<AnyScore(Eigen::Index dim)> make;  // fixed scores depend on dim
  ExpectedVerdicts expected;
};

inline const std::vector<ScoreEntry>& score_registry() {
  static const std::vector<ScoreEntry> entries = {
      {"binary-brier", [](Eigen::Index) -> AnyScore { return binary_brier(); }, {}},
      {"projective-brier", [](Eigen::Index) -> AnyScore { return projective_brier(); }, {}},
      {"spectral:brier", [](Eigen::Index) -> AnyScore { return spectral_score(brier_rule()); }, {}},
      {"spectral:log", [](Eigen::Index) -> AnyScore { return log_spectral(); }, {}},
      {"fixed:brier",
       [](Eigen::Index n) -> AnyScore { return fixed_measurement_score(brier_rule(), canonical_complete(n)); },
       {true, true, false, true}},
      {"fixed:log",
       [](Eigen::Index n) -> AnyScore { return fixed_measurement_score(log_rule(), canonical_complete(n)); },
       {true, true, false, true}},
      {"ml:s1", [](Eigen::Index) -> AnyScore { return ml::s1(); }, {}},
      {"ml:s2", [](Eigen::Index) -> AnyScore { return ml::s2(); }, {}},
      {"ml:s3", [](Eigen::Index) -> AnyScore { return ml::s3(); }, {false, false, true, true}},
      {"ml:s4", [](Eigen::Index) -> AnyScore { return ml::s4(); }, {false, false, true, false}},
      {"ml:s5", [](Eigen::Index) -> AnyScore { return ml::s5(); }, {false, false, true, false}},
  };
  return entries;
}

inline const ScoreEntry* find_score(const std::string& name) {
  for (const auto& e : score_registry()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

inline std::vector<std::string> score_names() {
  std::vector<std::string> out;
  for (const auto& e : score_registry()) out.push_back(e.name);
  return out;
}

/// Properties available to the level-set witness search.
inline const std::map<std::string, std::function<QuantumProperty(Eigen::Index)>>& property_registry() {
  static const std::map<std::string, std::function<QuantumProperty(Eigen::Index)>> entries = {
      {"eigenvalues", [](Eigen::Index) { return eigenvalue_property(); }},
      {"top-eigenvalue", [](Eigen::Index) { return top_eigenvalue_property(); }},
      {"eigvec-top", [](Eigen::Index) { return top_eigenvector_property(); }},
      {"eigvec-topk",
       [](Eigen::Index n) {
         const Eigen::Index k = std::min<Eigen::Index>(2, n);
         return QuantumProperty{"eigvec-topk", [k](const DensityMatrix& r) {
                                  const auto sd = spectral_decompose(r.hermitian());
                                  RealVector out(2 * sd.dim() * k);
                                  for (Eigen::Index i = 0; i < k; ++i) {
                                    out.segment(2 * sd.dim() * i, 2 * sd.dim()) = flatten(sd.vector(i));
                                  }
                                  return out;
                                },
                                true};
       }},
      {"eig-pair",
       [](Eigen::Index n) {
         const Eigen::Index k = std::min<Eigen::Index>(2, n);
         return QuantumProperty{"eig-pair", [k](const DensityMatrix& r) {
                                  const auto sd = spectral_decompose(r.hermitian());
                                  RealVector w = sd.eigenvalues;
                                  w.tail(sd.dim() - k).setZero();
                                  return herm_coords(sd.reconstruct_with(w));
                                }};
       }},
      {"abstain",
       [](Eigen::Index) {
         return QuantumProperty{"abstain", [](const DensityMatrix& r) {
                                  const auto sd = spectral_decompose(r.hermitian());
                                  RealVector out = RealVector::Zero(1 + 2 * sd.dim());
                                  if (sd.eigenvalues(0) >= 0.5) {
                                    out(0) = 1.0;
                                    out.tail(2 * sd.dim()) = flatten(sd.vector(0));
                                  }
                                  return out;
                                },
                                true};
       }},
      {"entropy", [](Eigen::Index) { return entropy_property(); }},
      {"tsallis2", [](Eigen::Index) { return tsallis2_property(); }},
      {"norm2", [](Eigen::Index) { return norm2_property(); }},
      {"expectation",
       [](Eigen::Index n) {
         RealMatrix z(n, 1);
         for (Eigen::Index y = 0; y < n; ++y) z(y, 0) = static_cast<double>(y);
         return expectation_property(z, standard_basis_pvm(n)).property;
       }},
  };
  return entries;
}

}  // namespace qelicit
