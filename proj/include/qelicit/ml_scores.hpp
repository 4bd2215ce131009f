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
#include <limits>

#include "qelicit/quantum_score.hpp"

// Losses for learning quantum states, written as positive-oriented scores.
// S1..S3 are physically implementable and returned as QuantumScore; S4 and S5
// are not extended linear in the belief and only exist as ExpectedScoreFn.

namespace qelicit::ml {

/// Smallest eigenvalue a report needs for the log-determinant score.
inline constexpr double kS2MinEigenvalue = 1e-8;

inline bool full_rank_report(const DensityMatrix& r) {
  return eigenvalues(r.hermitian()).minCoeff() > kS2MinEigenvalue;
}

/// Matrix entropic loss <log rho', rho>.
inline QuantumScore s1() {
  auto s = log_spectral();
  s.name = "ml:s1";
  return s;
}

/// Log-determinant score, F(rho) = -log det rho with dF(rho') = -(rho')^{-1}:
/// S(rho'; rho) = -log det rho' - <(rho')^{-1}, rho> + n.
/// Realized projectively in the report's eigenbasis. Reports must have
/// lambda_min > 1e-8.
inline QuantumScore s2() {
  auto f = [](const DensityMatrix& r) {
    return -eigenvalues(r.hermitian()).array().log().sum();
  };
  auto df = [](const DensityMatrix& r) {
    const auto sd = spectral_decompose(r.hermitian());
    return sd.reconstruct_with(-sd.eigenvalues.cwiseInverse());
  };
  return score_from_potential("ml:s2", f, df, full_rank_report);
}

/// log det((rho')^{-1} rho) - <(rho')^{-1}, rho>. Differs from s2() by the
/// belief-only term log det rho - n, so it ranks reports identically; it is
/// -inf for every report when rho is singular.
inline ExpectedScoreFn s2_formula() {
  return {"ml:s2-formula",
          [](const DensityMatrix& r, const DensityMatrix& b) -> ExtendedReal {
            const auto sd = spectral_decompose(r.hermitian());
            const RealVector lb = eigenvalues(b.hermitian());
            if (lb.minCoeff() <= tol::zero_rel) return kNegInf;
            const double logdet = lb.array().log().sum() - sd.eigenvalues.array().log().sum();
            return logdet - hs_inner(sd.reconstruct_with(sd.eigenvalues.cwiseInverse()), b.hermitian());
          },
          full_rank_report};
}

/// Trace score <rho', rho>: measure {I - rho', rho'}, pay 1 on the second
/// outcome.
inline QuantumScore s3() {
  return {"ml:s3", [](const DensityMatrix& r) {
            const auto& h = r.hermitian();
            return ScoredMeasurement{
                Measurement::from_psd_elements({HermitianMatrix::identity(h.dim()) - h, h}),
                {ExtendedReal(0.0), ExtendedReal(1.0)}};
          }};
}

/// Log trace score log <rho', rho>.
inline ExpectedScoreFn s4() {
  return {"ml:s4", [](const DensityMatrix& r, const DensityMatrix& b) -> ExtendedReal {
            const double v = hs_inner(r.hermitian(), b.hermitian());
            if (v <= tol::zero_rel) return kNegInf;
            return std::log(v);
          }};
}

/// log Tr exp(log rho' + log rho). With -inf on the kernels this is the log
/// trace of exp(P (log rho' + log rho) P) over the intersection of the two
/// supports (P its projector), and -inf when the supports meet only in 0.
inline ExpectedScoreFn s5() {
  return {"ml:s5", [](const DensityMatrix& r, const DensityMatrix& b) -> ExtendedReal {
            const auto lr = matrix_log(r);
            const auto lb = matrix_log(b);
            const auto n = r.dim();
            const ComplexMatrix off = lr.infinite_part().matrix() + lb.infinite_part().matrix();
            const auto sd = spectral_decompose(HermitianMatrix::unchecked(off));
            Eigen::Index k = 0;
            while (k < n && sd.eigenvalues(n - 1 - k) < tol::ext_orth) ++k;
            if (k == 0) return kNegInf;
            const ComplexMatrix w = sd.eigenvectors.rightCols(k);
            const ComplexMatrix h =
                w.adjoint() * (lr.finite_part().matrix() + lb.finite_part().matrix()) * w;
            const RealVector ev = eigenvalues(HermitianMatrix::unchecked(h));
            const double top = ev.maxCoeff();
            return top + std::log((ev.array() - top).exp().sum());
          }};
}

}  // namespace qelicit::ml
