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

// Numerical thresholds shared across the library. Values are absolute unless
// the name says otherwise.
namespace qelicit::tol {

/// Hermiticity: max |M_ij - conj(M_ji)| <= herm_rel * max(1, |M|_max).
inline constexpr double herm_rel = 1e-10;
/// Smallest eigenvalue accepted as "non-negative".
inline constexpr double psd = 1e-10;
/// |Tr(rho) - 1| for density matrices.
inline constexpr double trace = 1e-10;
/// |U U* - I|_max for unitaries.
inline constexpr double unitary = 1e-9;
/// Eigenvalue lambda is treated as zero when lambda <= zero_rel * trace.
inline constexpr double zero_rel = 1e-12;
/// Eigenvalues closer than this form a degenerate cluster.
inline constexpr double cluster = 1e-9;
/// <B, X> above this (times max(1,|B|_max)) makes an extended inner product -inf.
inline constexpr double inner_zero = 1e-12;
/// Outcome probability at or below this multiplies a -inf payment to zero.
inline constexpr double prob_zero = 1e-12;
/// |A B|_max <= ext_orth * max(1, |A|_max) for extended Hermitian pairs.
inline constexpr double ext_orth = 1e-8;
/// Imaginary residual allowed on Tr(AB) for Hermitian A, B.
inline constexpr double imag_residual = 1e-12;
/// Negative probability entries in [-clip, 0) are clipped to zero.
inline constexpr double prob_clip = 1e-12;
/// |sum p - 1| for outcome distributions.
inline constexpr double prob_sum = 1e-10;
/// POVM completeness |sum mu_y - I|_max.
inline constexpr double povm_sum = 1e-9;
/// Relative singular-value cutoff for rank decisions.
inline constexpr double rank_rel = 1e-8;
/// Relative singular-value cutoff for pseudoinverses.
inline constexpr double pinv_rel = 1e-10;
/// Orthonormality of reported vector tuples.
inline constexpr double orthonormal = 1e-8;

}  // namespace qelicit::tol
