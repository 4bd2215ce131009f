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
#include <utility>
#include <vector>

#include "qelicit/extended_real.hpp"
#include "qelicit/hermitian.hpp"

namespace qelicit {

/// Formal expression A - inf * B with B positive semidefinite and A B = 0.
///
/// Represents the extended linear functional X -> <A, X> - inf * <B, X>.
/// Only the range of B matters for evaluation; its scale does not.
class ExtendedHermitian {
 public:
  ExtendedHermitian() = default;

  ExtendedHermitian(HermitianMatrix finite, HermitianMatrix infinite)
      : a_(std::move(finite)), b_(std::move(infinite)) {
    require_same_dim(a_.dim(), b_.dim(), "ExtendedHermitian");
    if (!is_psd(b_)) throw InvariantViolation("ExtendedHermitian: infinite part is not PSD");
    const double scale = std::max(1.0, max_abs(a_.matrix()) * max_abs(b_.matrix()));
    const double resid = max_abs(a_.matrix() * b_.matrix());
    if (resid > tol::ext_orth * scale) {
      throw InvariantViolation("ExtendedHermitian: |A B|_max = " + std::to_string(resid));
    }
  }

  /// Purely finite element (B = 0).
  static ExtendedHermitian finite(HermitianMatrix a) {
    auto n = a.dim();
    return ExtendedHermitian(std::move(a), HermitianMatrix::zero(n));
  }

  const HermitianMatrix& finite_part() const { return a_; }
  const HermitianMatrix& infinite_part() const { return b_; }
  Eigen::Index dim() const { return a_.dim(); }
  bool has_infinite_part() const { return max_abs(b_.matrix()) > 0.0; }

  /// E + X, re-projected so that the finite part still annihilates range(B).
  ExtendedHermitian plus(const HermitianMatrix& x) const {
    require_same_dim(dim(), x.dim(), "ExtendedHermitian::plus");
    if (!has_infinite_part()) return finite(a_ + x);
    const HermitianMatrix keep = kernel_projector();
    const ComplexMatrix& k = keep.matrix();
    return ExtendedHermitian(HermitianMatrix::unchecked(k * (a_.matrix() + x.matrix()) * k), b_);
  }

  /// alpha * E for alpha > 0.
  ExtendedHermitian scaled(double alpha) const {
    if (!(alpha > 0.0)) {
      if (alpha == 0.0) return finite(HermitianMatrix::zero(dim()));
      if (has_infinite_part()) {
        throw ExtendedArithmeticError("negative multiple of an infinite part");
      }
      return finite(alpha * a_);
    }
    return ExtendedHermitian(alpha * a_, alpha * b_);
  }

  /// Projector onto ker(B).
  HermitianMatrix kernel_projector() const {
    const auto sd = spectral_decompose(b_);
    const double thr = tol::zero_rel * std::max(1.0, b_.trace());
    RealVector w(sd.dim());
    for (Eigen::Index i = 0; i < sd.dim(); ++i) w(i) = sd.eigenvalues(i) > thr ? 0.0 : 1.0;
    return sd.reconstruct_with(w);
  }

 private:
  HermitianMatrix a_;
  HermitianMatrix b_;
};

/// <E, X> = <A, X> - inf * <B, X>.
///
/// Returns -inf when <B, X> exceeds tol::inner_zero (scaled by |B|_max). A
/// markedly negative <B, X> would mean +inf, which is not representable; that
/// can only happen for inconsistent (non-PSD-compatible) input and throws.
inline ExtendedReal ext_inner(const ExtendedHermitian& e, const HermitianMatrix& x) {
  require_same_dim(e.dim(), x.dim(), "ext_inner");
  const double thr = tol::inner_zero * std::max(1.0, max_abs(e.infinite_part().matrix()));
  const double binf = hs_inner(e.infinite_part(), x);
  if (binf > thr) return kNegInf;
  if (binf < -thr) {
    throw ExtendedArithmeticError("ext_inner: <B, X> = " + std::to_string(binf) +
                                  " < 0 would give +inf");
  }
  return ExtendedReal(hs_inner(e.finite_part(), x));
}

/// log rho as an extended Hermitian matrix: finite part on the support, the
/// kernel projector as infinite part.
inline ExtendedHermitian matrix_log(const DensityMatrix& rho) {
  const auto sd = spectral_decompose(rho.hermitian());
  const double thr = tol::zero_rel * rho.hermitian().trace();
  const auto n = sd.dim();
  RealVector fin(n), inf(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = sd.eigenvalues(i);
    const bool zero = l <= thr;
    fin(i) = zero ? 0.0 : std::log(l);
    inf(i) = zero ? 1.0 : 0.0;
  }
  return ExtendedHermitian(sd.reconstruct_with(fin), sd.reconstruct_with(inf));
}

/// A PSD matrix weighted by an extended real.
struct WeightedPsd {
  HermitianMatrix matrix;
  ExtendedReal weight;
};

/// Builds E with <E, rho> = sum_i alpha_i <A_i, rho> on density matrices.
///
/// Finite weights accumulate into A', -inf weights into B = sum A_i. The
/// finite part is then compressed to ker(B): A = (I - P) A' (I - P), with P the
/// projector onto range(B). On any rho with <B, rho> = 0 we have P rho = 0, so
/// <A, rho> = <A', rho>.
inline ExtendedHermitian canonicalize_extended(const std::vector<WeightedPsd>& pairs) {
  if (pairs.empty()) throw DomainError("canonicalize_extended: no terms");
  const auto n = pairs.front().matrix.dim();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  bool any_inf = false;
  for (const auto& [m, w] : pairs) {
    require_same_dim(m.dim(), n, "canonicalize_extended");
    if (!is_psd(m)) throw InvariantViolation("canonicalize_extended: term is not PSD");
    if (w.is_neg_inf()) {
      b += m.matrix();
      any_inf = true;
    } else {
      a += w.value() * m.matrix();
    }
  }
  HermitianMatrix bh = HermitianMatrix::unchecked(b);
  if (!any_inf) return ExtendedHermitian::finite(HermitianMatrix::unchecked(a));
  const auto sd = spectral_decompose(bh);
  const double thr = tol::zero_rel * std::max(1.0, bh.trace());
  RealVector keep(n);
  for (Eigen::Index i = 0; i < n; ++i) keep(i) = sd.eigenvalues(i) > thr ? 0.0 : 1.0;
  const ComplexMatrix k = sd.reconstruct_with(keep).matrix();
  // Clean the numerical noise in B's kernel directions.
  RealVector bvals = sd.eigenvalues;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (keep(i) > 0.5) bvals(i) = 0.0;
  }
  return ExtendedHermitian(HermitianMatrix::unchecked(k * a * k), sd.reconstruct_with(bvals));
}

}  // namespace qelicit
