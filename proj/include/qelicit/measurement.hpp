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
#include <string>
#include <utility>
#include <vector>

#include "qelicit/classical.hpp"
#include "qelicit/hermitian.hpp"
#include "qelicit/random.hpp"

namespace qelicit {

/// POVM: PSD elements mu_y summing to the identity. Outcome labels are the
/// element indices.
class Measurement {
 public:
  Measurement() = default;

  explicit Measurement(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
    validate(/*check_psd=*/true);
  }

  /// Rank-one projectors onto the columns of a unitary.
  static Measurement from_basis(const ComplexMatrix& basis) {
    std::vector<HermitianMatrix> els;
    els.reserve(static_cast<std::size_t>(basis.cols()));
    for (Eigen::Index y = 0; y < basis.cols(); ++y) {
      els.push_back(HermitianMatrix::unchecked(basis.col(y) * basis.col(y).adjoint()));
    }
    Measurement m;
    m.elements_ = std::move(els);
    m.validate(/*check_psd=*/false);
    return m;
  }

  /// Elements already known to be PSD (outer products, congruences of PSD
  /// matrices); only completeness is verified.
  static Measurement from_psd_elements(std::vector<HermitianMatrix> elements) {
    Measurement m;
    m.elements_ = std::move(elements);
    m.validate(/*check_psd=*/false);
    return m;
  }

  const std::vector<HermitianMatrix>& elements() const { return elements_; }
  const HermitianMatrix& operator[](std::size_t y) const { return elements_[y]; }
  std::size_t size() const { return elements_.size(); }
  Eigen::Index dim() const { return elements_.front().dim(); }

 private:
  void validate(bool check_psd) const {
    if (elements_.empty()) throw InvariantViolation("measurement: no elements");
    const auto n = elements_.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t y = 0; y < elements_.size(); ++y) {
      require_same_dim(elements_[y].dim(), n, "measurement element");
      if (check_psd && !is_psd(elements_[y])) {
        throw InvariantViolation("measurement: element " + std::to_string(y) + " is not PSD");
      }
      sum += elements_[y].matrix();
    }
    const double resid = max_abs(sum - ComplexMatrix::Identity(n, n));
    if (resid > tol::povm_sum) {
      throw InvariantViolation("measurement: |sum mu_y - I|_max = " + std::to_string(resid));
    }
  }

  std::vector<HermitianMatrix> elements_;
};

/// p_y = <mu_y, rho>.
inline OutcomeDistribution apply_measurement(const Measurement& mu, const DensityMatrix& rho) {
  require_same_dim(mu.dim(), rho.dim(), "apply_measurement");
  RealVector p(static_cast<Eigen::Index>(mu.size()));
  for (std::size_t y = 0; y < mu.size(); ++y) {
    p(static_cast<Eigen::Index>(y)) = hs_inner(mu[y], rho.hermitian());
  }
  return OutcomeDistribution(std::move(p));
}

/// Inverse-CDF draw from a distribution.
inline std::size_t sample_index(const OutcomeDistribution& p, Rng& rng) {
  const double u = uniform01(rng);
  double c = 0.0;
  const auto n = p.size();
  for (Eigen::Index y = 0; y < n; ++y) {
    c += p[y];
    if (u < c) return static_cast<std::size_t>(y);
  }
  // u landed in the rounding gap above the last partial sum.
  for (Eigen::Index y = n - 1; y >= 0; --y) {
    if (p[y] > 0.0) return static_cast<std::size_t>(y);
  }
  return 0;
}

inline std::size_t sample_outcome(const Measurement& mu, const DensityMatrix& rho, Rng& rng) {
  return sample_index(apply_measurement(mu, rho), rng);
}

/// Von Neumann measurement in the basis given by the columns of U.
inline Measurement basis_pvm(const UnitaryMatrix& u) { return Measurement::from_basis(u.matrix()); }

inline Measurement standard_basis_pvm(Eigen::Index n) {
  return basis_pvm(UnitaryMatrix::identity(n));
}

/// Every element idempotent and pairwise products zero, within 1e-8.
inline bool is_pvm(const Measurement& mu, double tol = 1e-8) {
  for (std::size_t y = 0; y < mu.size(); ++y) {
    const ComplexMatrix& a = mu[y].matrix();
    if (max_abs(a * a - a) > tol) return false;
    for (std::size_t z = y + 1; z < mu.size(); ++z) {
      if (max_abs(a * mu[z].matrix()) > tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Real coordinates of Herm(C^n).
//
// Orthonormal basis (under <A, B> = Re Tr(AB)), in this order:
//   E_kk                          for k = 0..n-1
//   (E_jk + E_kj) / sqrt 2        for j < k (row-major)
//   (-i E_jk + i E_kj) / sqrt 2   for j < k (row-major)
// ---------------------------------------------------------------------------

inline RealVector herm_coords(const HermitianMatrix& x) {
  const auto n = x.dim();
  const ComplexMatrix& m = x.matrix();
  RealVector c(n * n);
  const double r2 = std::sqrt(2.0);
  Eigen::Index idx = 0;
  for (Eigen::Index k = 0; k < n; ++k) c(idx++) = m(k, k).real();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) c(idx++) = r2 * m(j, k).real();
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) c(idx++) = -r2 * m(j, k).imag();
  }
  return c;
}

inline HermitianMatrix from_herm_coords(const RealVector& c, Eigen::Index n) {
  require_same_dim(c.size(), n * n, "from_herm_coords");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const double r2 = std::sqrt(2.0);
  Eigen::Index idx = 0;
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = c(idx++);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double v = c(idx++) / r2;
      m(j, k) += v;
      m(k, j) += v;
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double v = c(idx++) / r2;
      m(j, k) += Complex(0.0, -v);
      m(k, j) += Complex(0.0, v);
    }
  }
  return HermitianMatrix::unchecked(m);
}

/// |Y| x n^2 matrix whose rows are the coordinates of the elements.
inline RealMatrix coordinate_matrix(const Measurement& mu) {
  const auto n = mu.dim();
  RealMatrix phi(static_cast<Eigen::Index>(mu.size()), n * n);
  for (std::size_t y = 0; y < mu.size(); ++y) {
    phi.row(static_cast<Eigen::Index>(y)) = herm_coords(mu[y]).transpose();
  }
  return phi;
}

inline Eigen::Index numerical_rank(const RealMatrix& m, double rel = tol::rank_rel) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel * s(0)) ++r;
  }
  return r;
}

/// The elements span Herm(C^n) over the reals.
inline bool is_tomographically_complete(const Measurement& mu) {
  const auto n = mu.dim();
  return numerical_rank(coordinate_matrix(mu)) == n * n;
}

/// A tomographically complete POVM with exactly n^2 outcomes.
///
/// Spanning PSD set: |k><k|, (|j>+|k>)(<j|+<k|)/2 and (|j>+i|k>)(<j|-i<k|)/2
/// for j < k. With T their sum (positive definite), mu_y = T^{-1/2} M_y T^{-1/2};
/// congruence by an invertible matrix keeps the span and makes the sum I.
inline Measurement canonical_complete(Eigen::Index n) {
  if (n < 1) throw DomainError("canonical_complete: n must be positive");
  std::vector<ComplexMatrix> spanning;
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexVector e = ComplexVector::Unit(n, k);
    spanning.push_back(e * e.adjoint());
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexVector v = ComplexVector::Unit(n, j) + ComplexVector::Unit(n, k);
      spanning.push_back(v * v.adjoint() * 0.5);
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexVector v = ComplexVector::Unit(n, j) + Complex(0.0, 1.0) * ComplexVector::Unit(n, k);
      spanning.push_back(v * v.adjoint() * 0.5);
    }
  }
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  for (const auto& m : spanning) t += m;
  const auto sd = spectral_decompose(HermitianMatrix::unchecked(t));
  RealVector inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) inv_sqrt(i) = 1.0 / std::sqrt(sd.eigenvalues(i));
  const ComplexMatrix w = sd.reconstruct_with(inv_sqrt).matrix();
  std::vector<HermitianMatrix> els;
  els.reserve(spanning.size());
  for (const auto& m : spanning) els.push_back(HermitianMatrix::unchecked(w * m * w));
  return Measurement::from_psd_elements(std::move(els));
}

/// phi: X -> (<mu_y, X>)_y as a real |Y| x n^2 matrix, and its Moore-Penrose
/// pseudoinverse.
class TomographicMap {
 public:
  explicit TomographicMap(Measurement mu) : mu_(std::move(mu)) {
    phi_ = coordinate_matrix(mu_);
    Eigen::JacobiSVD<RealMatrix> svd(phi_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    RealVector sinv = RealVector::Zero(s.size());
    rank_ = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(0) > 0.0 && s(i) > tol::pinv_rel * s(0)) {
        sinv(i) = 1.0 / s(i);
      }
      if (s(0) > 0.0 && s(i) > tol::rank_rel * s(0)) ++rank_;
    }
    phi_pinv_ = svd.matrixV() * sinv.asDiagonal() * svd.matrixU().transpose();
  }

  const Measurement& measurement() const { return mu_; }
  const RealMatrix& phi() const { return phi_; }
  const RealMatrix& phi_pinv() const { return phi_pinv_; }
  Eigen::Index dim() const { return mu_.dim(); }
  std::size_t outcomes() const { return mu_.size(); }
  bool complete() const { return rank_ == dim() * dim(); }

  /// phi X.
  RealVector apply(const HermitianMatrix& x) const { return phi_ * herm_coords(x); }

  /// phi^+ p.
  HermitianMatrix lift(const RealVector& p) const {
    require_same_dim(p.size(), phi_.rows(), "TomographicMap::lift");
    return from_herm_coords(phi_pinv_ * p, dim());
  }

  /// Adjoint phi*: R^Y -> Herm, v -> sum_y v_y mu_y.
  HermitianMatrix adjoint(const RealVector& v) const {
    require_same_dim(v.size(), phi_.rows(), "TomographicMap::adjoint");
    return from_herm_coords(phi_.transpose() * v, dim());
  }

  /// Adjoint of the pseudoinverse, phi^{+*}: Herm -> R^Y.
  RealVector pinv_adjoint(const HermitianMatrix& x) const {
    return phi_pinv_.transpose() * herm_coords(x);
  }

 private:
  Measurement mu_;
  RealMatrix phi_;
  RealMatrix phi_pinv_;
  Eigen::Index rank_ = 0;
};

inline TomographicMap tomographic_map(Measurement mu) { return TomographicMap(std::move(mu)); }

}  // namespace qelicit
