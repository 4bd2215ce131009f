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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "qelicit/errors.hpp"
#include "qelicit/tolerances.hpp"

namespace qelicit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction checks the Hermitian residual against
/// herm_rel * max(1, |M|_max) and then stores the exactly symmetrized
/// (M + M*) / 2, so downstream code may rely on exact Hermiticity.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const ComplexMatrix& m) : m_(m) {
    if (m.rows() != m.cols()) {
      throw InvariantViolation("Hermitian: matrix is not square");
    }
    if (m.rows() == 0) throw InvariantViolation("Hermitian: empty matrix");
    if (!all_finite(m)) throw InvariantViolation("Hermitian: non-finite entry");
    const double resid = max_abs(m - m.adjoint());
    if (resid > tol::herm_rel * std::max(1.0, max_abs(m))) {
      throw InvariantViolation("Hermitian: max |M - M*| = " + std::to_string(resid));
    }
    m_ = (m + m.adjoint()) * 0.5;
  }

  /// Real symmetric input.
  static HermitianMatrix from_real(const RealMatrix& m) {
    return HermitianMatrix(m.cast<Complex>());
  }

  static HermitianMatrix identity(Eigen::Index n) {
    return HermitianMatrix(ComplexMatrix::Identity(n, n));
  }
  static HermitianMatrix zero(Eigen::Index n) {
    return HermitianMatrix(ComplexMatrix::Zero(n, n));
  }
  static HermitianMatrix diagonal(const RealVector& d) {
    return HermitianMatrix(d.cast<Complex>().asDiagonal().toDenseMatrix());
  }
  /// x x*.
  static HermitianMatrix outer(const ComplexVector& x) {
    return HermitianMatrix(x * x.adjoint());
  }

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "Hermitian +");
    return HermitianMatrix(Trusted{}, a.m_ + b.m_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "Hermitian -");
    return HermitianMatrix(Trusted{}, a.m_ - b.m_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(Trusted{}, s * a.m_);
  }
  friend HermitianMatrix operator*(const HermitianMatrix& a, double s) { return s * a; }

  /// U A U*.
  HermitianMatrix conjugated(const ComplexMatrix& u) const {
    return HermitianMatrix(u * m_ * u.adjoint());
  }

  /// Symmetrizes without validating. For products that are Hermitian by
  /// construction (U D U*, sums of outer products).
  static HermitianMatrix unchecked(const ComplexMatrix& m) {
    ComplexMatrix s = (m + m.adjoint()) * 0.5;
    return HermitianMatrix(Trusted{}, std::move(s));
  }

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Hilbert-Schmidt inner product Tr(A* B) = Re Tr(A B) for Hermitian A, B.
inline double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "hs_inner");
  // Tr(A B) = sum_ij A_ij B_ji = sum_ij conj(A_ji) B_ji for Hermitian A.
  const Complex t = a.matrix().cwiseProduct(b.matrix().transpose()).sum();
  const double scale = std::max(1.0, max_abs(a.matrix()) * max_abs(b.matrix()) *
                                         static_cast<double>(a.dim() * a.dim()));
  if (std::abs(t.imag()) > tol::imag_residual * scale) {
    throw NumericalError("hs_inner: imaginary residual " + std::to_string(t.imag()));
  }
  return t.real();
}

/// Orthonormal eigenbasis with eigenvalues in non-increasing order.
///
/// Phase convention: every eigenvector's largest-magnitude component is real
/// and positive. Degenerate clusters (eigenvalues within tol::cluster) are
/// re-orthonormalized; ties keep the solver's original order.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;  // column i pairs with eigenvalues[i]

  Eigen::Index dim() const { return eigenvalues.size(); }
  ComplexVector vector(Eigen::Index i) const { return eigenvectors.col(i); }

  /// sum_i lambda_i x_i x_i*.
  HermitianMatrix reconstruct() const {
    return reconstruct_with(eigenvalues);
  }

  /// sum_i w_i x_i x_i* for arbitrary real weights in the same basis.
  HermitianMatrix reconstruct_with(const RealVector& weights) const {
    require_same_dim(weights.size(), dim(), "reconstruct_with");
    return HermitianMatrix::unchecked(eigenvectors * weights.cast<Complex>().asDiagonal() *
                                      eigenvectors.adjoint());
  }
};

namespace detail {

inline void fix_phase(Eigen::Ref<ComplexVector> v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // First index wins among (numerically) equal magnitudes.
    const double a = std::abs(v(i));
    if (a > best + 1e-12) {
      best = a;
      arg = i;
    }
  }
  if (best <= 0.0) return;
  const Complex phase = std::conj(v(arg)) / std::abs(v(arg));
  v *= phase;
  v(arg) = Complex(v(arg).real(), 0.0);
}

/// Modified Gram-Schmidt on columns [begin, end).
inline void orthonormalize_columns(ComplexMatrix& m, Eigen::Index begin, Eigen::Index end) {
  for (Eigen::Index j = begin; j < end; ++j) {
    for (Eigen::Index i = begin; i < j; ++i) {
      const Complex c = m.col(i).dot(m.col(j));
      m.col(j) -= c * m.col(i);
    }
    const double nrm = m.col(j).norm();
    if (nrm <= 0.0) throw NumericalError("orthonormalize: degenerate column");
    m.col(j) /= nrm;
  }
}

}  // namespace detail

inline SpectralDecomposition spectral_decompose(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectral_decompose: eigensolver did not converge");
  }
  const auto n = a.dim();
  const RealVector& w = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return w(i) > w(j); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = w(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  for (Eigen::Index begin = 0; begin < n;) {
    Eigen::Index end = begin + 1;
    while (end < n && out.eigenvalues(end - 1) - out.eigenvalues(end) <= tol::cluster) ++end;
    if (end - begin > 1) detail::orthonormalize_columns(out.eigenvectors, begin, end);
    begin = end;
  }
  for (Eigen::Index k = 0; k < n; ++k) detail::fix_phase(out.eigenvectors.col(k));
  return out;
}

/// Eigenvalues only, non-increasing.
inline RealVector eigenvalues(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues().reverse();
}

inline bool is_psd(const HermitianMatrix& a, double tol = tol::psd) {
  return eigenvalues(a).minCoeff() >= -tol;
}

/// Hermitian positive-semidefinite with unit trace.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  explicit DensityMatrix(HermitianMatrix h) : h_(std::move(h)) {
    if (std::abs(h_.trace() - 1.0) > tol::trace) {
      throw InvariantViolation("density: |trace - 1| = " +
                               std::to_string(std::abs(h_.trace() - 1.0)));
    }
    const double lmin = eigenvalues(h_).minCoeff();
    if (lmin < -tol::psd) {
      throw InvariantViolation("density: min eigenvalue " + std::to_string(lmin) +
                               " is negative");
    }
  }
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  /// x x* / |x|^2.
  static DensityMatrix pure(const ComplexVector& x) {
    const double nrm = x.norm();
    if (!(nrm > 0.0)) throw InvariantViolation("pure state: zero vector");
    return DensityMatrix(HermitianMatrix::outer(x / nrm));
  }
  static DensityMatrix maximally_mixed(Eigen::Index n) {
    return DensityMatrix(HermitianMatrix::identity(n) * (1.0 / static_cast<double>(n)));
  }
  static DensityMatrix diagonal(const RealVector& p) {
    return DensityMatrix(HermitianMatrix::diagonal(p));
  }

  /// t * a + (1 - t) * b for t in [0, 1].
  static DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double t) {
    if (t < 0.0 || t > 1.0) throw DomainError("mix: weight outside [0, 1]");
    return DensityMatrix(t * a.h_ + (1.0 - t) * b.h_);
  }

  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  Eigen::Index dim() const { return h_.dim(); }

  DensityMatrix conjugated(const ComplexMatrix& u) const {
    return DensityMatrix(h_.conjugated(u));
  }

  operator const HermitianMatrix&() const { return h_; }  // NOLINT

 private:
  HermitianMatrix h_;
};

/// Square matrix with U U* = I within tol::unitary.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  explicit UnitaryMatrix(ComplexMatrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols()) throw InvariantViolation("unitary: not square");
    const auto n = u_.rows();
    const double resid = max_abs(u_ * u_.adjoint() - ComplexMatrix::Identity(n, n));
    if (resid > tol::unitary) {
      throw InvariantViolation("unitary: |U U* - I|_max = " + std::to_string(resid));
    }
  }
  static UnitaryMatrix identity(Eigen::Index n) {
    return UnitaryMatrix(ComplexMatrix::Identity(n, n));
  }
  static UnitaryMatrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix h(2, 2);
    h << r, r, r, -r;
    return UnitaryMatrix(h);
  }

  const ComplexMatrix& matrix() const { return u_; }
  Eigen::Index dim() const { return u_.rows(); }

 private:
  ComplexMatrix u_;
};

/// Frobenius distance |A - B|_F.
inline double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "frobenius_distance");
  return (a.matrix() - b.matrix()).norm();
}

/// Orthogonal projector onto the span of eigenvectors whose eigenvalue
/// exceeds `threshold`.
inline HermitianMatrix range_projector(const SpectralDecomposition& sd, double threshold) {
  RealVector w(sd.dim());
  for (Eigen::Index i = 0; i < sd.dim(); ++i) w(i) = sd.eigenvalues(i) > threshold ? 1.0 : 0.0;
  return sd.reconstruct_with(w);
}

}  // namespace qelicit
