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

#include <cstdint>
#include <random>

#include "qelicit/hermitian.hpp"

namespace qelicit {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent per-trial streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Generator for trial `index` of a run seeded with `seed`.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0) {
  return Rng(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL * (salt + 1))));
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Standard complex Gaussian, E|z|^2 = 1.
inline Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return Complex(re, im) / std::sqrt(2.0);
}

inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = complex_gaussian(rng);
  }
  return g;
}

/// rho = G G* / Tr(G G*) with G an n x rank Ginibre matrix.
inline DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  if (n < 1 || rank < 1 || rank > n) throw DomainError("random_density: need 1 <= rank <= n");
  const ComplexMatrix g = ginibre(n, rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(HermitianMatrix::unchecked(m));
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal moved into Q.
inline UnitaryMatrix random_unitary(Eigen::Index n, Rng& rng) {
  if (n < 1) throw DomainError("random_unitary: n must be positive");
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return UnitaryMatrix(std::move(q));
}

/// Unit vector with iid complex Gaussian direction.
inline ComplexVector random_pure(Eigen::Index n, Rng& rng) {
  if (n < 1) throw DomainError("random_pure: n must be positive");
  ComplexVector v = ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

/// Random Hermitian matrix with iid Gaussian entries (GUE-like), scale ~1.
inline HermitianMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  return HermitianMatrix::unchecked(g + g.adjoint());
}

/// Uniform point of the probability simplex (flat Dirichlet).
inline RealVector random_simplex(Eigen::Index n, Rng& rng) {
  std::exponential_distribution<double> ex(1.0);
  RealVector p(n);
  for (Eigen::Index i = 0; i < n; ++i) p(i) = ex(rng);
  return p / p.sum();
}

}  // namespace qelicit
