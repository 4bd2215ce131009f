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
#include <cstdint>
#include <functional>
#include <limits>

#include "qelicit/parallel.hpp"
#include "qelicit/random.hpp"

namespace qelicit {

struct OptimizeConfig {
  std::size_t restarts = 50;
  std::size_t max_iters = 2000;
  double grad_tol = 1e-10;
  std::uint64_t seed = 7;
};

struct StiefelResult {
  ComplexMatrix x;  // n x k, orthonormal columns
  double value = -std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
};

/// Q factor of a thin QR with R's diagonal made real positive; the standard
/// retraction onto the complex Stiefel manifold.
inline ComplexMatrix qr_retract(const ComplexMatrix& y) {
  Eigen::HouseholderQR<ComplexMatrix> qr(y);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(y.rows(), y.cols());
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < y.cols(); ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

/// Projection of a Euclidean gradient onto the tangent space at x.
inline ComplexMatrix stiefel_tangent(const ComplexMatrix& x, const ComplexMatrix& g) {
  const ComplexMatrix s = x.adjoint() * g;
  return g - x * (0.5 * (s + s.adjoint()));
}

/// Maximizes f over n x k matrices with orthonormal columns by projected
/// gradient ascent with Armijo backtracking, from `restarts` random starts.
/// `grad` is the Euclidean gradient (d/dRe + i d/dIm). Restarts are
/// independent streams; the best result (lowest index on ties) is returned.
inline StiefelResult stiefel_maximize(
    Eigen::Index n, Eigen::Index k, const std::function<double(const ComplexMatrix&)>& f,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& grad, const OptimizeConfig& cfg) {
  auto runs = parallel_map(std::max<std::size_t>(cfg.restarts, 1), [&](std::size_t r) {
    Rng rng = stream_rng(cfg.seed, r, 11);
    StiefelResult out;
    out.x = random_unitary(n, rng).matrix().leftCols(k);
    out.value = f(out.x);
    double step = 1.0;
    for (; out.iterations < cfg.max_iters; ++out.iterations) {
      const ComplexMatrix g = stiefel_tangent(out.x, grad(out.x));
      const double g2 = g.squaredNorm();
      if (std::sqrt(g2) < cfg.grad_tol) break;
      bool moved = false;
      while (step > 1e-14) {
        ComplexMatrix cand = qr_retract(out.x + step * g);
        const double v = f(cand);
        if (v >= out.value + 1e-4 * step * g2) {
          out.x = std::move(cand);
          out.value = v;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
      step = std::min(step * 2.0, 1e6);
    }
    return out;
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].value > runs[best].value) best = i;
  }
  return runs[best];
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
inline double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qelicit
