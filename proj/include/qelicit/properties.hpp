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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qelicit/optimize.hpp"
#include "qelicit/quantum_score.hpp"

namespace qelicit {

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

/// Gamma: Dens -> R, with reports encoded as real vectors (canonical
/// representatives for set-valued properties).
struct QuantumProperty {
  std::string name;
  std::function<RealVector(const DensityMatrix&)> eval;
  bool set_valued = false;
  std::function<bool(const DensityMatrix&, const RealVector&)> membership = nullptr;

  RealVector operator()(const DensityMatrix& rho) const { return eval(rho); }

  bool contains(const DensityMatrix& rho, const RealVector& r) const {
    if (membership) return membership(rho, r);
    const RealVector v = eval(rho);
    return v.size() == r.size() && (v - r).cwiseAbs().maxCoeff() <= 1e-8;
  }
};

inline RealVector scalar_report(double v) { return RealVector::Constant(1, v); }

/// Complex vector as [re..., im...].
inline RealVector flatten(const ComplexVector& x) {
  RealVector out(2 * x.size());
  out << x.real(), x.imag();
  return out;
}

inline ComplexVector unflatten(const RealVector& r) {
  const auto n = r.size() / 2;
  ComplexVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = Complex(r(i), r(n + i));
  return x;
}

inline QuantumProperty eigenvalue_property() {
  return {"eigenvalues", [](const DensityMatrix& r) { return eigenvalues(r.hermitian()); }};
}

inline QuantumProperty top_eigenvalue_property() {
  return {"top-eigenvalue",
          [](const DensityMatrix& r) { return scalar_report(eigenvalues(r.hermitian())(0)); }};
}

inline QuantumProperty entropy_property() {
  return {"entropy", [](const DensityMatrix& r) { return scalar_report(von_neumann_entropy(r)); }};
}

/// 1 - <rho, rho>.
inline QuantumProperty tsallis2_property() {
  return {"tsallis2", [](const DensityMatrix& r) {
            return scalar_report(1.0 - hs_inner(r.hermitian(), r.hermitian()));
          }};
}

/// Frobenius (Schatten-2) norm.
inline QuantumProperty norm2_property() {
  return {"norm2", [](const DensityMatrix& r) { return scalar_report(r.matrix().norm()); }};
}

/// Top eigenvector (phase fixed). Set valued when lambda_1 is degenerate:
/// any unit x with <x, rho x> = lambda_1 belongs.
inline QuantumProperty top_eigenvector_property() {
  QuantumProperty p{"eigvec-top", [](const DensityMatrix& r) {
                      return flatten(spectral_decompose(r.hermitian()).vector(0));
                    }};
  p.set_valued = true;
  p.membership = [](const DensityMatrix& rho, const RealVector& rep) {
    const ComplexVector x = unflatten(rep);
    if (std::abs(x.norm() - 1.0) > 1e-8) return false;
    const double top = eigenvalues(rho.hermitian())(0);
    return x.dot(rho.matrix() * x).real() >= top - 1e-8;
  };
  return p;
}

// ---------------------------------------------------------------------------
// Property scores
// ---------------------------------------------------------------------------

/// Score for a property with report type R: report -> measurement plus
/// (finite) payments.
template <typename R>
struct PropertyScore {
  std::string name;
  std::string report_space;
  std::function<ScoredMeasurement(const R&)> assess;

  ScoredMeasurement at(const R& report) const {
    auto sm = assess(report);
    if (sm.payments.size() != sm.measurement.size()) {
      throw InvariantViolation(name + ": payment count does not match outcome count");
    }
    return sm;
  }
  Measurement measure(const R& report) const { return at(report).measurement; }
  double score(const R& report, std::size_t y) const { return at(report).payments.at(y).value(); }
  double expected(const R& report, const DensityMatrix& rho) const {
    return expected_score(at(report), rho).value();
  }
};

/// Checks orthonormal columns within tol::orthonormal and re-orthonormalizes.
inline ComplexMatrix validated_frame(const ComplexMatrix& x, const std::string& who) {
  const auto k = x.cols();
  if (k < 1 || k > x.rows()) throw DomainError(who + ": need 1 <= columns <= dim");
  const double dev = max_abs(x.adjoint() * x - ComplexMatrix::Identity(k, k));
  if (dev > tol::orthonormal) {
    throw DomainError(who + ": report vectors not orthonormal (deviation " + std::to_string(dev) + ")");
  }
  ComplexMatrix out = x;
  detail::orthonormalize_columns(out, 0, k);
  return out;
}

/// Measurement {x_1 x_1*, ..., x_k x_k*, I - sum x_i x_i*} paying w_i on x_i
/// and `rest` on the last outcome.
inline ScoredMeasurement weighted_frame_assessment(const ComplexMatrix& x, const RealVector& w,
                                                   double rest) {
  const auto n = x.rows();
  const auto k = x.cols();
  std::vector<HermitianMatrix> els;
  std::vector<ExtendedReal> pay;
  ComplexMatrix remaining = ComplexMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < k; ++i) {
    const ComplexMatrix p = x.col(i) * x.col(i).adjoint();
    els.push_back(HermitianMatrix::unchecked(p));
    pay.emplace_back(w(i));
    remaining -= p;
  }
  els.push_back(HermitianMatrix::unchecked(remaining));
  pay.emplace_back(rest);
  return {Measurement::from_psd_elements(std::move(els)), std::move(pay)};
}

/// Reports x on the unit sphere; mu(x) = {I - xx*, xx*}, s(x, y) = 1{y = 1}.
/// Expected score <x, rho x>.
inline PropertyScore<ComplexVector> top_eigenvector_score() {
  return {"eigvec-top", "unit vectors", [](const ComplexVector& x) {
            if (std::abs(x.norm() - 1.0) > tol::orthonormal) {
              throw DomainError("eigvec-top: report is not a unit vector");
            }
            const ComplexVector u = x / x.norm();
            const ComplexMatrix p = u * u.adjoint();
            const auto n = u.size();
            return ScoredMeasurement{
                Measurement::from_psd_elements({HermitianMatrix::unchecked(ComplexMatrix::Identity(n, n) - p),
                                                HermitianMatrix::unchecked(p)}),
                {ExtendedReal(0.0), ExtendedReal(1.0)}};
          }};
}

/// Reports are n x k matrices with orthonormal columns (x_1..x_k); pays v_y
/// on x_y x_y* and 0 on the rest. Maximum <v, lambda(rho)_{1..k}>.
inline PropertyScore<ComplexMatrix> top_k_eigenvector_score(Eigen::Index k, RealVector v) {
  if (k < 1 || v.size() != k) throw DomainError("eigvec-topk: need k weights");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (v(i) <= 0.0 || (i > 0 && v(i) >= v(i - 1))) {
      throw DomainError("eigvec-topk: weights must be positive and strictly decreasing");
    }
  }
  return {"eigvec-topk", "orthonormal k-frames", [k, v = std::move(v)](const ComplexMatrix& x) {
            if (x.cols() != k) throw DomainError("eigvec-topk: report must have k columns");
            return weighted_frame_assessment(validated_frame(x, "eigvec-topk"), v, 0.0);
          }};
}

/// Top-k plus bottom-m eigenvectors. v has length n with
/// v_1 > ... > v_k > 0 = v_{k+1} = ... = v_{n-m} > v_{n-m+1} > ... > v_n.
/// Reports are n x (k + m) frames: the k top vectors, then the m bottom ones
/// (matching v_{n-m+1}..v_n). Maximum <v, lambda(rho)>.
inline PropertyScore<ComplexMatrix> top_bottom_score(Eigen::Index k, Eigen::Index m, RealVector v) {
  const auto n = v.size();
  if (k < 0 || m < 0 || k + m < 1 || k + m > n) throw DomainError("top-bottom: need 1 <= k + m <= n");
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool top = i < k;
    const bool bottom = i >= n - m;
    const bool ok = top      ? v(i) > 0.0 && (i == 0 || v(i) < v(i - 1))
                    : bottom ? v(i) < 0.0 && (i == n - m || v(i) < v(i - 1))
                             : v(i) == 0.0;
    if (!ok) throw DomainError("top-bottom: invalid weight pattern at index " + std::to_string(i));
  }
  RealVector w(k + m);
  w << v.head(k), v.tail(m);
  return {"eigvec-top-bottom", "orthonormal (k+m)-frames",
          [n, k, m, w = std::move(w)](const ComplexMatrix& x) {
            if (x.rows() != n || x.cols() != k + m) {
              throw DomainError("top-bottom: report must be n x (k + m)");
            }
            return weighted_frame_assessment(validated_frame(x, "top-bottom"), w, 0.0);
          }};
}

/// Rank-k eigen-pair score. Report A PSD with rank <= k and eigenvalues alpha;
/// measure A's eigenbasis, pay 2 alpha_y - <alpha, alpha>. Expected score
/// 2<A, rho> - <alpha, alpha>, maximized by the top-k spectral truncation of rho.
inline PropertyScore<HermitianMatrix> eigen_pair_score(Eigen::Index k) {
  if (k < 1) throw DomainError("eig-pair: k must be positive");
  return {"eig-pair", "PSD matrices of rank <= k", [k](const HermitianMatrix& a) {
            const auto sd = spectral_decompose(a);
            const auto n = sd.dim();
            RealVector alpha = sd.eigenvalues;
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
              if (alpha(i) < -tol::rank_rel) throw DomainError("eig-pair: report is not PSD");
              if (alpha(i) > tol::rank_rel) {
                ++rank;
              } else {
                alpha(i) = 0.0;
              }
            }
            if (rank > k) throw DomainError("eig-pair: report rank exceeds k");
            const double sq = alpha.squaredNorm();
            std::vector<ExtendedReal> pay(static_cast<std::size_t>(n));
            for (Eigen::Index y = 0; y < n; ++y) pay[static_cast<std::size_t>(y)] = 2.0 * alpha(y) - sq;
            return ScoredMeasurement{Measurement::from_basis(sd.eigenvectors), std::move(pay)};
          }};
}

template <typename R>
struct ValuedReport {
  double alpha = 0.0;
  R base;
};

/// s*((alpha, r), y) = G(alpha) + dG(alpha) (s(r, y) - alpha) for a strictly
/// convex increasing G. The optimal alpha is the base score's optimal value.
template <typename R>
PropertyScore<ValuedReport<R>> with_value(PropertyScore<R> base, std::function<double(double)> g,
                                          std::function<double(double)> dg) {
  for (int i = -500; i <= 500; ++i) {
    const double a = 0.1 * i;
    if (!(dg(a) > 0.0)) {
      throw DomainError("with_value: dG(" + std::to_string(a) + ") is not positive");
    }
  }
  std::string name = "value+" + base.name;
  std::string space = "R x " + base.report_space;
  return {std::move(name), std::move(space),
          [base = std::move(base), g = std::move(g), dg = std::move(dg)](const ValuedReport<R>& r) {
            const double d = dg(r.alpha);
            if (!(d > 0.0)) throw DomainError("with_value: dG is not positive at the report");
            auto sm = base.at(r.base);
            const double ga = g(r.alpha);
            for (auto& p : sm.payments) p = ExtendedReal(ga + d * (p.value() - r.alpha));
            return sm;
          }};
}

/// Report: a unit vector, or abstain (no vector).
struct AbstainReport {
  Eigen::Index dim = 0;
  std::optional<ComplexVector> vector;

  static AbstainReport abstain(Eigen::Index n) { return {n, std::nullopt}; }
  static AbstainReport of(ComplexVector x) {
    const auto n = x.size();
    return {n, std::move(x)};
  }
  bool abstains() const { return !vector.has_value(); }
};

/// Abstain pays alpha under the trivial measurement {I}; a vector report is
/// scored like the top-eigenvector score. Abstaining is optimal iff
/// lambda_1(rho) < alpha.
inline PropertyScore<AbstainReport> abstain_score(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("abstain: alpha must be in (0, 1)");
  return {"abstain", "unit vectors or abstain", [alpha](const AbstainReport& r) {
            if (r.abstains()) {
              return ScoredMeasurement{
                  Measurement::from_psd_elements({HermitianMatrix::identity(r.dim)}),
                  {ExtendedReal(alpha)}};
            }
            return top_eigenvector_score().at(*r.vector);
          }};
}

/// Linear property Gamma(rho) = sum_y z(y) <mu_y, rho> (rows of z are the
/// per-outcome k-vectors) with its quadratic score s(r, y) = 2<r, z(y)> - |r|^2
/// under the fixed measurement mu.
struct ExpectationElicitation {
  QuantumProperty property;
  PropertyScore<RealVector> score;
  RealMatrix z;
  Measurement mu;

  /// A_i = sum_y z(y)_i mu_y, so that Gamma(rho)_i = <A_i, rho>.
  std::vector<HermitianMatrix> observables() const {
    std::vector<HermitianMatrix> out;
    for (Eigen::Index i = 0; i < z.cols(); ++i) {
      ComplexMatrix a = ComplexMatrix::Zero(mu.dim(), mu.dim());
      for (std::size_t y = 0; y < mu.size(); ++y) {
        a += z(static_cast<Eigen::Index>(y), i) * mu[y].matrix();
      }
      out.push_back(HermitianMatrix::unchecked(a));
    }
    return out;
  }
};

inline ExpectationElicitation expectation_property(RealMatrix z, Measurement mu) {
  if (z.rows() != static_cast<Eigen::Index>(mu.size())) {
    throw DimensionMismatch("expectation_property: z needs one row per outcome");
  }
  QuantumProperty prop{"expectation", [z, mu](const DensityMatrix& rho) -> RealVector {
                         return z.transpose() * apply_measurement(mu, rho).probs();
                       }};
  PropertyScore<RealVector> score{
      "expectation", "R^k", [z, mu](const RealVector& r) {
        if (r.size() != z.cols()) throw DomainError("expectation: report must have k entries");
        std::vector<ExtendedReal> pay(mu.size());
        const double sq = r.squaredNorm();
        for (std::size_t y = 0; y < mu.size(); ++y) {
          pay[y] = 2.0 * r.dot(z.row(static_cast<Eigen::Index>(y)).transpose()) - sq;
        }
        return ScoredMeasurement{mu, std::move(pay)};
      }};
  return {std::move(prop), std::move(score), std::move(z), std::move(mu)};
}

// ---------------------------------------------------------------------------
// Optimizing reports
// ---------------------------------------------------------------------------

template <typename R>
struct Optimum {
  R report;
  double value = 0.0;
};

/// Maximizes a frame score over n x k frames. The ascent direction comes from
/// the payments the score assigns at the current frame: with w_i on x_i x_i*
/// and w_rest on the remainder, the gradient is 2 rho X diag(w - w_rest).
inline Optimum<ComplexMatrix> maximize_frame_score(const PropertyScore<ComplexMatrix>& s,
                                                   const DensityMatrix& rho, Eigen::Index k,
                                                   const OptimizeConfig& cfg = {}) {
  const auto n = rho.dim();
  auto f = [&](const ComplexMatrix& x) { return s.expected(x, rho); };
  auto grad = [&](const ComplexMatrix& x) {
    const auto sm = s.at(x);
    const double rest = sm.payments.back().value();
    RealVector w(k);
    for (Eigen::Index i = 0; i < k; ++i) w(i) = sm.payments[static_cast<std::size_t>(i)].value() - rest;
    ComplexMatrix g = 2.0 * rho.matrix() * x * w.cast<Complex>().asDiagonal();
    return g;
  };
  auto res = stiefel_maximize(n, k, f, grad, cfg);
  return {res.x, res.value};
}

inline Optimum<ComplexVector> maximize_top_eigenvector(const PropertyScore<ComplexVector>& s,
                                                       const DensityMatrix& rho,
                                                       const OptimizeConfig& cfg = {}) {
  auto f = [&](const ComplexMatrix& x) { return s.expected(x.col(0), rho); };
  auto grad = [&](const ComplexMatrix& x) -> ComplexMatrix { return 2.0 * rho.matrix() * x; };
  auto res = stiefel_maximize(rho.dim(), 1, f, grad, cfg);
  return {res.x.col(0), res.value};
}

/// Rank-k eigen-pair reports A = X diag(alpha) X*. For fixed X the best
/// alpha_i is max(0, x_i* rho x_i), leaving sum_i (x_i* rho x_i)^2 to maximize
/// over frames; the returned value is the score's own expected value.
inline Optimum<HermitianMatrix> maximize_eigen_pair(const PropertyScore<HermitianMatrix>& s,
                                                    const DensityMatrix& rho, Eigen::Index k,
                                                    const OptimizeConfig& cfg = {}) {
  const ComplexMatrix& r = rho.matrix();
  auto f = [&](const ComplexMatrix& x) {
    return (x.adjoint() * r * x).diagonal().real().squaredNorm();
  };
  auto grad = [&](const ComplexMatrix& x) -> ComplexMatrix {
    const RealVector c = (x.adjoint() * r * x).diagonal().real();
    return 4.0 * r * x * c.cast<Complex>().asDiagonal();
  };
  const auto res = stiefel_maximize(rho.dim(), k, f, grad, cfg);
  const RealVector alpha = (res.x.adjoint() * r * res.x).diagonal().real().cwiseMax(0.0);
  const HermitianMatrix a =
      HermitianMatrix::unchecked(res.x * alpha.cast<Complex>().asDiagonal() * res.x.adjoint());
  return {a, s.expected(a, rho)};
}

/// Best alpha for a fixed base report, by golden-section search on [lo, hi].
template <typename R>
Optimum<ValuedReport<R>> maximize_value(const PropertyScore<ValuedReport<R>>& s, const R& base,
                                        const DensityMatrix& rho, double lo, double hi) {
  auto f = [&](double a) { return s.expected(ValuedReport<R>{a, base}, rho); };
  const double a = golden_section_maximize(f, lo, hi);
  return {ValuedReport<R>{a, base}, f(a)};
}

// ---------------------------------------------------------------------------
// Level sets, reductions, identification
// ---------------------------------------------------------------------------

struct LevelSetWitness {
  bool is_counterexample = false;
  RealVector report1, report2, report_mix;
  double level_gap = 0.0;  // |Gamma(rho1) - Gamma(rho2)|_max
  double mix_gap = 0.0;    // |Gamma(mix) - Gamma(rho1)|_max
};

/// Counterexample to convex level sets: Gamma(rho1) = Gamma(rho2) within 1e-8
/// while Gamma(t rho1 + (1 - t) rho2) differs by more than 1e-6.
inline LevelSetWitness level_set_witness(const QuantumProperty& gamma, const DensityMatrix& rho1,
                                         const DensityMatrix& rho2, double t) {
  LevelSetWitness w;
  w.report1 = gamma(rho1);
  w.report2 = gamma(rho2);
  w.report_mix = gamma(DensityMatrix::mix(rho1, rho2, t));
  w.level_gap = (w.report1 - w.report2).cwiseAbs().maxCoeff();
  w.mix_gap = (w.report_mix - w.report1).cwiseAbs().maxCoeff();
  w.is_counterexample = w.level_gap <= 1e-8 && w.mix_gap > 1e-6;
  return w;
}

struct WitnessSearch {
  bool found = false;
  std::size_t probes_used = 0;
  DensityMatrix rho1, rho2;
  double t = 0.5;
  LevelSetWitness witness;
};

/// Probes pairs (rho, U rho U*) with Haar U and random mixing weights; every
/// unitarily invariant property takes equal values on such pairs.
inline WitnessSearch find_level_set_witness(const QuantumProperty& gamma, Eigen::Index n,
                                            std::size_t probes, std::uint64_t seed) {
  WitnessSearch out;
  for (std::size_t i = 0; i < probes; ++i) {
    Rng rng = stream_rng(seed, i, 21);
    const auto rho1 = random_density(n, 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)), rng);
    const auto rho2 = rho1.conjugated(random_unitary(n, rng).matrix());
    const double t = 0.1 + 0.8 * uniform01(rng);
    auto w = level_set_witness(gamma, rho1, rho2, t);
    out.probes_used = i + 1;
    if (w.is_counterexample) {
      out.found = true;
      out.rho1 = rho1;
      out.rho2 = rho2;
      out.t = t;
      out.witness = std::move(w);
      return out;
    }
  }
  return out;
}

/// A property of outcome distributions p in the image of phi.
struct ClassicalProperty {
  std::string name;
  std::function<RealVector(const RealVector&)> eval;
  RealVector operator()(const RealVector& p) const { return eval(p); }
};

/// Gamma_diamond(p) = Gamma(phi^+ p). Throws DomainError if phi^+ p is not a
/// density matrix (p outside phi(Dens)).
inline ClassicalProperty gamma_diamond(QuantumProperty gamma, TomographicMap t) {
  if (!t.complete()) throw DomainError("gamma_diamond: measurement is not complete");
  std::string name = gamma.name + "_diamond";
  return {std::move(name), [gamma = std::move(gamma), t = std::move(t)](const RealVector& p) {
            const HermitianMatrix lifted = t.lift(p);
            std::optional<DensityMatrix> rho;
            try {
              rho.emplace(lifted);
            } catch (const InvariantViolation& e) {
              throw DomainError(std::string("gamma_diamond: lift is not a density matrix: ") + e.what());
            }
            return gamma(*rho);
          }};
}

/// V(r) = (V_1, ..., V_k): Gamma(rho) = r iff <V_i(r), rho> = 0 for all i.
struct IdentificationFunction {
  std::function<std::vector<HermitianMatrix>(const RealVector&)> v;
  std::vector<HermitianMatrix> operator()(const RealVector& r) const { return v(r); }
};

/// v(r) = (v_1, ..., v_k) in R^Y: identifies on distributions via <v_i(r), p>.
struct ClassicalIdentification {
  std::function<std::vector<RealVector>(const RealVector&)> v;
  std::vector<RealVector> operator()(const RealVector& r) const { return v(r); }
};

/// V(r)_i = phi* v(r)_i, so <V(r)_i, rho> = <v(r)_i, phi rho>.
inline IdentificationFunction identification_translate(ClassicalIdentification v, TomographicMap t) {
  if (!t.complete()) throw DomainError("identification_translate: measurement is not complete");
  return {[v = std::move(v), t = std::move(t)](const RealVector& r) {
    std::vector<HermitianMatrix> out;
    for (const auto& vi : v(r)) out.push_back(t.adjoint(vi));
    return out;
  }};
}

/// v(r)_i = phi^{+*} V(r)_i, so <v(r)_i, p> = <V(r)_i, phi^+ p> on the range of phi.
inline ClassicalIdentification identification_translate(IdentificationFunction v, TomographicMap t) {
  if (!t.complete()) throw DomainError("identification_translate: measurement is not complete");
  return {[v = std::move(v), t = std::move(t)](const RealVector& r) {
    std::vector<RealVector> out;
    for (const auto& vi : v(r)) out.push_back(t.pinv_adjoint(vi));
    return out;
  }};
}

/// Classical identification of the mean of z: v(r)_i = (z(y)_i - r_i)_y.
inline ClassicalIdentification mean_identification(RealMatrix z) {
  return {[z = std::move(z)](const RealVector& r) {
    std::vector<RealVector> out;
    for (Eigen::Index i = 0; i < z.cols(); ++i) {
      out.push_back(z.col(i) - RealVector::Constant(z.rows(), r(i)));
    }
    return out;
  }};
}

}  // namespace qelicit
