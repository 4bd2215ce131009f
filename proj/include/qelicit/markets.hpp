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
#include <vector>

#include "qelicit/quantum_score.hpp"

namespace qelicit {

/// m agents report to one fixed-measurement score.
struct WageringRound {
  std::vector<DensityMatrix> reports;
  QuantumScore score;
};

namespace detail {

inline void validate_round(const WageringRound& round) {
  if (round.reports.size() < 2) throw DomainError("wagering: need at least two agents");
  if (!round.score.fixed_measurement) {
    throw DomainError("wagering: " + round.score.name +
                      " has a report-dependent measurement; a single fixed measurement is required");
  }
}

/// Payoff_i = S_i - (1 / (m - 1)) sum_{j != i} S_j.
inline RealVector wagering_from_scores(const std::vector<ExtendedReal>& s) {
  const auto m = static_cast<Eigen::Index>(s.size());
  RealVector v(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (s[static_cast<std::size_t>(i)].is_neg_inf()) {
      throw ExtendedArithmeticError("wagering: a -inf score makes the other payoffs +inf");
    }
    v(i) = s[static_cast<std::size_t>(i)].value();
  }
  const double total = v.sum();
  RealVector out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out(i) = v(i) - (total - v(i)) / static_cast<double>(m - 1);
  }
  return out;
}

}  // namespace detail

/// Expected payoffs S(rho_i; rho) - mean_{j != i} S(rho_j; rho).
inline RealVector wagering_payoffs_expected(const WageringRound& round, const DensityMatrix& truth) {
  detail::validate_round(round);
  std::vector<ExtendedReal> s;
  for (const auto& r : round.reports) s.push_back(round.score.expected(r, truth));
  return detail::wagering_from_scores(s);
}

/// Realized payoffs for one shared outcome y of the common measurement.
inline RealVector wagering_payoffs_realized(const WageringRound& round, std::size_t y) {
  detail::validate_round(round);
  if (y >= round.score.fixed_measurement->size()) throw DomainError("wagering: outcome out of range");
  std::vector<ExtendedReal> s;
  for (const auto& r : round.reports) s.push_back(round.score.score(r, y));
  return detail::wagering_from_scores(s);
}

/// Draws the shared outcome from the common measurement applied to `truth`.
inline std::size_t draw_wagering_outcome(const WageringRound& round, const DensityMatrix& truth, Rng& rng) {
  detail::validate_round(round);
  return sample_outcome(*round.score.fixed_measurement, truth, rng);
}

/// S(rho_new; rho) - S(rho_prev; rho). Throws if the previous report scores -inf.
inline ExtendedReal trader_payoff(const QuantumScore& s, const DensityMatrix& prev,
                                  const DensityMatrix& next, const DensityMatrix& truth) {
  return s.expected(next, truth) - s.expected(prev, truth);
}

// ---------------------------------------------------------------------------
// Cost-function market maker
// ---------------------------------------------------------------------------

/// log sum_i exp(x_i), shifted by the maximum.
inline double log_sum_exp(const RealVector& x) {
  const double top = x.maxCoeff();
  return top + std::log((x.array() - top).exp().sum());
}

/// Quantum LMSR cost F*(Q) = log sum_i exp lambda_i(Q) = log Tr exp Q.
inline double lmsr_cost(const HermitianMatrix& q) { return log_sum_exp(eigenvalues(q)); }

/// exp(Q) / Tr exp(Q): the gradient of F*, a density matrix.
inline DensityMatrix market_price_state(const HermitianMatrix& q) {
  const auto sd = spectral_decompose(q);
  RealVector w = (sd.eigenvalues.array() - sd.eigenvalues.maxCoeff()).exp();
  w /= w.sum();
  return DensityMatrix(sd.reconstruct_with(w));
}

/// F*(Q + R) - F*(Q).
inline double bundle_cost(const HermitianMatrix& q, const HermitianMatrix& r) {
  return lmsr_cost(q + r) - lmsr_cost(q);
}

/// A bundle R pays <R, rho> when the state is rho.
inline double bundle_expected_payoff(const HermitianMatrix& r, const DensityMatrix& rho) {
  return hs_inner(r, rho.hermitian());
}

struct Trade {
  HermitianMatrix bundle;
  double cost = 0.0;
};

/// Outstanding shares Q and the trades that produced them, starting at Q = 0.
class MarketState {
 public:
  explicit MarketState(Eigen::Index n) : shares_(HermitianMatrix::zero(n)) {}

  const HermitianMatrix& shares() const { return shares_; }
  const std::vector<Trade>& history() const { return history_; }
  Eigen::Index dim() const { return shares_.dim(); }
  double cost() const { return lmsr_cost(shares_); }
  DensityMatrix price() const { return market_price_state(shares_); }

  /// Applies a trade and returns what the trader pays.
  double trade(const HermitianMatrix& r) {
    require_same_dim(r.dim(), dim(), "MarketState::trade");
    const double c = bundle_cost(shares_, r);
    shares_ = shares_ + r;
    history_.push_back({r, c});
    return c;
  }

  /// <Q, rho> - F*(Q) + F*(0): total paid out minus total collected.
  double maker_loss(const DensityMatrix& truth) const {
    return hs_inner(shares_, truth.hermitian()) - cost() + std::log(static_cast<double>(dim()));
  }

 private:
  HermitianMatrix shares_;
  std::vector<Trade> history_;
};

}  // namespace qelicit
