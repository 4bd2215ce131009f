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
#include <compare>
#include <limits>
#include <ostream>
#include <string>

#include "qelicit/errors.hpp"

namespace qelicit {

/// A value in R u {-inf}.
///
/// Scores take values here. There is deliberately no +inf: any operation that
/// would produce it (negative multiple of -inf, finite minus -inf) throws
/// ExtendedArithmeticError. The product 0 * (-inf) is 0.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {  // NOLINT: implicit by intent
  }

  static constexpr ExtendedReal neg_inf() {
    ExtendedReal r;
    r.neg_inf_ = true;
    r.value_ = 0.0;
    return r;
  }

  /// Maps -inf to NegInf; rejects NaN and +inf.
  static ExtendedReal from_double(double v) {
    if (std::isnan(v)) throw ExtendedArithmeticError("NaN is not an extended real");
    if (v == std::numeric_limits<double>::infinity()) {
      throw ExtendedArithmeticError("+inf is not representable");
    }
    if (v == -std::numeric_limits<double>::infinity()) return neg_inf();
    return ExtendedReal(v);
  }

  constexpr bool is_finite() const { return !neg_inf_; }
  constexpr bool is_neg_inf() const { return neg_inf_; }

  double value() const {
    if (neg_inf_) throw ExtendedArithmeticError("value() of -inf");
    return value_;
  }

  /// -inf becomes -std::numeric_limits<double>::infinity().
  constexpr double to_double() const {
    return neg_inf_ ? -std::numeric_limits<double>::infinity() : value_;
  }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.neg_inf_ || b.neg_inf_) return neg_inf();
    return ExtendedReal(a.value_ + b.value_);
  }

  ExtendedReal& operator+=(ExtendedReal o) { return *this = *this + o; }

  /// a - b. Subtracting -inf would give +inf or (-inf) - (-inf); both throw.
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    if (b.neg_inf_) {
      throw ExtendedArithmeticError(a.neg_inf_ ? "(-inf) - (-inf) is undefined"
                                               : "finite - (-inf) = +inf");
    }
    if (a.neg_inf_) return neg_inf();
    return ExtendedReal(a.value_ - b.value_);
  }

  friend ExtendedReal operator*(double alpha, ExtendedReal x) {
    if (!x.neg_inf_) return ExtendedReal(alpha * x.value_);
    if (alpha > 0.0) return neg_inf();
    if (alpha == 0.0) return ExtendedReal(0.0);
    throw ExtendedArithmeticError("negative multiple of -inf = +inf");
  }
  friend ExtendedReal operator*(ExtendedReal x, double alpha) { return alpha * x; }

  /// -inf == -inf; -inf < every finite value.
  friend bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend std::partial_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
    if (a.neg_inf_ && b.neg_inf_) return std::partial_ordering::equivalent;
    if (a.neg_inf_) return std::partial_ordering::less;
    if (b.neg_inf_) return std::partial_ordering::greater;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    return neg_inf_ ? std::string("-inf") : std::to_string(value_);
  }

  friend std::ostream& operator<<(std::ostream& os, ExtendedReal x) {
    if (x.neg_inf_) return os << "-inf";
    return os << x.value_;
  }

 private:
  double value_ = 0.0;
  bool neg_inf_ = false;
};

inline constexpr ExtendedReal kNegInf = ExtendedReal::neg_inf();

/// p * s with the convention that a (numerically) zero probability kills a
/// -inf payment. Probabilities at or below prob_zero count as zero.
inline ExtendedReal weight_payment(double p, ExtendedReal s, double prob_zero) {
  if (s.is_neg_inf()) return p > prob_zero ? kNegInf : ExtendedReal(0.0);
  return ExtendedReal(p * s.value());
}

/// True when the two values agree: both -inf, or both finite within tol.
inline bool extended_close(ExtendedReal a, ExtendedReal b, double tol) {
  if (a.is_neg_inf() || b.is_neg_inf()) return a.is_neg_inf() && b.is_neg_inf();
  return std::abs(a.value() - b.value()) <= tol;
}

}  // namespace qelicit
