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

#include <stdexcept>
#include <string>

namespace qelicit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on spaces of different dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariant of the type it is being converted to
/// (non-Hermitian matrix, non-PSD measurement element, bad trace, ...).
/// The message names the violated invariant.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// An extended-real operation would produce +infinity or infinity - infinity.
class ExtendedArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Numerical routine failed (eigensolver did not converge, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A score or construction was used outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed, or its contents are malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(long a, long b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace qelicit
