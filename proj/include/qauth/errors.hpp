// Copyright 2026 The qauth Authors
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

#ifndef QAUTH_ERRORS_HPP
#define QAUTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qauth {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A constructed value violates one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Key index outside the coding set.
class KeyRangeError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling ran out of attempts.
class AttemptsExhausted : public Error {
 public:
  using Error::Error;
};

/// The commutant search only produced scalar (message-preserving) attacks.
class ScalarCommutantError : public Error {
 public:
  using Error::Error;
};

}  // namespace qauth

#endif  // QAUTH_ERRORS_HPP
