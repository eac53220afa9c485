// Copyright 2026 The steercert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace steercert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Bloch vector too short to define a measurement direction.
class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its admissible interval (e.g. theta not in (0, pi/2)).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Input that violates a type invariant (non-Hermitian matrix, bad trace, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A conditional probability whose conditioning event has (numerically) zero
/// probability. `term_index` is the position of the offending term in an FGSI
/// pattern, or -1 when the conditional was requested on its own.
class UndefinedConditional : public Error {
 public:
  UndefinedConditional(const std::string& what, int term_index = -1)
      : Error(what), term_index_(term_index) {}
  int term_index() const noexcept { return term_index_; }

 private:
  int term_index_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace steercert
