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

namespace steercert {

/// Tolerances shared by every invariant check in the library.
struct NumericsConfig {
  double hermitian = 1e-12;     // |M - M^dag| for observables and states
  double trace = 1e-12;         // |Tr(rho) - 1|
  double psd = 1e-10;           // minimum admissible eigenvalue is -psd
  double bloch_norm = 1e-9;     // | |n| - 1 | accepted by bloch_observable
  double zero_vector = 1e-12;   // |n| below this is rejected outright
  double denominator = 1e-12;   // conditioning-event cutoff
  double probability_floor = 1e-14;  // Born values below this are roundoff
  double invariant = 1e-10;     // default for downstream property checks
};

inline constexpr NumericsConfig kNumerics{};

}  // namespace steercert
