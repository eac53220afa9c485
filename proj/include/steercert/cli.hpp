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

#include <ostream>
#include <string>
#include <vector>

namespace steercert::cli {

/// Parses "0.25pi", "pi", "-0.5pi" or plain radians ("0.785").
double parse_angle(const std::string& text);

/// "a:b:n" (n evenly spaced points, inclusive), "a,b,c", or a single angle.
std::vector<double> parse_grid(const std::string& text);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on success and 1 on usage or input errors;
/// scan-theta returns 2 when certification fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steercert::cli
