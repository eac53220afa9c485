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

// JSON records and CSV tables for simulation and verification results. CSV column
// names are part of the external interface and must stay stable.

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "steercert/montecarlo.hpp"
#include "steercert/optics.hpp"

namespace steercert::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trippable text for a double ("%.17g" trimmed).
std::string format_number(double x);

/// Degrees rounded to 0.1, as printed in hardware tables.
double to_tenth_degree(double radians);

Json to_json(const Term& t);
Json to_json(const FgsiValue& v, const OutcomePattern& pattern);
Json to_json(const mc::CoincidenceCounts& counts);
Json to_json(const mc::EstimationResult& r, const OutcomePattern& pattern);
Json to_json(const mc::ScanRow& row);
Json to_json(const optics::RowReport& r);

inline const std::vector<std::string> kCountsColumns{
    "theta", "setting_i", "setting_j", "setting_k", "a",     "b",
    "c",     "count",     "p_hat",     "stderr",    "s_hat", "s_stderr"};

/// One line per (setting, a, b, c) cell. p_hat/stderr are filled on the cells
/// that are numerators of a pattern term; s_hat/s_stderr repeat on every row.
void write_counts_csv(std::ostream& out, double theta, const mc::CoincidenceCounts& counts,
                      const mc::EstimationResult& est, const OutcomePattern& pattern);

inline const std::vector<std::string> kScanColumns{
    "theta", "theta_pi", "exact_s", "s_hat", "s_stderr", "bound_known", "bound_unknown", "note"};

void write_scan_csv(std::ostream& out, const std::vector<mc::ScanRow>& rows);

/// Quotes a CSV field when it contains characters that would break the row.
std::string csv_field(const std::string& s);

}  // namespace steercert::io
