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

#include "steercert/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace steercert::io {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 12; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

double to_tenth_degree(double radians) {
  const double d = std::round(radians * 180.0 / std::numbers::pi * 10.0) / 10.0;
  return d == 0.0 ? 0.0 : d;  // no "-0"
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

Json to_json(const Term& t) {
  return Json{{"label", to_string(t)}, {"i", t.i}, {"j", t.j}, {"k", t.k},
              {"a", t.a},              {"b", t.b}, {"c", t.c}};
}

Json to_json(const FgsiValue& v, const OutcomePattern& pattern) {
  Json terms = Json::array();
  for (std::size_t t = 0; t < 4; ++t) {
    Json j = to_json(pattern[t]);
    j["value"] = v.terms[t];
    terms.push_back(std::move(j));
  }
  return Json{{"s", v.total}, {"terms", std::move(terms)}};
}

Json to_json(const mc::CoincidenceCounts& counts) {
  Json arr = Json::array();
  for (const mc::SettingCounts& s : counts.settings) {
    Json cells = Json::array();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          cells.push_back(Json{{"a", a}, {"b", b}, {"c", c},
                               {"count", s.cells[static_cast<std::size_t>(4 * a + 2 * b + c)]}});
    arr.push_back(Json{{"setting_i", s.i},
                       {"setting_j", s.j},
                       {"setting_k", s.k},
                       {"total_events", s.total_events},
                       {"recorded", s.recorded()},
                       {"cells", std::move(cells)}});
  }
  return arr;
}

Json to_json(const mc::EstimationResult& r, const OutcomePattern& pattern) {
  Json terms = Json::array();
  for (std::size_t t = 0; t < 4; ++t) {
    Json j = to_json(pattern[t]);
    if (r.terms[t]) {
      j["p_hat"] = r.terms[t]->p_hat;
      j["stderr"] = r.terms[t]->std_error;
      j["numerator"] = r.terms[t]->numerator;
      j["denominator"] = r.terms[t]->denominator;
    } else {
      j["discarded"] = true;
    }
    terms.push_back(std::move(j));
  }
  return Json{{"s_hat", r.s_hat},
              {"s_stderr", r.s_stderr},
              {"partial", r.partial()},
              {"discarded_terms", r.discarded_terms},
              {"terms", std::move(terms)}};
}

Json to_json(const mc::ScanRow& row) {
  Json j{{"theta", row.theta}, {"theta_pi", row.theta / std::numbers::pi}};
  j["exact_s"] = row.exact_s ? Json(*row.exact_s) : Json(nullptr);
  if (row.estimate) {
    j["s_hat"] = row.estimate->s_hat;
    j["s_stderr"] = row.estimate->s_stderr;
  } else {
    j["s_hat"] = nullptr;
    j["s_stderr"] = nullptr;
  }
  j["bound_known"] = row.bound_known;
  j["bound_unknown"] = row.bound_unknown;
  j["note"] = row.note;
  return j;
}

Json to_json(const optics::RowReport& r) {
  auto degrees = [](const std::array<double, 3>& a) { return Json::array({a[0], a[1], a[2]}); };
  Json checks = Json::array();
  for (const optics::ConventionCheck& c : r.checks)
    checks.push_back(Json{{"convention", optics::to_string(c.convention)},
                          {"b0_deviation", c.b0_deviation},
                          {"b1_deviation", c.b1_deviation},
                          {"b0_outcome_swapped", c.b0_outcome_swapped},
                          {"b1_outcome_swapped", c.b1_outcome_swapped}});
  return Json{{"theta_pi", r.row.theta / std::numbers::pi},
              {"b0_degrees", degrees(r.row.b0_degrees)},
              {"b1_degrees", degrees(r.row.b1_degrees)},
              {"checks", std::move(checks)},
              {"best_convention", optics::to_string(r.checks[r.best].convention)},
              {"b0_deviation", r.b0_deviation},
              {"b1_deviation", r.b1_deviation},
              {"pass", r.pass}};
}

namespace {

void write_header(std::ostream& out, const std::vector<std::string>& cols) {
  for (std::size_t n = 0; n < cols.size(); ++n) out << (n ? "," : "") << cols[n];
  out << '\n';
}

}  // namespace

void write_counts_csv(std::ostream& out, double theta, const mc::CoincidenceCounts& counts,
                      const mc::EstimationResult& est, const OutcomePattern& pattern) {
  write_header(out, kCountsColumns);
  for (const mc::SettingCounts& s : counts.settings) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          std::string p_hat, se;
          for (std::size_t t = 0; t < 4; ++t) {
            const Term& term = pattern[t];
            if (term.i == s.i && term.j == s.j && term.k == s.k && term.a == a &&
                term.b == b && term.c == c && est.terms[t]) {
              p_hat = format_number(est.terms[t]->p_hat);
              se = format_number(est.terms[t]->std_error);
            }
          }
          out << format_number(theta) << ',' << s.i << ',' << s.j << ',' << s.k << ',' << a
              << ',' << b << ',' << c << ','
              << s.cells[static_cast<std::size_t>(4 * a + 2 * b + c)] << ',' << p_hat << ','
              << se << ',' << format_number(est.s_hat) << ',' << format_number(est.s_stderr)
              << '\n';
        }
  }
}

void write_scan_csv(std::ostream& out, const std::vector<mc::ScanRow>& rows) {
  write_header(out, kScanColumns);
  for (const mc::ScanRow& r : rows) {
    out << format_number(r.theta) << ',' << format_number(r.theta / std::numbers::pi) << ','
        << (r.exact_s ? format_number(*r.exact_s) : "") << ','
        << (r.estimate ? format_number(r.estimate->s_hat) : "") << ','
        << (r.estimate ? format_number(r.estimate->s_stderr) : "") << ','
        << format_number(r.bound_known) << ',' << format_number(r.bound_unknown) << ','
        << csv_field(r.note) << '\n';
  }
}

}  // namespace steercert::io
