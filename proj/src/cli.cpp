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

#include "steercert/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "steercert/io.hpp"
#include "steercert/lhs.hpp"
#include "steercert/montecarlo.hpp"
#include "steercert/optics.hpp"

namespace steercert::cli {

using io::Json;

namespace {

constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("STEERCERT_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("STEERCERT_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

/// Flag values override config-file values, which override defaults. Every
/// key of `defaults` ends up in the resolved record that is echoed into the
/// command's artifact.
class Resolver {
 public:
  Resolver(CLI::App* cmd, Json defaults) : cmd_(cmd), resolved_(std::move(defaults)) {
    for (auto& [key, value] : resolved_.items()) {
      auto* opt = cmd_->add_option("--" + key, raw_[key]);
      opt->type_name(value.is_string() ? "TEXT" : "NUMBER");
    }
    cmd_->add_option("--config", config_path_, "JSON config file (flags take precedence)");
    cmd_->add_option("--output", output_path_, "write the artifact here instead of stdout");
  }

  void resolve() {
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw UsageError("cannot open config file: " + config_path_);
      Json file;
      try {
        file = Json::parse(in);
      } catch (const std::exception& e) {
        throw UsageError("config file is not valid JSON: " + std::string(e.what()));
      }
      if (file.contains("config") && file["config"].is_object()) file = file["config"];
      if (!file.is_object()) throw UsageError("config file must hold a JSON object");
      for (auto& [key, value] : file.items()) {
        if (key == "command") continue;
        if (!resolved_.contains(key)) throw UsageError("unknown config key: " + key);
        resolved_[key] = value;
      }
    }
    for (auto& [key, text] : raw_) {
      if (cmd_->count("--" + key) == 0) continue;
      Json& slot = resolved_[key];
      try {
        std::size_t used = 0;
        if (slot.is_number_unsigned() || slot.is_number_integer()) {
          if (trim(text).starts_with("-")) throw std::invalid_argument("negative");
          slot = std::stoull(text, &used);
        } else if (slot.is_number_float()) {
          slot = std::stod(text, &used);
        } else {
          slot = text;
          used = text.size();
        }
        if (used != text.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw UsageError("invalid value for --" + key + ": '" + text + "'");
      }
    }
  }

  const Json& config() const { return resolved_; }
  const std::string& output_path() const { return output_path_; }

  std::string str(const std::string& key) const {
    const Json& v = resolved_.at(key);
    if (v.is_string()) return v.get<std::string>();
    return io::format_number(v.get<double>());
  }
  double num(const std::string& key) const {
    const Json& v = resolved_.at(key);
    if (!v.is_number()) throw UsageError(key + " must be a number");
    return v.get<double>();
  }
  std::uint64_t count(const std::string& key) const {
    const Json& v = resolved_.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
      throw UsageError(key + " must be a nonnegative integer");
    if (v.is_number_integer() && v.get<long long>() < 0)
      throw UsageError(key + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
  }
  double angle(const std::string& key) const {
    const Json& v = resolved_.at(key);
    if (v.is_number()) return v.get<double>();
    try {
      return parse_angle(v.get<std::string>());
    } catch (const Error& e) {
      throw UsageError(key + ": " + e.what());
    }
  }
  std::string format() const {
    const std::string f = str("format");
    if (f != "csv" && f != "json") throw UsageError("format must be csv or json");
    return f;
  }

 private:
  CLI::App* cmd_;
  Json resolved_;
  std::map<std::string, std::string> raw_;
  std::string config_path_;
  std::string output_path_;
};

/// Writes the artifact to --output (summary to `out`) or to `out` (summary to
/// `err`).
void emit(const Resolver& r, const std::string& artifact, const std::string& summary,
          std::ostream& out, std::ostream& err) {
  if (r.output_path().empty()) {
    out << artifact;
    if (!summary.empty()) err << summary << '\n';
    return;
  }
  std::ofstream file(r.output_path(), std::ios::binary);
  if (!file) throw UsageError("cannot write output file: " + r.output_path());
  file << artifact;
  if (!summary.empty()) out << summary << '\n';
}

std::string csv_preamble(const std::string& command, const Json& config) {
  return "# steercert " + command + "\n# config: " + config.dump() + "\n";
}

std::string json_artifact(const std::string& command, const Json& config, Json body) {
  Json doc{{"command", command}, {"config", config}};
  for (auto& [k, v] : body.items()) doc[k] = std::move(v);
  return doc.dump(2) + "\n";
}

Observable parse_axis_observable(const std::string& token) {
  const std::string t = trim(token);
  if (t == "x") return pauli(Axis::X);
  if (t == "y") return pauli(Axis::Y);
  if (t == "z") return pauli(Axis::Z);
  throw UsageError("Charlie measurement must be one of x, y, z: '" + token + "'");
}

lhs::CharlieMeasurements parse_charlie(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw UsageError("--charlie expects two axes, e.g. x,y");
  return {parse_axis_observable(text.substr(0, comma)),
          parse_axis_observable(text.substr(comma + 1))};
}

mc::ExperimentConfig experiment_config(const Resolver& r, double theta) {
  mc::ExperimentConfig cfg;
  cfg.theta = theta;
  cfg.events_per_setting = r.count("events");
  cfg.seed = r.count("seed");
  cfg.dark_count_rate = r.num("dark");
  cfg.detection_efficiency = r.num("efficiency");
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::string summary_line(const mc::EstimationResult& est) {
  std::ostringstream os;
  os.precision(6);
  os << "s_hat = " << est.s_hat << " +- " << est.s_stderr
     << (est.partial() ? " (partial)" : "") << "  [LHS bound known "
     << lhs::SteeringBounds::known_measurements << ", unknown "
     << lhs::SteeringBounds::unknown_measurements << ", algebraic max "
     << lhs::SteeringBounds::algebraic_max << "]";
  return os.str();
}

// --- commands --------------------------------------------------------------

int cmd_scan_theta(const Resolver& r, std::ostream& out, std::ostream& err) {
  std::vector<double> grid;
  try {
    grid = parse_grid(r.str("grid"));
  } catch (const Error& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  for (double t : grid)
    if (!(t >= 0.0 && t <= kPi / 2)) throw UsageError("grid values must lie in [0, pi/2]");
  // Endpoints are product states; their rows carry a note and fail certification.
  const mc::ExperimentConfig cfg = experiment_config(r, kPi / 4);
  const auto rows = mc::scan_theta(grid, cfg);

  bool certified = true;
  for (const auto& row : rows)
    certified = certified && row.exact_s && std::abs(*row.exact_s - 4.0) <= 1e-9;

  std::string artifact;
  if (r.format() == "csv") {
    std::ostringstream os;
    os << csv_preamble("scan-theta", r.config());
    io::write_scan_csv(os, rows);
    artifact = os.str();
  } else {
    Json arr = Json::array();
    for (const auto& row : rows) arr.push_back(io::to_json(row));
    artifact = json_artifact("scan-theta", r.config(),
                             Json{{"certified", certified}, {"rows", std::move(arr)}});
  }
  emit(r, artifact,
       std::to_string(rows.size()) + " rows; maximal violation " +
           (certified ? "certified" : "NOT certified"),
       out, err);
  return certified ? 0 : 2;
}

int cmd_bounds(const Resolver& r, const std::string& command, std::ostream& out,
               std::ostream& err) {
  const auto charlie = parse_charlie(r.str("charlie"));
  const std::uint64_t samples = r.count("samples");
  const std::uint64_t lambda = r.count("lambda-count");
  const std::uint64_t seed = r.count("seed");
  if (lambda > 16) throw UsageError("--lambda-count must lie in [0, 16] (0 sweeps 1..16)");

  const double known = lhs::steering_bound_known(charlie.first, charlie.second);
  const lhs::CharlieMeasurements xy{pauli(Axis::X), pauli(Axis::Y)};
  const auto saturating = lhs::model_fgsi_value(lhs::saturating_model(), xy);
  const auto split = lhs::model_fgsi_value(lhs::conditioning_split_model(), xy);

  Json body{
      {"bounds",
       {{"known_measurements", known},
        {"unknown_measurements", lhs::steering_bound_unknown()},
        {"algebraic_max", lhs::SteeringBounds::algebraic_max}}},
      {"saturating_model",
       {{"hidden_states", 2},
        {"charlie", "x,y"},
        {"charlie_state_bloch", {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, 0.0}},
        {"s", saturating ? Json(saturating->total) : Json(nullptr)}}},
      {"conditioning_split_model",
       {{"hidden_states", 4},
        {"charlie", "x,y"},
        {"s", split ? Json(split->total) : Json(nullptr)}}},
  };

  std::string summary = "bounds: known " + io::format_number(known) + ", unknown 3";
  if (samples > 0) {
    Json per_lambda = Json::array();
    lhs::FalsificationSummary total;
    std::vector<std::uint64_t> lambdas;
    if (lambda == 0)
      for (std::uint64_t l = 1; l <= 16; ++l) lambdas.push_back(l);
    else
      lambdas.push_back(lambda);
    for (std::size_t n = 0; n < lambdas.size(); ++n) {
      const std::uint64_t share =
          samples / lambdas.size() + (n < samples % lambdas.size() ? 1 : 0);
      if (share == 0) continue;
      const auto s = lhs::falsify(static_cast<int>(share), static_cast<int>(lambdas[n]),
                                  seed + lambdas[n] * 1000, charlie, known);
      per_lambda.push_back(Json{{"lambda_count", lambdas[n]},
                                {"samples", share},
                                {"evaluated", s.evaluated},
                                {"undefined", s.undefined},
                                {"exceeding_known", s.exceeding},
                                {"max_s", s.max_s}});
      total.evaluated += s.evaluated;
      total.undefined += s.undefined;
      total.exceeding += s.exceeding;
      total.max_s = std::max(total.max_s, s.max_s);
    }
    body["sampler"] = Json{{"samples", samples},
                           {"evaluated", total.evaluated},
                           {"undefined", total.undefined},
                           {"exceeding_known", total.exceeding},
                           {"max_s", total.max_s},
                           {"per_lambda", std::move(per_lambda)}};
    summary += "; sampler max S " + io::format_number(total.max_s) + " over " +
               std::to_string(total.evaluated) + " defined models (" +
               std::to_string(total.exceeding) + " above the known bound)";
  }

  std::string artifact;
  if (r.format() == "csv") {
    std::ostringstream os;
    os << csv_preamble(command, r.config()) << "key,value\n";
    for (auto& [section, obj] : body.items())
      for (auto& [key, value] : obj.items())
        if (!value.is_array() || key != "per_lambda")
          os << section << '.' << key << ','
             << io::csv_field(value.is_string() ? value.get<std::string>() : value.dump())
             << '\n';
    artifact = os.str();
  } else {
    artifact = json_artifact(command, r.config(), std::move(body));
  }
  emit(r, artifact, summary, out, err);
  return 0;
}

Json plate_json(const optics::WaveplateSequence& seq) {
  Json plates = Json::array();
  for (const auto& w : seq.plates())
    plates.push_back(Json{{"kind", w.kind == optics::WaveplateKind::Half ? "HWP" : "QWP"},
                          {"degrees", io::to_tenth_degree(w.angle)},
                          {"radians", w.angle}});
  return plates;
}

int cmd_solve_angles(const Resolver& r, std::ostream& out, std::ostream& err) {
  if (r.config().at("theta").is_string() && r.str("theta").empty())
    throw UsageError("--theta is required");
  const double theta = r.angle("theta");
  const std::string conv_name = r.str("convention");
  optics::JonesConvention conv;
  if (conv_name == "standard")
    conv = optics::JonesConvention::Standard;
  else if (conv_name == "conjugate-retardance")
    conv = optics::JonesConvention::ConjugateRetardance;
  else
    throw UsageError("--convention must be standard or conjugate-retardance");

  MeasurementScenario targets = [&] {
    try {
      return optimal_scenario(theta);
    } catch (const OutOfRange& e) {
      throw UsageError(std::string("--theta: ") + e.what());
    }
  }();

  struct Setting {
    std::string party, name;
    optics::WaveplateSequence seq;
    const Observable* target;
  };
  const auto a0 = optics::WaveplateSequence::single_hwp(kPi / 8);
  const auto a1 = optics::WaveplateSequence::qwp_hwp_qwp(0.0, kPi / 4, kPi / 2);
  std::vector<Setting> settings{
      {"alice", "A0", a0, &targets.a0},
      {"alice", "A1", a1, &targets.a1},
      {"bob", "B0", optics::solve_angles(targets.b0, conv), &targets.b0},
      {"bob", "B1", optics::solve_angles(targets.b1, conv), &targets.b1},
      {"charlie", "C0", a0, &targets.c0},
      {"charlie", "C1", a1, &targets.c1},
  };

  std::string artifact;
  if (r.format() == "csv") {
    std::ostringstream os;
    os << csv_preamble("solve-angles", r.config())
       << "party,setting,plates,q1_deg,h_deg,q2_deg,deviation\n";
    for (const auto& s : settings) {
      const double dev =
          optics::bloch_distance(optics::realized_observable(s.seq, conv), *s.target);
      os << s.party << ',' << s.name << ',';
      if (s.seq.plates().size() == 1) {
        os << "HWP,," << io::format_number(io::to_tenth_degree(s.seq.plates()[0].angle)) << ",,";
      } else {
        const auto ang = s.seq.angles();
        os << "QWP-HWP-QWP," << io::format_number(io::to_tenth_degree(ang[0])) << ','
           << io::format_number(io::to_tenth_degree(ang[1])) << ','
           << io::format_number(io::to_tenth_degree(ang[2])) << ',';
      }
      os << io::format_number(dev) << '\n';
    }
    artifact = os.str();
  } else {
    Json arr = Json::array();
    for (const auto& s : settings) {
      const Observable realized = optics::realized_observable(s.seq, conv);
      const Vector3& t = s.target->bloch();
      arr.push_back(Json{{"party", s.party},
                         {"setting", s.name},
                         {"target_bloch", {t.x(), t.y(), t.z()}},
                         {"plates", plate_json(s.seq)},
                         {"deviation", optics::bloch_distance(realized, *s.target)}});
    }
    artifact = json_artifact("solve-angles", r.config(),
                             Json{{"theta", theta}, {"settings", std::move(arr)}});
  }
  const auto b0 = settings[2].seq.angles(), b1 = settings[3].seq.angles();
  std::ostringstream summary;
  summary << "B0 (q1, h, q2) = (" << io::to_tenth_degree(b0[0]) << ", "
          << io::to_tenth_degree(b0[1]) << ", " << io::to_tenth_degree(b0[2])
          << ") deg; B1 = (" << io::to_tenth_degree(b1[0]) << ", " << io::to_tenth_degree(b1[1])
          << ", " << io::to_tenth_degree(b1[2]) << ") deg";
  emit(r, artifact, summary.str(), out, err);
  return 0;
}

int cmd_verify_table(const Resolver& r, std::ostream& out, std::ostream& err) {
  const std::string path = r.str("table");
  const double tol = r.num("tolerance");
  if (!(tol > 0.0)) throw UsageError("--tolerance must be positive");
  std::vector<optics::ParsedRow> parsed;
  try {
    parsed = optics::load_table(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  std::size_t passed = 0, flagged = 0, errors = 0;
  std::vector<std::optional<optics::RowReport>> reports;
  for (const auto& p : parsed) {
    if (!p.row) {
      ++errors;
      reports.emplace_back();
      continue;
    }
    reports.push_back(optics::verify_table_row(*p.row, tol));
    (reports.back()->pass ? passed : flagged)++;
  }

  std::string artifact;
  if (r.format() == "csv") {
    std::ostringstream os;
    os << csv_preamble("verify-table", r.config())
       << "line,theta_pi,standard_b0_dev,standard_b1_dev,conjugate_b0_dev,conjugate_b1_dev,"
          "best_convention,b0_dev,b1_dev,b0_outcome_swapped,b1_outcome_swapped,status,error\n";
    for (std::size_t n = 0; n < parsed.size(); ++n) {
      os << parsed[n].line << ',';
      if (!reports[n]) {
        os << ",,,,,,,,,,error," << io::csv_field(parsed[n].error) << '\n';
        continue;
      }
      const auto& rep = *reports[n];
      const auto& best = rep.checks[rep.best];
      os << io::format_number(rep.row.theta / kPi) << ','
         << io::format_number(rep.checks[0].b0_deviation) << ','
         << io::format_number(rep.checks[0].b1_deviation) << ','
         << io::format_number(rep.checks[1].b0_deviation) << ','
         << io::format_number(rep.checks[1].b1_deviation) << ','
         << optics::to_string(best.convention) << ',' << io::format_number(rep.b0_deviation)
         << ',' << io::format_number(rep.b1_deviation) << ','
         << (best.b0_outcome_swapped ? "true" : "false") << ','
         << (best.b1_outcome_swapped ? "true" : "false") << ','
         << (rep.pass ? "pass" : "flag") << ",\n";
    }
    os << "# summary: pass=" << passed << " flag=" << flagged << " error=" << errors
       << " tolerance=" << io::format_number(tol) << '\n';
    artifact = os.str();
  } else {
    Json arr = Json::array();
    for (std::size_t n = 0; n < parsed.size(); ++n) {
      if (!reports[n]) {
        arr.push_back(Json{{"line", parsed[n].line}, {"status", "error"},
                           {"error", parsed[n].error}});
        continue;
      }
      Json j{{"line", parsed[n].line}, {"status", reports[n]->pass ? "pass" : "flag"}};
      const Json rep = io::to_json(*reports[n]);
      for (const auto& [k, v] : rep.items()) j[k] = v;
      arr.push_back(std::move(j));
    }
    artifact = json_artifact(
        "verify-table", r.config(),
        Json{{"rows", std::move(arr)},
             {"summary", {{"pass", passed}, {"flag", flagged}, {"error", errors}}}});
  }
  emit(r, artifact,
       std::to_string(parsed.size()) + " rows: " + std::to_string(passed) + " pass, " +
           std::to_string(flagged) + " flagged, " + std::to_string(errors) + " unreadable",
       out, err);
  return 0;
}

int cmd_simulate(const Resolver& r, std::ostream& out, std::ostream& err) {
  const double theta = r.angle("theta");
  const mc::ExperimentConfig cfg = experiment_config(r, theta);
  TripartiteState state = [&] {
    try {
      return gghz_state(theta);
    } catch (const OutOfRange& e) {
      throw UsageError(std::string("--theta: ") + e.what());
    }
  }();
  const MeasurementScenario scenario = optimal_scenario(theta);
  const OutcomePattern pattern = OutcomePattern::canonical();
  const auto counts = mc::simulate_counts(state, scenario, cfg);
  const auto est = mc::estimate_s(counts, pattern);

  std::string artifact;
  if (r.format() == "csv") {
    std::ostringstream os;
    os << csv_preamble("simulate", r.config());
    io::write_counts_csv(os, theta, counts, est, pattern);
    artifact = os.str();
  } else {
    Json exact;
    try {
      exact = io::to_json(fgsi_value(state, scenario, pattern), pattern);
    } catch (const UndefinedConditional& e) {
      exact = Json{{"error", e.what()}};
    }
    artifact = json_artifact(
        "simulate", r.config(),
        Json{{"theta", theta},
             {"pattern", to_string(pattern)},
             {"exact", std::move(exact)},
             {"counts", io::to_json(counts)},
             {"estimate", io::to_json(est, pattern)},
             {"bounds",
              {{"known_measurements", lhs::SteeringBounds::known_measurements},
               {"unknown_measurements", lhs::SteeringBounds::unknown_measurements},
               {"algebraic_max", lhs::SteeringBounds::algebraic_max}}}});
  }
  emit(r, artifact, summary_line(est), out, err);
  return 0;
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty angle");
  double scale = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    t = trim(t.substr(0, t.size() - 2));
    if (t.empty() || t == "+") return kPi;
    if (t == "-") return -kPi;
    if (t.back() == '*') t.pop_back();
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("malformed angle: '" + text + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw InvalidArgument("malformed angle: '" + text + "'");
  return v * scale;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty grid");
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InvalidArgument("grid range must be start:stop:count");
    const double a = parse_angle(parts[0]), b = parse_angle(parts[1]);
    std::size_t used = 0;
    long long n = 0;
    try {
      n = std::stoll(trim(parts[2]), &used);
    } catch (const std::exception&) {
      throw InvalidArgument("grid count must be a positive integer");
    }
    if (used != trim(parts[2]).size() || n < 1)
      throw InvalidArgument("grid count must be a positive integer");
    std::vector<double> grid;
    for (long long k = 0; k < n; ++k)
      grid.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
    return grid;
  }
  std::vector<double> grid;
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) grid.push_back(parse_angle(p));
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certification toolkit for tripartite steering of generalized GHZ states",
               "steercert"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  try {
    seed = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const std::string table_path = std::string(STEERCERT_DATA_DIR) + "/table1.csv";

  auto* scan = app.add_subcommand("scan-theta", "exact and simulated S across a theta grid");
  Resolver scan_r(scan, Json{{"grid", "0.05pi:0.45pi:9"},
                             {"events", 10000},
                             {"seed", seed},
                             {"dark", 0.0},
                             {"efficiency", 1.0},
                             {"format", "csv"}});

  auto* bounds = app.add_subcommand("bounds", "LHS bounds, saturating model and sampler");
  auto* falsify = app.add_subcommand("falsify", "alias of bounds (random-model sampler)");
  const Json bounds_defaults{{"samples", 10000},
                             {"lambda-count", 0},
                             {"seed", seed},
                             {"charlie", "x,y"},
                             {"format", "json"}};
  Resolver bounds_r(bounds, bounds_defaults);
  Resolver falsify_r(falsify, bounds_defaults);

  auto* solve = app.add_subcommand("solve-angles", "waveplate settings for every observable");
  Resolver solve_r(solve, Json{{"theta", ""}, {"convention", "standard"}, {"format", "json"}});

  auto* verify = app.add_subcommand("verify-table", "check tabulated waveplate angles");
  Resolver verify_r(verify, Json{{"table", table_path}, {"tolerance", optics::kTableTolerance},
                                 {"format", "csv"}});

  auto* sim = app.add_subcommand("simulate", "Monte Carlo coincidence counts and S estimate");
  Resolver sim_r(sim, Json{{"theta", "0.25pi"},
                           {"events", 100000},
                           {"seed", seed},
                           {"dark", 0.0},
                           {"efficiency", 1.0},
                           {"format", "json"}});

  std::vector<std::string> argv_store{"steercert"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (scan->parsed()) {
      scan_r.resolve();
      return cmd_scan_theta(scan_r, out, err);
    }
    if (bounds->parsed()) {
      bounds_r.resolve();
      return cmd_bounds(bounds_r, "bounds", out, err);
    }
    if (falsify->parsed()) {
      falsify_r.resolve();
      return cmd_bounds(falsify_r, "falsify", out, err);
    }
    if (solve->parsed()) {
      solve_r.resolve();
      return cmd_solve_angles(solve_r, out, err);
    }
    if (verify->parsed()) {
      verify_r.resolve();
      return cmd_verify_table(verify_r, out, err);
    }
    if (sim->parsed()) {
      sim_r.resolve();
      return cmd_simulate(sim_r, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace steercert::cli
