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

#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "steercert/cli.hpp"

using steercert::cli::parse_angle;
using steercert::cli::parse_grid;
using steercert::cli::run;
using doctest::Approx;
using Json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("steercert_test_" + name);
}

}  // namespace

TEST_CASE("parse_angle") {
  CHECK(parse_angle("0.25pi") == Approx(kPi / 4));
  CHECK(parse_angle("pi") == Approx(kPi));
  CHECK(parse_angle("-0.5pi") == Approx(-kPi / 2));
  CHECK(parse_angle("0.785") == Approx(0.785));
  CHECK_THROWS(parse_angle("oops"));
  CHECK_THROWS(parse_angle(""));
  CHECK_THROWS(parse_angle("0.25pix"));
}

TEST_CASE("parse_grid") {
  const auto g = parse_grid("0.05pi:0.45pi:9");
  REQUIRE(g.size() == 9);
  CHECK(g.front() == Approx(0.05 * kPi));
  CHECK(g.back() == Approx(0.45 * kPi));
  CHECK(g[4] == Approx(0.25 * kPi));
  CHECK(parse_grid("0.1pi,0.2pi").size() == 2);
  CHECK(parse_grid("0.3").size() == 1);
  CHECK_THROWS(parse_grid("0.1pi:oops"));
  CHECK_THROWS(parse_grid("0.1pi:0.2pi:0"));
}

TEST_CASE("scan-theta certifies the default grid") {
  const auto r = invoke({"scan-theta", "--events", "500"});
  CHECK(r.code == 0);
  CHECK(r.out.find("theta,theta_pi,exact_s,s_hat,s_stderr,bound_known,bound_unknown,note") !=
        std::string::npos);
  CHECK(r.out.find("# config: ") != std::string::npos);
}

TEST_CASE("scan-theta exit codes") {
  CHECK(invoke({"scan-theta", "--grid", "0.1pi:oops"}).code == 1);
  // Endpoints outside the open interval are reported but not certified.
  CHECK(invoke({"scan-theta", "--grid", "0,0.25pi", "--events", "100"}).code == 2);
}

TEST_CASE("simulate JSON artifact") {
  const auto r = invoke({"simulate", "--theta", "0.3pi", "--events", "20000", "--seed", "7"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["command"] == "simulate");
  CHECK(doc["config"]["seed"] == 7);
  CHECK(doc["estimate"]["s_hat"].get<double>() == 4.0);
  CHECK(doc["exact"]["s"].get<double>() == Approx(4.0).epsilon(1e-12));
  CHECK(doc["bounds"]["unknown_measurements"].get<double>() == 3.0);

  const auto again = invoke({"simulate", "--theta", "0.3pi", "--events", "20000", "--seed", "7"});
  CHECK(again.out == r.out);
}

TEST_CASE("simulate CSV artifact") {
  const auto r = invoke({"simulate", "--events", "1000", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("theta,setting_i,setting_j,setting_k,a,b,c,count,p_hat,stderr,s_hat,s_stderr") !=
        std::string::npos);
}

TEST_CASE("simulate rejects bad input") {
  CHECK(invoke({"simulate", "--events", "0"}).code == 1);
  CHECK(invoke({"simulate", "--dark", "1.5"}).code == 1);
  CHECK(invoke({"simulate", "--theta", "0.6pi"}).code == 1);
  CHECK(invoke({"simulate", "--format", "xml"}).code == 1);
  CHECK(invoke({"no-such-command"}).code == 1);
  CHECK(invoke({}).code == 1);
}

TEST_CASE("config file layering") {
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"command": "simulate", "config": {"events": 2000, "seed": 3}})";
  }
  const auto from_file = invoke({"simulate", "--config", path.string()});
  REQUIRE(from_file.code == 0);
  const Json doc = Json::parse(from_file.out);
  CHECK(doc["config"]["events"] == 2000);
  CHECK(doc["config"]["seed"] == 3);

  // Flags override the file.
  const auto flagged = invoke({"simulate", "--config", path.string(), "--seed", "9"});
  CHECK(Json::parse(flagged.out)["config"]["seed"] == 9);

  // An artifact's embedded config reproduces it.
  const auto replay_path = temp_file("replay.json");
  {
    std::ofstream f(replay_path);
    f << from_file.out;
  }
  CHECK(invoke({"simulate", "--config", replay_path.string()}).out == from_file.out);

  {
    std::ofstream f(path);
    f << R"({"bogus": 1})";
  }
  CHECK(invoke({"simulate", "--config", path.string()}).code == 1);
  CHECK(invoke({"simulate", "--config", "/nonexistent.json"}).code == 1);
  std::filesystem::remove(path);
  std::filesystem::remove(replay_path);
}

TEST_CASE("--output writes the artifact to a file") {
  const auto path = temp_file("out.json");
  const auto r = invoke({"simulate", "--events", "1000", "--output", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(path);
  const Json doc = Json::parse(f);
  CHECK(doc["command"] == "simulate");
  CHECK_FALSE(r.out.empty());  // summary
  std::filesystem::remove(path);
}

TEST_CASE("bounds report") {
  const auto r = invoke({"bounds", "--samples", "200"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["bounds"]["known_measurements"].get<double>() ==
        Approx(2 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(doc["saturating_model"]["s"].get<double>() == Approx(2 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(doc["conditioning_split_model"]["s"].get<double>() == Approx(4.0).epsilon(1e-12));
  CHECK(doc["sampler"]["per_lambda"].size() == 16);
  CHECK(invoke({"falsify", "--samples", "100", "--lambda-count", "3"}).code == 0);
  CHECK(invoke({"bounds", "--lambda-count", "17"}).code == 1);
  CHECK(invoke({"bounds", "--charlie", "x,q"}).code == 1);
}

TEST_CASE("solve-angles") {
  const auto r = invoke({"solve-angles", "--theta", "0.2pi"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  bool saw_b0 = false;
  for (const auto& s : doc["settings"]) {
    if (s["setting"] == "B0" || s["setting"] == "B1") CHECK(s["deviation"].get<double>() < 1e-9);
    saw_b0 = saw_b0 || s["setting"] == "B0";
  }
  CHECK(saw_b0);
  CHECK(invoke({"solve-angles", "--theta", "0.2pi", "--convention", "conjugate-retardance"}).code ==
        0);
  CHECK(invoke({"solve-angles", "--theta", "0.6pi"}).code == 1);
  CHECK(invoke({"solve-angles"}).code == 1);
  CHECK(invoke({"solve-angles", "--theta", "0.2pi", "--convention", "other"}).code == 1);
}

TEST_CASE("verify-table") {
  const auto r = invoke({"verify-table", "--table", STEERCERT_TEST_DATA_DIR "/table1.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# summary: pass=") != std::string::npos);
  CHECK(invoke({"verify-table", "--table", "/nonexistent.csv"}).code == 1);

  const auto path = temp_file("table.csv");
  {
    std::ofstream f(path);
    f << "theta_pi,b0_q1,b0_h,b0_q2,b1_q1,b1_h,b1_q2\n0.25,0,45,0,0,45,90\nbroken\n";
  }
  const auto partial = invoke({"verify-table", "--table", path.string(), "--format", "json"});
  CHECK(partial.code == 0);
  CHECK(partial.out.find("error") != std::string::npos);
  std::filesystem::remove(path);
}
