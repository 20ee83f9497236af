// Copyright 2026 The qbc3sim Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "qbc3/attacks.hpp"
#include "qbc3/bounds.hpp"
#include "qbc3/harness.hpp"

using namespace qbc3;

namespace {

nlohmann::ordered_json strip_wall_clock(nlohmann::ordered_json j) {
  j.erase("wall_clock_ms");
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("wilson interval endpoints") {
  auto zero = wilson_interval(0, 10);
  CHECK(zero.first == 0.0);
  CHECK(zero.second > 0.0);

  auto full = wilson_interval(10, 10);
  CHECK(full.second == 1.0);
  CHECK(full.first < 1.0);

  auto half = wilson_interval(50, 100);
  CHECK(0.5 - half.first == doctest::Approx(half.second - 0.5).epsilon(1e-12));
  CHECK(half.second - half.first == doctest::Approx(0.19234).epsilon(2e-3));

  CHECK_THROWS(wilson_interval(1, 0));
  CHECK_THROWS(wilson_interval(11, 10));
  CHECK_THROWS(wilson_interval(-1, 10));
}

TEST_CASE("child seeds stay distinct over a large trial range") {
  std::unordered_set<std::uint64_t> seen;
  const std::uint64_t samples = 1 << 20;
  for (std::uint64_t t = 0; t < samples; ++t)
    seen.insert(SplitMix64::child_seed(123456789ull, t));
  CHECK(seen.size() == samples);
}

TEST_CASE("honest command accepts everything") {
  ExperimentConfig cfg;
  cfg.command = "honest";
  cfg.m = 2;
  cfg.n = 7;
  cfg.trials = 2000;
  cfg.seed = 42;
  auto rs = run(cfg);
  CHECK(rs.exit_code == 0);
  CHECK(rs.report["honest"]["acceptRate"].get<double>() == 1.0);
  CHECK(rs.report["honest"]["successes"].get<long long>() == 2000);
  CHECK(rs.report["analysis"]["pass"].get<bool>());
  CHECK(rs.report["honest"]["transcript"]["phase"] == "ACCEPTED");
  CHECK_FALSE(rs.report["honest"]["transcript"].contains("babe_angles"));

  cfg.mode = "analytic";
  cfg.trials = 200;
  auto rs2 = run(cfg);
  CHECK(rs2.report["honest"]["minProbability"].get<double>() >= 1.0 - 1e-12);

  cfg.reveal_secrets = true;
  auto rs3 = run(cfg);
  CHECK(rs3.report["honest"]["transcript"].contains("babe_angles"));
}

TEST_CASE("attack dispatch covers every strategy tag") {
  ExperimentConfig cfg;
  cfg.command = "attack";
  cfg.trials = 5000;

  cfg.actor = "babe";
  for (const char* strategy : {"guess", "vote", "helstrom", "entangled"}) {
    cfg.strategy = strategy;
    cfg.m = 1;
    cfg.n = 5;
    auto rs = run(cfg);
    CHECK(rs.exit_code == 0);
    CHECK(rs.report["report"].contains("empiricalSuccess"));
  }

  cfg.actor = "adam";
  cfg.strategy = "relabel";
  auto relabel = run(cfg);
  double lo = relabel.report["report"]["wilsonInterval95"][0].get<double>();
  double hi = relabel.report["report"]["wilsonInterval95"][1].get<double>();
  CHECK(lo <= 0.5);
  CHECK(0.5 <= hi);

  cfg.strategy = "clone";
  cfg.n = 4;
  CHECK(run(cfg).exit_code == 0);
}

TEST_CASE("invalid configurations are rejected") {
  ExperimentConfig cfg;
  cfg.command = "warp";
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg.command = "attack";
  cfg.actor = "babe";
  cfg.strategy = "guess";
  cfg.m = 2;  // guess is a single-signal strategy
  cfg.n = 5;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg.strategy = "steal";
  cfg.m = 1;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg.command = "honest";
  cfg.format = "yaml";
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg.format = "json";
  cfg.mode = "psychic";
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg.command = "epr-demo";
  cfg.mode = "sample";
  cfg.ensemble = "unknown";
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("bounds table matches the exact discrimination value") {
  ExperimentConfig cfg;
  cfg.command = "bounds-table";
  cfg.n_from = 3;
  cfg.n_to = 11;
  cfg.m = 1;
  cfg.format = "csv";
  auto rs = run(cfg);

  auto lines = split(rs.rendered, '\n');
  REQUIRE(lines.size() >= 10);
  auto header = split(lines[0], ',');
  REQUIRE(header.size() == 11);
  CHECK(header[0] == "n");
  CHECK(header[4] == "eq7");
  CHECK(header[10] == "guess_baseline");

  for (size_t row = 1; row + 1 < lines.size(); ++row) {
    auto cells = split(lines[row], ',');
    REQUIRE(cells.size() == 11);
    int n = std::stoi(cells[0]);
    if (n % 2 == 0) {
      CHECK(cells[4].empty());
      continue;
    }
    double eq7 = std::stod(cells[4]);
    CHECK(std::abs(0.5 + eq7 - babe_helstrom_exact(n, 1, kPi)) <= 1e-9);
  }
}

TEST_CASE("bounds table emits empty cells where formulas do not apply") {
  ExperimentConfig cfg;
  cfg.command = "bounds-table";
  cfg.n_from = 1;
  cfg.n_to = 2;
  cfg.m = 1;
  cfg.format = "csv";
  auto rs = run(cfg);
  auto lines = split(rs.rendered, '\n');
  auto n1 = split(lines[1], ',');
  CHECK(n1[4] == "0.5");  // eq7 defined at n = 1
  CHECK(n1[5].empty());   // envelope undefined at l = 0
  auto n2 = split(lines[2], ',');
  CHECK(n2[4].empty());   // even n
}

TEST_CASE("QBC3_WORKERS steers the pool without touching the numbers") {
  ExperimentConfig cfg;
  cfg.command = "attack";
  cfg.actor = "adam";
  cfg.strategy = "relabel";
  cfg.m = 1;
  cfg.n = 4;
  cfg.trials = 10000;
  cfg.seed = 99;

  auto base = run(cfg);
  setenv("QBC3_WORKERS", "3", 1);
  CHECK(resolve_workers(0) == 3);
  auto enved = run(cfg);
  unsetenv("QBC3_WORKERS");
  CHECK(resolve_workers(0) == 1);
  CHECK(strip_wall_clock(base.report).dump() == strip_wall_clock(enved.report).dump());
}

TEST_CASE("identical configs reproduce reports byte for byte") {
  ExperimentConfig cfg;
  cfg.command = "attack";
  cfg.actor = "adam";
  cfg.strategy = "relabel";
  cfg.m = 1;
  cfg.n = 5;
  cfg.trials = 20000;
  cfg.seed = 31337;

  auto a = run(cfg);
  auto b = run(cfg);
  CHECK(strip_wall_clock(a.report).dump() == strip_wall_clock(b.report).dump());
  CHECK(a.rendered != "");

  // worker count must not show up anywhere in the numbers
  cfg.workers = 3;
  auto c = run(cfg);
  CHECK(strip_wall_clock(a.report).dump() == strip_wall_clock(c.report).dump());

  cfg.workers = 0;
  cfg.format = "csv";
  auto d1 = run(cfg);
  auto d2 = run(cfg);
  CHECK(d1.rendered == d2.rendered);
}

TEST_CASE("epr demo command wires the ensembles through") {
  ExperimentConfig cfg;
  cfg.command = "epr-demo";
  auto rs = run(cfg);
  CHECK(rs.report["eprDemo"]["result"]["babeHelstrom"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rs.report["eprDemo"]["result"]["adamSwitchOverlap"].get<double>() >= 1.0 - 1e-9);

  cfg.ensemble = "pure-pair";
  cfg.alpha = 0.5;
  auto rs2 = run(cfg);
  CHECK(rs2.report["eprDemo"]["result"]["adamSwitchOverlap"].get<double>() ==
        doctest::Approx(std::cos(0.5)).epsilon(1e-9));

  cfg.ensemble = "perturbed";
  cfg.epsilon = 0.75;  // outside [0, 0.5]
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("schema version and software version stamp every report") {
  ExperimentConfig cfg;
  cfg.command = "bounds-table";
  cfg.n_from = 3;
  cfg.n_to = 3;
  auto rs = run(cfg);
  CHECK(rs.report["schema_version"].get<int>() == kSchemaVersion);
  CHECK(rs.report["software_version"].get<std::string>() == software_version());
}
