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

#ifndef QBC3_HARNESS_HPP
#define QBC3_HARNESS_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

#include "qbc3/mc.hpp"

namespace qbc3 {

inline constexpr int kSchemaVersion = 1;

const char* software_version();

// One experiment request. Field relevance depends on `command`:
//   honest       m, n, theta, trials, seed, mode (sample|analytic)
//   attack       actor (babe|adam), strategy, m, n, theta, trials, seed
//   bounds-table n_from..n_to (or n), m, theta
//   epr-demo     ensemble (bb84|pure-pair|perturbed|revealing), alpha, epsilon
//   selftest     seed, workers
struct ExperimentConfig {
  std::string command;
  std::string actor;
  std::string strategy;
  int m = 1;
  int n = 5;
  double theta = 3.14159265358979323846;
  long long trials = 100000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0: QBC3_WORKERS env or 1; never affects results
  double sigma = 3.0;
  std::string mode = "sample";
  int n_from = 0;
  int n_to = 0;
  std::string ensemble = "bb84";
  double epsilon = 0.05;
  double alpha = 0.5;
  std::string format = "json";  // json | csv
  bool reveal_secrets = false;
};

// Rendered experiment result. `report` is the canonical nested JSON;
// `rendered` is what gets written to the output (JSON dump or CSV);
// `console` carries human-readable progress lines (selftest criteria).
// Re-running an identical config reproduces report and rendered
// byte-for-byte, except for the wall_clock_ms field (absent from selftest
// reports entirely).
struct RunSummary {
  nlohmann::ordered_json report;
  std::string rendered;
  std::string console;
  int exit_code = 0;
};

// Dispatches a config to the protocol/attack/bounds machinery. Trial t of a
// Monte Carlo command runs on the child seed SplitMix64::child_seed(seed, t).
// Throws std::invalid_argument on bad configs.
RunSummary run(const ExperimentConfig& config);

}  // namespace qbc3

#endif  // QBC3_HARNESS_HPP
