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

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <numbers>

#include "qbc3/harness.hpp"

namespace {

// Accepts "pi", "pi/<x>", "<x>*pi", or a plain number of radians.
double parse_theta(const std::string& s) {
  if (s == "pi") return std::numbers::pi;
  if (s.rfind("pi/", 0) == 0) {
    double d = std::stod(s.substr(3));
    if (d == 0.0) throw CLI::ValidationError("--theta", "division by zero");
    return std::numbers::pi / d;
  }
  if (auto star = s.find("*pi"); star != std::string::npos && star + 3 == s.size())
    return std::stod(s.substr(0, star)) * std::numbers::pi;
  return std::stod(s);
}

// "A..B" (inclusive) or a single integer.
std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

void emit(const qbc3::RunSummary& rs, const std::string& output_path) {
  if (!rs.console.empty()) std::cout << rs.console;
  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + output_path);
    out << rs.rendered;
  } else if (rs.console.empty()) {
    std::cout << rs.rendered;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QBC3 decoy-state bit-commitment simulator and security analyzer"};
  app.require_subcommand(1);

  qbc3::ExperimentConfig cfg;
  std::string theta_str = "pi";
  std::string n_range;
  std::string output_path;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Report format: json or csv");
    sub->add_option("--output,-o", output_path, "Write the report to this path");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials (default 100000)");
    sub->add_option("--seed", cfg.seed, "Root seed; trial t uses a splitmix child seed");
    sub->add_option("--workers", cfg.workers,
                    "Worker threads (default: QBC3_WORKERS or 1; never affects results)");
    sub->add_option("--sigma", cfg.sigma, "PASS/FAIL threshold in binomial sigmas");
  };
  auto add_protocol = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "Signal qubits from Babe");
    sub->add_option("--n", cfg.n, "Committed qubits from Adam (signals + decoys)");
    sub->add_option("--theta", theta_str, "Modulation angle (pi, pi/2, 0.7, ...)");
  };

  auto* honest = app.add_subcommand("honest", "Run the honest protocol end to end");
  add_protocol(honest);
  add_mc(honest);
  add_output(honest);
  honest->add_option("--mode", cfg.mode, "Verification mode: sample or analytic");
  honest->add_flag("--reveal-secrets", cfg.reveal_secrets,
                   "Include Babe's angles and decoy angles in the transcript");

  auto* attack = app.add_subcommand("attack", "Mount a cheating strategy");
  attack->add_option("actor", cfg.actor, "Who cheats: babe or adam")->required();
  attack->add_option("--strategy", cfg.strategy,
                     "babe: guess|vote|helstrom|entangled; adam: relabel|clone")
      ->required();
  add_protocol(attack);
  add_mc(attack);
  add_output(attack);

  auto* bounds = app.add_subcommand("bounds-table", "Closed-form security bounds as CSV");
  bounds->add_option("--n", n_range, "n or inclusive range n1..n2")->required();
  bounds->add_option("--m", cfg.m, "Signal count for the sequence formulas");
  bounds->add_option("--theta", theta_str, "Modulation angle");
  add_output(bounds);

  auto* epr = app.add_subcommand("epr-demo",
                                 "Purification attack on a naive (non-anonymous) protocol");
  epr->add_option("--ensemble", cfg.ensemble, "bb84 | pure-pair | perturbed | revealing");
  epr->add_option("--alpha", cfg.alpha, "pure-pair: angle between the two committed states");
  epr->add_option("--epsilon", cfg.epsilon, "perturbed: weight imbalance of ensemble 1");
  add_output(epr);

  auto* selftest = app.add_subcommand("selftest", "Run the full verification battery");
  selftest->add_option("--seed", cfg.seed, "Root seed for the battery");
  selftest->add_option("--workers", cfg.workers, "Worker threads (never affects results)");
  add_output(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.theta = parse_theta(theta_str);
    if (bounds->parsed()) {
      auto [lo, hi] = parse_range(n_range);
      cfg.n_from = lo;
      cfg.n_to = hi;
      if (cfg.format == "json" && bounds->count("--format") == 0) cfg.format = "csv";
    }
    if (honest->parsed()) cfg.command = "honest";
    if (attack->parsed()) cfg.command = "attack";
    if (bounds->parsed()) cfg.command = "bounds-table";
    if (epr->parsed()) cfg.command = "epr-demo";
    if (selftest->parsed()) cfg.command = "selftest";

    qbc3::RunSummary rs = qbc3::run(cfg);
    emit(rs, output_path);
    return rs.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
