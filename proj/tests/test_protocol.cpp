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

#include <algorithm>
#include <cmath>
#include <map>

#include "qbc3/protocol.hpp"

using namespace qbc3;

TEST_CASE("preparation draws independent circle states") {
  SplitMix64 rng(5);
  auto prep = babe_prepare(1, rng);
  REQUIRE(prep.m == 1);
  REQUIRE(prep.angles.size() == 1);
  CHECK(prep.angles[0] >= 0.0);
  CHECK(prep.angles[0] < 2 * kPi);
  CHECK(prep.sent_states[0].norm() == doctest::Approx(1.0).epsilon(1e-12));

  auto prep3 = babe_prepare(3, rng);
  for (int j = 0; j < 3; ++j) {
    VectorC expected = state_from_angle(prep3.angles[static_cast<size_t>(j)]);
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(prep3.sent_states[static_cast<size_t>(j)][i] - expected[i]) == 0.0);
  }

  CHECK_THROWS_AS(babe_prepare(0, rng), ProtocolError);
}

TEST_CASE("prepared angles pass a KS test against the uniform law") {
  SplitMix64 rng(6);
  const int samples = 100000;
  std::vector<double> u;
  u.reserve(samples);
  for (int i = 0; i < samples; ++i)
    u.push_back(babe_prepare(1, rng).angles[0] / (2 * kPi));
  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (int i = 0; i < samples; ++i) {
    double f = static_cast<double>(i + 1) / samples;
    d = std::max(d, std::abs(f - u[static_cast<size_t>(i)]));
    d = std::max(d, std::abs(u[static_cast<size_t>(i)] - static_cast<double>(i) / samples));
  }
  // 1% critical value: 1.63 / sqrt(N)
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("single-qubit commitment carries exactly the modulated state") {
  SplitMix64 rng(7);
  auto prep = babe_prepare(1, rng);
  auto [msg, secret] = adam_commit(prep.sent_states, 1, 1, kPi, rng);
  REQUIRE(msg.n == 1);
  CHECK(secret.placement == std::vector<int>{0});
  CHECK(secret.decoy_angles.empty());
  VectorC expected = modulate(CircleState(prep.angles[0]), Modulation{kPi, 1});
  CHECK(max_abs_diff(msg.qubits[0], MatrixC::projector(expected)) <= 1e-12);
}

TEST_CASE("commitment places modulated signals and rejects bad shapes") {
  SplitMix64 rng(8);
  auto prep = babe_prepare(3, rng);
  auto [msg, secret] = adam_commit(prep.sent_states, 0, 7, kPi, rng);
  REQUIRE(msg.n == 7);
  CHECK(secret.decoy_angles.size() == 4);
  for (int j = 0; j < 3; ++j) {
    VectorC expected =
        modulate(CircleState(prep.angles[static_cast<size_t>(j)]), Modulation{kPi, 0});
    int pos = secret.placement[static_cast<size_t>(j)];
    CHECK(max_abs_diff(msg.qubits[static_cast<size_t>(pos)],
                       MatrixC::projector(expected)) <= 1e-12);
  }

  CHECK_THROWS_AS(adam_commit(prep.sent_states, 0, 2, kPi, rng), ProtocolError);
  CHECK_THROWS_AS(adam_commit(prep.sent_states, 2, 7, kPi, rng), ProtocolError);
  CHECK_THROWS_AS(adam_commit({}, 0, 3, kPi, rng), ProtocolError);
}

TEST_CASE("signal placement is uniform over ordered position pairs") {
  SplitMix64 rng(9);
  const int runs = 100000;
  std::map<std::pair<int, int>, int> counts;
  auto prep = babe_prepare(2, rng);
  for (int r = 0; r < runs; ++r) {
    auto [msg, secret] = adam_commit(prep.sent_states, 0, 5, kPi, rng);
    counts[{secret.placement[0], secret.placement[1]}]++;
  }
  REQUIRE(counts.size() == 20);  // (5)_2 ordered pairs
  double expected = runs / 20.0;
  double chi2 = 0.0;
  for (const auto& [pair, observed] : counts)
    chi2 += (observed - expected) * (observed - expected) / expected;
  // chi-square with 19 dof, 1% critical value
  CHECK(chi2 < 36.19);
}

TEST_CASE("honest opening copies the secret and verifies") {
  SplitMix64 rng(10);
  auto prep = babe_prepare(1, rng);
  auto [msg, secret] = adam_commit(prep.sent_states, 0, 4, kPi, rng);
  OpeningMessage opening = adam_open(secret);
  CHECK(opening.bit == secret.bit);
  CHECK(opening.placement == secret.placement);

  auto res = babe_verify(prep, msg, opening, kPi, VerifyMode::Analytic, nullptr);
  CHECK(res.accepted);
  CHECK(res.probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(res.protocol_violation);
}

TEST_CASE("honest acceptance probability is exactly 1 across the sweep") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = m; n <= 11; ++n) {
      for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SplitMix64 rng(seed * 7919 + static_cast<std::uint64_t>(m * 13 + n));
        auto prep = babe_prepare(m, rng);
        int bit = static_cast<int>(rng.below(2));
        auto [msg, secret] = adam_commit(prep.sent_states, bit, n, kPi, rng);
        auto res =
            babe_verify(prep, msg, adam_open(secret), kPi, VerifyMode::Analytic, nullptr);
        REQUIRE(std::abs(res.probability - 1.0) <= 1e-12);
        REQUIRE(res.accepted);
      }
    }
  }
}

TEST_CASE("opening the wrong bit on an orthogonal modulation is hopeless") {
  SplitMix64 rng(11);
  long accepted = 0;
  const long trials = 100000;
  for (long t = 0; t < trials; ++t) {
    auto prep = babe_prepare(1, rng);
    auto [msg, secret] = adam_commit(prep.sent_states, 0, 3, kPi, rng);
    OpeningMessage lie{1, secret.placement};
    auto analytic = babe_verify(prep, msg, lie, kPi, VerifyMode::Analytic, nullptr);
    CHECK(analytic.probability <= 1e-12);
    accepted += babe_verify(prep, msg, lie, kPi, VerifyMode::Sample, &rng).accepted;
  }
  CHECK(accepted == 0);
}

TEST_CASE("a random circle state passes a fixed test with mean 1/2") {
  SplitMix64 rng(12);
  const long trials = 100000;
  double sum = 0.0;
  long accepted = 0;
  for (long t = 0; t < trials; ++t) {
    double target = rng.angle();
    double decoy = rng.angle();
    double p = std::norm(inner(state_from_angle(target), state_from_angle(decoy)));
    sum += p;
    accepted += rng.bernoulli(p) ? 1 : 0;
  }
  double mean = sum / trials;
  // Var(cos^2) = 1/8 for the analytic average; Bernoulli variance is 1/4.
  CHECK(std::abs(mean - 0.5) <= 3.0 * std::sqrt(0.125 / trials));
  CHECK(std::abs(static_cast<double>(accepted) / trials - 0.5) <=
        3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("naming a decoy as the signal is accepted half the time") {
  SplitMix64 rng(13);
  const long trials = 100000;
  double sum = 0.0;
  for (long t = 0; t < trials; ++t) {
    auto prep = babe_prepare(1, rng);
    auto [msg, secret] = adam_commit(prep.sent_states, 0, 2, kPi, rng);
    int decoy_pos = 1 - secret.placement[0];
    OpeningMessage lie{0, {decoy_pos}};
    sum += babe_verify(prep, msg, lie, kPi, VerifyMode::Analytic, nullptr).probability;
  }
  CHECK(std::abs(sum / trials - 0.5) <= 3.0 * std::sqrt(0.125 / trials));
}

TEST_CASE("malformed openings reject with the violation flag") {
  SplitMix64 rng(14);
  auto prep = babe_prepare(2, rng);
  auto [msg, secret] = adam_commit(prep.sent_states, 0, 5, kPi, rng);

  auto expect_violation = [&](OpeningMessage bad) {
    auto res = babe_verify(prep, msg, bad, kPi, VerifyMode::Analytic, nullptr);
    CHECK(res.protocol_violation);
    CHECK_FALSE(res.accepted);
    CHECK(res.probability == 0.0);
  };
  expect_violation(OpeningMessage{0, {1, 1}});       // duplicate position
  expect_violation(OpeningMessage{0, {0, 9}});       // out of range
  expect_violation(OpeningMessage{0, {-1, 2}});      // negative
  expect_violation(OpeningMessage{0, {0}});          // wrong arity
  expect_violation(OpeningMessage{2, {0, 1}});       // invalid bit
}

TEST_CASE("sample verification requires a stream") {
  SplitMix64 rng(15);
  auto prep = babe_prepare(1, rng);
  auto [msg, secret] = adam_commit(prep.sent_states, 0, 2, kPi, rng);
  CHECK_THROWS_AS(
      babe_verify(prep, msg, adam_open(secret), kPi, VerifyMode::Sample, nullptr),
      ProtocolError);
}

TEST_CASE("session phases move strictly forward") {
  SplitMix64 rng(16);
  CommitmentSession session(2, kPi, 77);
  CHECK(session.phase() == SessionPhase::Prepared);

  CHECK_THROWS_AS(session.open(), ProtocolError);
  CHECK_THROWS_AS(session.verify(VerifyMode::Sample, &rng), ProtocolError);
  CHECK_THROWS_AS(session.message(), ProtocolError);
  CHECK_THROWS_AS(session.opening(), ProtocolError);
  CHECK_THROWS_AS(session.result(), ProtocolError);

  session.commit(0, 5, rng);
  CHECK(session.phase() == SessionPhase::Committed);
  CHECK_THROWS_AS(session.commit(0, 5, rng), ProtocolError);
  CHECK_THROWS_AS(session.verify(VerifyMode::Sample, &rng), ProtocolError);

  session.open();
  CHECK(session.phase() == SessionPhase::Opened);
  CHECK_THROWS_AS(session.open(), ProtocolError);
  CHECK_THROWS_AS(session.open_with(OpeningMessage{}), ProtocolError);
  CHECK_THROWS_AS(session.commit(0, 5, rng), ProtocolError);

  auto res = session.verify(VerifyMode::Sample, &rng);
  CHECK(res.accepted);
  CHECK(session.phase() == SessionPhase::Accepted);
  CHECK_THROWS_AS(session.verify(VerifyMode::Sample, &rng), ProtocolError);
  CHECK_THROWS_AS(session.open(), ProtocolError);
}

TEST_CASE("dishonest opening drives the session to rejection") {
  SplitMix64 rng(17);
  CommitmentSession session(1, kPi, 78);
  session.commit(0, 3, rng);
  OpeningMessage lie{1, session.secret().placement};
  session.open_with(lie);
  auto res = session.verify(VerifyMode::Sample, &rng);
  CHECK_FALSE(res.accepted);
  CHECK(session.phase() == SessionPhase::Rejected);
}

TEST_CASE("transcript carries the wire fields and hides secrets by default") {
  SplitMix64 rng(18);
  CommitmentSession session(2, kPi, 79);
  session.commit(1, 6, rng);
  session.open();
  session.verify(VerifyMode::Sample, &rng);

  auto j = session.transcript();
  CHECK(j["m"] == 2);
  CHECK(j["n"] == 6);
  CHECK(j["theta"].get<double>() == doctest::Approx(kPi));
  CHECK(j["seed"] == 79);
  CHECK(j["phase"] == "ACCEPTED");
  CHECK(j["bit"] == 1);
  CHECK(j["acceptance"] == true);
  REQUIRE(j["placement"].size() == 2);
  for (size_t k = 0; k < 2; ++k)
    CHECK(j["placement"][k].get<int>() == session.opening().placement[k] + 1);
  CHECK_FALSE(j.contains("babe_angles"));
  CHECK_FALSE(j.contains("decoy_angles"));

  auto full = session.transcript(true);
  REQUIRE(full.contains("babe_angles"));
  CHECK(full["babe_angles"].size() == 2);
  CHECK(full["decoy_angles"].size() == 4);
}

TEST_CASE("ordered position sampling is injective and in range") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    auto pos = sample_ordered_positions(9, 4, rng);
    REQUIRE(pos.size() == 4);
    std::vector<bool> seen(9, false);
    for (int p : pos) {
      REQUIRE(p >= 0);
      REQUIRE(p < 9);
      REQUIRE_FALSE(seen[static_cast<size_t>(p)]);
      seen[static_cast<size_t>(p)] = true;
    }
  }
}
