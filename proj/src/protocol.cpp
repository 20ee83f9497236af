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

#include "qbc3/protocol.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbc3 {

const char* to_string(SessionPhase phase) {
  switch (phase) {
    case SessionPhase::Prepared: return "PREPARED";
    case SessionPhase::Committed: return "COMMITTED";
    case SessionPhase::Opened: return "OPENED";
    case SessionPhase::Accepted: return "ACCEPTED";
    case SessionPhase::Rejected: return "REJECTED";
  }
  return "?";
}

BabePreparation babe_prepare(int m, SplitMix64& rng) {
  if (m < 1) throw ProtocolError("babe_prepare: m must be >= 1");
  BabePreparation prep;
  prep.m = m;
  prep.angles.reserve(static_cast<size_t>(m));
  prep.sent_states.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    double phi = rng.angle();
    prep.angles.push_back(phi);
    prep.sent_states.push_back(state_from_angle(phi));
  }
  return prep;
}

std::vector<int> sample_ordered_positions(int n, int m, SplitMix64& rng) {
  // Partial Fisher-Yates: first m entries are a uniform ordered selection.
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int j = 0; j < m; ++j) {
    int k = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - j)));
    std::swap(pool[static_cast<size_t>(j)], pool[static_cast<size_t>(k)]);
  }
  pool.resize(static_cast<size_t>(m));
  return pool;
}

std::pair<CommitmentMessage, AdamSecret> adam_commit(
    const std::vector<VectorC>& prep_states, int bit, int n, double theta,
    SplitMix64& rng) {
  int m = static_cast<int>(prep_states.size());
  if (m < 1) throw ProtocolError("adam_commit: empty preparation");
  if (n < m) throw ProtocolError("adam_commit: n must be >= m");
  if (bit != 0 && bit != 1) throw ProtocolError("adam_commit: bit must be 0 or 1");

  AdamSecret secret;
  secret.bit = bit;
  secret.placement = sample_ordered_positions(n, m, rng);

  CommitmentMessage msg;
  msg.n = n;
  msg.qubits.assign(static_cast<size_t>(n), MatrixC());

  MatrixC u = modulation_matrix(Modulation{theta, bit});
  for (int j = 0; j < m; ++j) {
    VectorC modulated = u.apply(prep_states[static_cast<size_t>(j)]);
    msg.qubits[static_cast<size_t>(secret.placement[static_cast<size_t>(j)])] =
        MatrixC::projector(modulated);
  }
  for (int i = 0; i < n; ++i) {
    if (msg.qubits[static_cast<size_t>(i)].rows != 0) continue;
    double phi = rng.angle();
    secret.decoy_angles.push_back(phi);
    msg.qubits[static_cast<size_t>(i)] = MatrixC::projector(state_from_angle(phi));
  }
  return {std::move(msg), std::move(secret)};
}

OpeningMessage adam_open(const AdamSecret& secret) {
  return OpeningMessage{secret.bit, secret.placement};
}

VerifyResult babe_verify(const BabePreparation& prep, const CommitmentMessage& msg,
                         const OpeningMessage& opening, double theta, VerifyMode mode,
                         SplitMix64* rng) {
  VerifyResult res;

  // Placement sanity: right count, in range, injective, valid bit.
  bool ok = opening.bit == 0 || opening.bit == 1;
  ok = ok && static_cast<int>(opening.placement.size()) == prep.m;
  std::vector<bool> seen(static_cast<size_t>(msg.n), false);
  for (int i : opening.placement) {
    if (!ok) break;
    if (i < 0 || i >= msg.n || seen[static_cast<size_t>(i)]) {
      ok = false;
      break;
    }
    seen[static_cast<size_t>(i)] = true;
  }
  if (!ok) {
    res.protocol_violation = true;
    res.accepted = false;
    res.probability = 0.0;
    return res;
  }

  if (mode == VerifyMode::Sample && rng == nullptr)
    throw ProtocolError("babe_verify: sample mode requires a random stream");

  MatrixC u = modulation_matrix(Modulation{theta, opening.bit});
  res.accepted = true;
  res.probability = 1.0;
  for (int j = 0; j < prep.m; ++j) {
    VectorC expected = u.apply(prep.sent_states[static_cast<size_t>(j)]);
    const MatrixC& rho = msg.qubits[static_cast<size_t>(opening.placement[static_cast<size_t>(j)])];
    double p = std::real(inner(expected, rho.apply(expected)));
    p = std::clamp(p, 0.0, 1.0);
    res.per_position_probability.push_back(p);
    res.probability *= p;
    if (mode == VerifyMode::Sample && !rng->bernoulli(p)) res.accepted = false;
  }
  // Analytic mode marks the session accepted only when acceptance is certain;
  // callers wanting the cheat probability read `probability`.
  if (mode == VerifyMode::Analytic) res.accepted = res.probability >= 1.0 - 1e-12;
  return res;
}

CommitmentSession::CommitmentSession(int m, double theta, std::uint64_t seed)
    : theta_(theta), seed_(seed) {
  SplitMix64 rng(seed);
  prep_ = babe_prepare(m, rng);
}

void CommitmentSession::require_phase(SessionPhase expected, const char* op) const {
  if (phase_ != expected)
    throw ProtocolError(std::string(op) + ": session is " + to_string(phase_) +
                        ", expected " + to_string(expected));
}

void CommitmentSession::commit(int bit, int n, SplitMix64& rng) {
  require_phase(SessionPhase::Prepared, "commit");
  auto [msg, secret] = adam_commit(prep_.sent_states, bit, n, theta_, rng);
  msg_ = std::move(msg);
  secret_ = std::move(secret);
  committed_ = true;
  phase_ = SessionPhase::Committed;
}

void CommitmentSession::open() {
  require_phase(SessionPhase::Committed, "open");
  opening_ = adam_open(secret_);
  opened_ = true;
  phase_ = SessionPhase::Opened;
}

void CommitmentSession::open_with(OpeningMessage opening) {
  require_phase(SessionPhase::Committed, "open_with");
  opening_ = std::move(opening);
  opened_ = true;
  phase_ = SessionPhase::Opened;
}

VerifyResult CommitmentSession::verify(VerifyMode mode, SplitMix64* rng) {
  require_phase(SessionPhase::Opened, "verify");
  result_ = babe_verify(prep_, msg_, opening_, theta_, mode, rng);
  verified_ = true;
  phase_ = result_.accepted ? SessionPhase::Accepted : SessionPhase::Rejected;
  return result_;
}

const CommitmentMessage& CommitmentSession::message() const {
  if (!committed_) throw ProtocolError("message: nothing committed yet");
  return msg_;
}

const AdamSecret& CommitmentSession::secret() const {
  if (!committed_) throw ProtocolError("secret: nothing committed yet");
  return secret_;
}

const OpeningMessage& CommitmentSession::opening() const {
  if (!opened_) throw ProtocolError("opening: nothing opened yet");
  return opening_;
}

const VerifyResult& CommitmentSession::result() const {
  if (!verified_) throw ProtocolError("result: nothing verified yet");
  return result_;
}

nlohmann::ordered_json CommitmentSession::transcript(bool reveal_secrets) const {
  nlohmann::ordered_json j;
  j["m"] = prep_.m;
  j["n"] = committed_ ? msg_.n : 0;
  j["theta"] = theta_;
  j["seed"] = seed_;
  j["phase"] = to_string(phase_);
  if (opened_) {
    // 1-based positions in the wire format.
    std::vector<int> placement;
    placement.reserve(opening_.placement.size());
    for (int i : opening_.placement) placement.push_back(i + 1);
    j["placement"] = placement;
    j["bit"] = opening_.bit;
  } else {
    j["placement"] = nullptr;
    j["bit"] = nullptr;
  }
  if (verified_) {
    j["acceptance"] = result_.accepted;
  } else {
    j["acceptance"] = nullptr;
  }
  if (reveal_secrets) {
    j["babe_angles"] = prep_.angles;
    if (committed_) {
      j["decoy_angles"] = secret_.decoy_angles;
    }
  }
  return j;
}

}  // namespace qbc3
