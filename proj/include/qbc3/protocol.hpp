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

#ifndef QBC3_PROTOCOL_HPP
#define QBC3_PROTOCOL_HPP

#include <cstdint>
#include <utility>

#include "json.hpp"

#include "qbc3/qubit.hpp"

namespace qbc3 {

class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& what) : Error(what) {}
};

// Babe's opening move: m circle states with angles private to her.
struct BabePreparation {
  int m = 0;
  std::vector<double> angles;       // private
  std::vector<VectorC> sent_states;
};

// The n-qubit commitment register, one 2x2 density operator per position.
// Honest runs place pure states (rank-1 projectors); attack strategies may
// place mixed marginals.
struct CommitmentMessage {
  int n = 0;
  std::vector<MatrixC> qubits;
};

// Adam's private bookkeeping: the bit, where signal j went, and the decoy
// angles (indexed by decoy slot in increasing position order).
struct AdamSecret {
  int bit = 0;
  std::vector<int> placement;  // placement[j] = position of signal j, 0-based
  std::vector<double> decoy_angles;
};

struct OpeningMessage {
  int bit = 0;
  std::vector<int> placement;
};

enum class SessionPhase { Prepared, Committed, Opened, Accepted, Rejected };

const char* to_string(SessionPhase phase);

enum class VerifyMode { Sample, Analytic };

struct VerifyResult {
  bool accepted = false;
  double probability = 0.0;  // product of per-position test probabilities
  bool protocol_violation = false;
  std::vector<double> per_position_probability;
};

// --- stateless protocol steps ---

BabePreparation babe_prepare(int m, SplitMix64& rng);

// Modulates each prepared state by U_bit, scatters the m signals over a
// uniformly random ordered choice of m out of n positions, and fills the
// rest with uniform circle decoys.
std::pair<CommitmentMessage, AdamSecret> adam_commit(
    const std::vector<VectorC>& prep_states, int bit, int n, double theta,
    SplitMix64& rng);

// Honest opening reveals the secret verbatim.
OpeningMessage adam_open(const AdamSecret& secret);

// Tests the qubit at each claimed position against the projector on
// U_bit |psi^j>. Sample mode draws each test; analytic mode multiplies the
// exact test probabilities. A malformed placement never throws: it rejects
// with the protocol_violation flag set.
VerifyResult babe_verify(const BabePreparation& prep, const CommitmentMessage& msg,
                         const OpeningMessage& opening, double theta, VerifyMode mode,
                         SplitMix64* rng);

// Uniformly random ordered selection of m distinct values from [0, n).
std::vector<int> sample_ordered_positions(int n, int m, SplitMix64& rng);

// --- session state machine ---
//
// Phases move strictly forward: Prepared -> Committed -> Opened ->
// Accepted | Rejected. Any out-of-order call throws ProtocolError.
class CommitmentSession {
 public:
  CommitmentSession(int m, double theta, std::uint64_t seed);

  void commit(int bit, int n, SplitMix64& rng);
  void open();                               // honest
  void open_with(OpeningMessage opening);    // Adam may claim anything
  VerifyResult verify(VerifyMode mode, SplitMix64* rng);

  SessionPhase phase() const { return phase_; }
  const BabePreparation& preparation() const { return prep_; }
  const CommitmentMessage& message() const;
  const AdamSecret& secret() const;
  const OpeningMessage& opening() const;
  const VerifyResult& result() const;
  double theta() const { return theta_; }

  nlohmann::ordered_json transcript(bool reveal_secrets = false) const;

 private:
  void require_phase(SessionPhase expected, const char* op) const;

  SessionPhase phase_ = SessionPhase::Prepared;
  double theta_;
  std::uint64_t seed_;
  BabePreparation prep_;
  bool committed_ = false;
  CommitmentMessage msg_;
  AdamSecret secret_;
  bool opened_ = false;
  OpeningMessage opening_;
  bool verified_ = false;
  VerifyResult result_;
};

}  // namespace qbc3

#endif  // QBC3_PROTOCOL_HPP
