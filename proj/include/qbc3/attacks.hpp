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

#ifndef QBC3_ATTACKS_HPP
#define QBC3_ATTACKS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "qbc3/protocol.hpp"

namespace qbc3 {

// Uniform result record for every cheating strategy. Exact (non-sampled)
// strategies report trials = 0 and a degenerate interval.
struct AttackReport {
  std::string strategy;
  int m = 1;
  int n = 1;
  double theta = kPi;
  long long trials = 0;
  std::uint64_t seed = 0;
  double empirical_success = 0.0;
  std::pair<double, double> wilson95{0.0, 0.0};
  std::optional<double> analytic_reference;
  std::map<std::string, double> extra;  // strategy-specific values, folded into parameters

  nlohmann::ordered_json to_json() const;
};

// --- Babe's discrimination strategies ---

// Guess the signal position, measure there in the eigenbasis of
// sigma_0 - sigma_1, and read off the bit. Single-signal strategy.
AttackReport babe_guess_position(int n, double theta, long long trials,
                                 std::uint64_t seed, int workers = 0);

// Cheating preparation: all m signals in one uniform state; measure every
// position in the eigenbasis of sigma_0 - sigma_1 and majority-vote the
// outcomes. Requires odd n (no tie rule exists for even n).
AttackReport babe_majority_vote(int m, int n, double theta, long long trials,
                                std::uint64_t seed, int workers = 0);

// The commitment-register density operator Babe must discriminate when her
// m signals all carry the state |psi(psi_angle)>: an equal mixture over
// signal position choices with maximally mixed decoy marginals.
MatrixC babe_density_operator(int bit, int n, int m, double theta,
                              double psi_angle = 0.0);

// Optimal discrimination value 1/2 + ||rho_0 - rho_1||_1 / 4 by dense trace
// norm. Register cap 2^n <= 4096.
double babe_helstrom_exact(int n, int m, double theta, double psi_angle = 0.0);

// Joint (register + kept ancillas) density operator when Babe sends halves
// of maximally entangled pairs instead of circle states.
MatrixC entangled_joint_density(int bit, int n, int m, double theta);

// Exact Helstrom value on the joint register for entangled-input Babe,
// reported against the unentangled optimum; parameters carry the
// hypergeometric miss probability of the adjoin-guess framing.
AttackReport babe_entangled_attack(int n, int m, double theta = kPi);

// --- Adam's binding attacks ---

// Commit honestly to 0, then open 1 by naming uniformly chosen decoy
// positions as the signals. Requires n > m.
AttackReport adam_relabel_attack(int m, int n, double theta, long long trials,
                                 std::uint64_t seed, int workers = 0);

// Clone each incoming qubit, place U_0-copy and U_1-copy, and open the copy
// matching the chosen bit. Requires n >= 2m. The cloner is a strategy slot:
// any 1->2 qubit cloner can stand in for the default phase-covariant one,
// with `analytic_per_copy` its expected single-copy acceptance (used for
// the report's reference value).
using QubitCloner = std::function<CloneOutput(const VectorC&)>;

AttackReport adam_clone_attack(int m, int n, double theta, long long trials,
                               std::uint64_t seed, int workers = 0,
                               const QubitCloner& cloner = clone_one_to_two,
                               double analytic_per_copy = kCloneCopyFidelity);

// --- the general purification attack on naive (non-anonymous) protocols ---

struct EnsembleEntry {
  double probability = 0.0;
  VectorC state;
};

// The pair of openly known state ensembles a naive protocol commits with.
struct NaiveProtocolSpec {
  std::vector<EnsembleEntry> ensemble0;
  std::vector<EnsembleEntry> ensemble1;

  void validate() const;
  int dim_b() const;
};

MatrixC ensemble_density(const std::vector<EnsembleEntry>& ensemble);

// |Phi_b> = sum_i sqrt(p_i) |e_i>|phi_i> with a standard-basis ancilla.
struct Purification {
  VectorC vector;
  std::vector<VectorC> ancilla_basis;
  int dim_a = 0;
  int dim_b = 0;
};

std::pair<Purification, Purification> epr_build_purifications(
    const NaiveProtocolSpec& spec);

struct CheatUnitary {
  MatrixC matrix;  // acts on the ancilla space only
};

struct EprCheatResult {
  CheatUnitary cheat;
  double achieved_overlap = 0.0;  // |<Phi_1|(U x I)|Phi_0>|
};

// Aligns the Schmidt bases of the two purifications (polar decomposition of
// the weighted cross-overlap matrix, which also resolves degenerate
// coefficient blocks) and reports how close the switched state comes to
// |Phi_1>. The overlap meets the fidelity of the reduced states.
EprCheatResult epr_cheat_unitary(const Purification& phi0, const Purification& phi1);

struct EprDemoReport {
  double babe_helstrom = 0.0;        // concealment: optimal discrimination
  double adam_switch_overlap = 0.0;  // non-binding: purification switching
  double fidelity_reference = 0.0;   // F(rho_0^B, rho_1^B)

  nlohmann::ordered_json to_json() const;
};

// End-to-end demonstration of the concealing/binding tradeoff on a naive
// protocol: the better hidden the bit, the better Adam's switch works.
EprDemoReport epr_demo_naive(const NaiveProtocolSpec& spec);

}  // namespace qbc3

#endif  // QBC3_ATTACKS_HPP
