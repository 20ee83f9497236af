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

#ifndef QBC3_ACCEPTANCE_HPP
#define QBC3_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qbc3::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // human-readable, may mention timing
};

struct Outcome {
  std::vector<CriterionResult> criteria;
  nlohmann::ordered_json report;  // deterministic: no wall-clock content
  bool all_pass = false;
};

// Runs the full verification battery. The final determinism criterion
// regenerates the whole report under a different worker count and compares
// bytes, so expect roughly twice the single-pass runtime.
Outcome run_acceptance(std::uint64_t seed, int workers);

}  // namespace qbc3::acceptance

#endif  // QBC3_ACCEPTANCE_HPP
