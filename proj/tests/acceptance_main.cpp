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

// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Same battery as `qbc3 selftest`.

#include <cstdlib>
#include <iostream>

#include "qbc3/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  if (const char* env = std::getenv("QBC3_ACCEPTANCE_SEED"))
    seed = std::strtoull(env, nullptr, 10);

  auto outcome = qbc3::acceptance::run_acceptance(seed, 0);
  int failures = 0;
  for (const auto& c : outcome.criteria) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << " ("
              << c.name << "): " << c.detail << "\n";
    failures += c.pass ? 0 : 1;
  }
  std::cout << (outcome.all_pass ? "acceptance: all criteria passed"
                                 : "acceptance: FAILURES PRESENT")
            << " (" << (outcome.criteria.size() - failures) << "/"
            << outcome.criteria.size() << ")\n";
  return failures == 0 ? 0 : 1;
}
