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

#ifndef QBC3_MC_HPP
#define QBC3_MC_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace qbc3 {

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double z = 1.96);

// Resolves the worker count: explicit request, else QBC3_WORKERS, else 1.
int resolve_workers(int requested);

// Runs `trials` independent Bernoulli experiments. Trial t receives the
// child seed SplitMix64::child_seed(root_seed, t); results come back indexed
// by trial, so the outcome is identical for any worker count.
std::vector<std::uint8_t> run_bernoulli_trials(
    long long trials, std::uint64_t root_seed, int workers,
    const std::function<bool(std::uint64_t trial_seed)>& trial);

long long count_successes(const std::vector<std::uint8_t>& outcomes);

}  // namespace qbc3

#endif  // QBC3_MC_HPP
