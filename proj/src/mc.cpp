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

#include "qbc3/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "qbc3/rng.hpp"

namespace qbc3 {

std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double z) {
  if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw std::invalid_argument("wilson_interval: successes outside [0, trials]");
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  double lo = std::max(0.0, center - half);
  double hi = std::min(1.0, center + half);
  return {lo, hi};
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QBC3_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

std::vector<std::uint8_t> run_bernoulli_trials(
    long long trials, std::uint64_t root_seed, int workers,
    const std::function<bool(std::uint64_t trial_seed)>& trial) {
  if (trials < 0) throw std::invalid_argument("run_bernoulli_trials: negative trials");
  std::vector<std::uint8_t> outcomes(static_cast<size_t>(trials), 0);
  int w = resolve_workers(workers);
  if (w > trials) w = trials > 0 ? static_cast<int>(trials) : 1;

  auto run_range = [&](long long begin, long long end) {
    for (long long t = begin; t < end; ++t) {
      std::uint64_t seed = SplitMix64::child_seed(root_seed, static_cast<std::uint64_t>(t));
      outcomes[static_cast<size_t>(t)] = trial(seed) ? 1 : 0;
    }
  };

  if (w <= 1) {
    run_range(0, trials);
    return outcomes;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(w));
  long long chunk = (trials + w - 1) / w;
  for (int i = 0; i < w; ++i) {
    long long begin = i * chunk;
    long long end = std::min(trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_range, begin, end);
  }
  for (auto& th : pool) th.join();
  return outcomes;
}

long long count_successes(const std::vector<std::uint8_t>& outcomes) {
  long long s = 0;
  for (auto o : outcomes) s += o;
  return s;
}

}  // namespace qbc3
