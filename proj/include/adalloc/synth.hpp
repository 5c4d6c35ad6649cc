/*
 * Copyright 2026 the adalloc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adalloc {

// Deterministic instance file generator. All randomness comes from a
// hand-rolled splitmix64 stream so identical seeds yield byte-identical
// files on any platform.
struct SynthParams {
  std::uint64_t seed = 1;
  std::int64_t n_subscribers = 0;
  int n_campaigns = 0;
  // Campaign predicates are drawn from a pool of this many templates built
  // over the fixed schema (arpu, age, region); a small pool bounds the
  // number of distinct eligibility signatures.
  int predicate_pool = 10;
  std::vector<std::int64_t> subscriber_caps = {1, 2, 3};
  std::int64_t campaign_cap_min = 1;
  std::int64_t campaign_cap_max = 10;
};

struct SynthFiles {
  std::string subscribers_csv;
  std::string campaigns_json;
};

SynthFiles generate_synthetic(const SynthParams& params);

// Convenience: generate and write subscribers.csv / campaigns.json under
// out_dir. Returns the two paths.
std::pair<std::string, std::string> generate_synthetic_files(const SynthParams& params,
                                                             const std::string& out_dir);

// Minimal deterministic RNG shared by the generator and the test harness.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound) without platform-dependent distributions.
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

}  // namespace adalloc
