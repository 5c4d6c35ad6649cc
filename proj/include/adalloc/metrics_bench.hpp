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

#include <string>
#include <vector>

#include "adalloc/domain.hpp"
#include "adalloc/ip_model.hpp"
#include "adalloc/synth.hpp"

namespace adalloc {

struct BenchScenario {
  std::string name;
  std::int64_t n_subscribers = 10000;
  int n_campaigns = 10;
  int predicate_pool = 10;
  int repetitions = 1;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> subscriber_caps = {2};
  std::int64_t campaign_cap_min = 100;
  std::int64_t campaign_cap_max = 10000;
};

struct BenchRow {
  int repetition = 0;
  std::int64_t group_count = 0;
  std::int64_t variable_count_scaled = 0;
  std::int64_t variable_count_unscaled = 0;
  std::int64_t mps_size_scaled = 0;
  std::int64_t mps_size_unscaled = 0;
  double solve_time_ms = 0.0;
  std::string objective;
};

struct BenchReport {
  std::string scenario;
  std::vector<BenchRow> rows;
  BenchRow median;  // per-field medians over rows
};

// Known scenario names: "pooled1m" (10^6 subscribers, 50 campaigns,
// 10-predicate pool), "small", "worstcase" (every subscriber its own
// group).
BenchScenario builtin_scenario(const std::string& name);

BenchReport run_bench(const BenchScenario& scenario);
std::string bench_report_to_json(const BenchReport& report);

// Randomized small instance within the brute-force oracle budget; the
// substrate for the cross-module property suite and the acceptance tests.
Instance random_small_instance(SplitMix64& rng, bool fairness = false);

// Files equivalent to an in-memory instance, for counterexample replay.
SynthFiles serialize_instance(const Instance& instance);

struct PropertyReport {
  int trials = 0;
  int failures = 0;
  std::string first_failure;  // empty when all pass
  SynthFiles counterexample;  // replayable instance of the first failure
};

// Per trial on a random small instance: oracle equivalence, LP
// integrality, disaggregation feasibility, partition/homogeneity,
// campaign-cap monotonicity, MPS round trip.
PropertyReport run_property_suite(std::uint64_t seed, int trials);

// Mutation used to prove the property suite has teeth: relaxes every
// variable bound from min(FC, size, fcc) to min(FC, fcc), the model one
// gets by forgetting that a campaign cannot reach a group member twice.
IpModel drop_size_bound(const IpModel& model);

}  // namespace adalloc
