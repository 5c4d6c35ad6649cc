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

#include <optional>
#include <string>
#include <vector>

#include "adalloc/domain.hpp"
#include "adalloc/money.hpp"

namespace adalloc {

struct RunConfig {
  std::string subscribers_path;
  std::string campaigns_path;
  std::string output_dir;
  FairnessConfig fairness;
  bool export_mps = false;
  bool run_oracle = false;
};

struct MetricsReport {
  std::int64_t subscriber_count = 0;
  std::int64_t campaign_count = 0;
  std::int64_t group_count = 0;
  std::int64_t unscaled_variable_count = 0;
  std::int64_t scaled_variable_count = 0;
  double reduction_ratio = 0.0;
  Money objective = 0;
  std::vector<std::pair<std::string, double>> per_campaign_fill_rates;
  double solve_wall_time_ms = 0.0;  // reported on stdout, not serialized
  std::int64_t mps_size_scaled = -1;    // -1: not measured
  std::int64_t mps_size_unscaled = -1;
  std::optional<Money> oracle_objective;
};

class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage(stage) {}
  std::string stage;
};

// Loads subscriber and campaign files into a validated instance. Stage-
// tagged errors.
Instance load_instance(const std::string& subscribers_path,
                       const std::string& campaigns_path,
                       const FairnessConfig& fairness);

// load -> group -> formulate -> solve -> disaggregate -> emit.
// Writes allocations.csv, ranked.jsonl, metrics.json, and optionally
// model.mps under config.output_dir. All outputs are byte-deterministic.
MetricsReport run(const RunConfig& config);

// metrics.json body for a report (deterministic; excludes wall time).
std::string metrics_to_json(const MetricsReport& report);

struct CompareRow {
  std::string problem_type;  // "scaled" | "unscaled"
  std::int64_t mps_size_bytes = 0;
  std::string solve_time_ms;  // decimal or "unsolved"
  std::string objective;      // decimal or ""
};

// Table of scaled vs unscaled problem size and solve behavior. The
// unscaled row is solved by the brute-force oracle only when
// config.run_oracle is set and the instance is within the oracle budget;
// otherwise it is reported "unsolved" with its size still measured.
std::vector<CompareRow> compare_scaled_unscaled(const RunConfig& config);

}  // namespace adalloc
