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
#include "adalloc/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adalloc/disaggregate.hpp"
#include "adalloc/io.hpp"
#include "adalloc/mps.hpp"
#include "adalloc/oracle.hpp"
#include "adalloc/solver.hpp"

namespace adalloc {
namespace {

// Counts bytes without storing them; used to measure MPS sizes that are
// never written to disk.
class CountingBuf : public std::streambuf {
 public:
  std::int64_t count = 0;

 protected:
  int overflow(int c) override {
    if (c != EOF) ++count;
    return c;
  }
  std::streamsize xsputn(const char*, std::streamsize n) override {
    count += n;
    return n;
  }
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PipelineError("emit", "cannot write " + path);
  out << body;
}

}  // namespace

Instance load_instance(const std::string& subscribers_path,
                       const std::string& campaigns_path,
                       const FairnessConfig& fairness) {
  Instance instance;
  instance.fairness = fairness;
  try {
    SubscriberFile subs = load_subscribers_file(subscribers_path, instance.pool);
    instance.schema = std::move(subs.schema);
    instance.subscribers = std::move(subs.subscribers);
  } catch (const IoError& e) {
    throw PipelineError("load-subscribers", e.what());
  }
  try {
    instance.campaigns =
        load_campaigns_file(campaigns_path, instance.schema, instance.pool);
  } catch (const IoError& e) {
    throw PipelineError("load-campaigns", e.what());
  }
  auto violations = validate_instance(instance);
  if (!violations.empty()) {
    std::string what = "instance invalid:";
    for (const auto& v : violations)
      what += "\n  " + (v.entity_id.empty() ? std::string("<instance>") : v.entity_id) +
              ": " + v.reason;
    throw PipelineError("validate", what);
  }
  return instance;
}

MetricsReport run(const RunConfig& config) {
  Instance instance =
      load_instance(config.subscribers_path, config.campaigns_path, config.fairness);

  auto signatures = compute_signatures(instance);
  Grouping grouping = build_groups(instance, signatures);
  GroupStats stats = group_stats(grouping, signatures);

  MetricsReport report;
  report.subscriber_count = static_cast<std::int64_t>(instance.subscribers.size());
  report.campaign_count = static_cast<std::int64_t>(instance.campaigns.size());
  report.group_count = stats.group_count;
  report.unscaled_variable_count = stats.variable_count_unscaled;
  report.scaled_variable_count = stats.variable_count_scaled;
  report.reduction_ratio =
      stats.variable_count_scaled > 0
          ? static_cast<double>(stats.variable_count_unscaled) /
                static_cast<double>(stats.variable_count_scaled)
          : 0.0;

  IpModel model;
  GroupAllocation group_alloc;
  AllocationResult result;
  try {
    model = formulate(grouping, instance.campaigns, instance.fairness);
    auto t0 = std::chrono::steady_clock::now();
    group_alloc = solve(model);
    report.solve_wall_time_ms = elapsed_ms(t0);
    result = assemble(instance, grouping, model, group_alloc);
  } catch (const FormulateError& e) {
    throw PipelineError("formulate", e.what());
  } catch (const InfeasibleModelError& e) {
    throw PipelineError("solve", e.what());
  } catch (const DisaggregationError& e) {
    throw PipelineError("disaggregate", e.what());
  }
  report.objective = result.objective;
  for (std::size_t j = 0; j < instance.campaigns.size(); ++j) {
    const auto& camp = instance.campaigns[j];
    double rate = camp.frequency_cap > 0
                      ? static_cast<double>(result.per_campaign_counts[j]) /
                            static_cast<double>(camp.frequency_cap)
                      : 0.0;
    report.per_campaign_fill_rates.push_back({camp.id, rate});
  }

  if (config.run_oracle) {
    try {
      report.oracle_objective = brute_force_solve(instance).objective;
    } catch (const OracleBudgetError& e) {
      throw PipelineError("oracle", e.what());
    }
    CountingBuf counter;
    std::ostream counting(&counter);
    export_unscaled_mps(instance, signatures, counting);
    report.mps_size_unscaled = counter.count;
  }

  std::filesystem::create_directories(config.output_dir);
  if (config.export_mps) {
    std::ostringstream mps;
    export_mps(model, mps);
    std::string body = mps.str();
    report.mps_size_scaled = static_cast<std::int64_t>(body.size());
    write_file(config.output_dir + "/model.mps", body);
  }

  {
    std::ostringstream body;
    write_allocations_csv(instance, result, body);
    write_file(config.output_dir + "/allocations.csv", body.str());
  }
  {
    std::ostringstream body;
    write_ranked_jsonl(instance, result, body);
    write_file(config.output_dir + "/ranked.jsonl", body.str());
  }
  write_file(config.output_dir + "/metrics.json", metrics_to_json(report));
  return report;
}

std::string metrics_to_json(const MetricsReport& report) {
  // Hand-rolled so key order and number formatting are byte-stable. Solve
  // wall time is deliberately excluded: metrics.json must be identical
  // across reruns on the same inputs.
  std::string out = "{\n";
  out += "  \"subscriber_count\": " + std::to_string(report.subscriber_count) + ",\n";
  out += "  \"campaign_count\": " + std::to_string(report.campaign_count) + ",\n";
  out += "  \"group_count\": " + std::to_string(report.group_count) + ",\n";
  out += "  \"unscaled_variable_count\": " +
         std::to_string(report.unscaled_variable_count) + ",\n";
  out += "  \"scaled_variable_count\": " + std::to_string(report.scaled_variable_count) +
         ",\n";
  out += "  \"reduction_ratio\": " + fixed6(report.reduction_ratio) + ",\n";
  out += "  \"objective\": \"" + format_money(report.objective) + "\",\n";
  out += "  \"per_campaign_fill_rates\": {";
  for (std::size_t k = 0; k < report.per_campaign_fill_rates.size(); ++k) {
    if (k) out += ",";
    out += "\n    \"" + report.per_campaign_fill_rates[k].first +
           "\": " + fixed6(report.per_campaign_fill_rates[k].second);
  }
  out += report.per_campaign_fill_rates.empty() ? "},\n" : "\n  },\n";
  if (report.oracle_objective)
    out += "  \"oracle_objective\": \"" + format_money(*report.oracle_objective) + "\",\n";
  if (report.mps_size_unscaled >= 0)
    out += "  \"mps_size_unscaled\": " + std::to_string(report.mps_size_unscaled) + ",\n";
  out += "  \"mps_size_scaled\": " +
         (report.mps_size_scaled >= 0 ? std::to_string(report.mps_size_scaled)
                                      : std::string("null")) +
         "\n";
  out += "}\n";
  return out;
}

std::vector<CompareRow> compare_scaled_unscaled(const RunConfig& config) {
  Instance instance =
      load_instance(config.subscribers_path, config.campaigns_path, config.fairness);
  auto signatures = compute_signatures(instance);
  Grouping grouping = build_groups(instance, signatures);

  std::vector<CompareRow> rows;

  {
    CompareRow row;
    row.problem_type = "scaled";
    IpModel model = formulate(grouping, instance.campaigns, instance.fairness);
    CountingBuf counter;
    std::ostream counting(&counter);
    export_mps(model, counting);
    row.mps_size_bytes = counter.count;
    auto t0 = std::chrono::steady_clock::now();
    GroupAllocation alloc = solve(model);
    row.solve_time_ms = fixed6(elapsed_ms(t0));
    row.objective = format_money(alloc.objective);
    rows.push_back(std::move(row));
  }

  {
    CompareRow row;
    row.problem_type = "unscaled";
    CountingBuf counter;
    std::ostream counting(&counter);
    std::int64_t pairs = export_unscaled_mps(instance, signatures, counting);
    row.mps_size_bytes = counter.count;
    if (config.run_oracle && pairs <= kOracleBudget) {
      auto t0 = std::chrono::steady_clock::now();
      AllocationResult result = brute_force_solve(instance);
      row.solve_time_ms = fixed6(elapsed_ms(t0));
      row.objective = format_money(result.objective);
    } else {
      row.solve_time_ms = "unsolved";
      row.objective = "";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace adalloc
