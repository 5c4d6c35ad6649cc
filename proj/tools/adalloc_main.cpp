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
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adalloc/metrics_bench.hpp"
#include "adalloc/pipeline.hpp"
#include "adalloc/synth.hpp"

namespace {

struct CommonOpts {
  std::string subscribers;
  std::string campaigns;
  bool fairness = false;
  double min_fill = 0.5;
};

void add_instance_opts(CLI::App* cmd, CommonOpts* opts, bool need_files = true) {
  auto* s = cmd->add_option("--subscribers", opts->subscribers, "subscribers.csv path");
  auto* c = cmd->add_option("--campaigns", opts->campaigns, "campaigns.json path");
  if (need_files) {
    s->required()->check(CLI::ExistingFile);
    c->required()->check(CLI::ExistingFile);
  }
  cmd->add_flag("--fairness", opts->fairness, "enable price-proportional fairness floors");
  cmd->add_option("--min-fill", opts->min_fill,
                  "fairness floor strength in [0,1] (default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
}

adalloc::FairnessConfig fairness_of(const CommonOpts& opts) {
  adalloc::FairnessConfig f;
  f.enabled = opts.fairness;
  f.min_fill_fraction = opts.min_fill;
  return f;
}

int cmd_run(const CommonOpts& opts, const std::string& out_dir, bool export_mps,
            bool oracle) {
  adalloc::RunConfig config;
  config.subscribers_path = opts.subscribers;
  config.campaigns_path = opts.campaigns;
  config.output_dir = out_dir;
  config.fairness = fairness_of(opts);
  config.export_mps = export_mps;
  config.run_oracle = oracle;

  adalloc::MetricsReport report = adalloc::run(config);
  std::printf("subscribers=%lld campaigns=%lld groups=%lld\n",
              static_cast<long long>(report.subscriber_count),
              static_cast<long long>(report.campaign_count),
              static_cast<long long>(report.group_count));
  std::printf("variables: unscaled=%lld scaled=%lld (reduction %.1fx)\n",
              static_cast<long long>(report.unscaled_variable_count),
              static_cast<long long>(report.scaled_variable_count),
              report.reduction_ratio);
  std::printf("objective=%s solve_time=%.3fms\n",
              adalloc::format_money(report.objective).c_str(),
              report.solve_wall_time_ms);
  if (report.oracle_objective)
    std::printf("oracle_objective=%s\n",
                adalloc::format_money(*report.oracle_objective).c_str());
  std::printf("outputs written to %s\n", out_dir.c_str());
  return 0;
}

int cmd_validate(const CommonOpts& opts) {
  adalloc::Instance instance = adalloc::load_instance(
      opts.subscribers, opts.campaigns, fairness_of(opts));
  // load_instance throws on any violation; reaching here means clean.
  std::printf("OK: %zu subscribers, %zu campaigns\n", instance.subscribers.size(),
              instance.campaigns.size());
  return 0;
}

int cmd_compare(const CommonOpts& opts, bool oracle) {
  adalloc::RunConfig config;
  config.subscribers_path = opts.subscribers;
  config.campaigns_path = opts.campaigns;
  config.fairness = fairness_of(opts);
  config.run_oracle = oracle;
  auto rows = adalloc::compare_scaled_unscaled(config);
  std::string out = "[\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out += "  {\"problem_type\": \"" + rows[k].problem_type +
           "\", \"mps_size_bytes\": " + std::to_string(rows[k].mps_size_bytes) +
           ", \"solve_time_ms\": \"" + rows[k].solve_time_ms + "\", \"objective\": \"" +
           rows[k].objective + "\"}";
    out += k + 1 < rows.size() ? ",\n" : "\n";
  }
  out += "]\n";
  std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_gen(const std::string& out_dir, std::uint64_t seed, std::int64_t n_subs,
            int n_camps, int pool) {
  adalloc::SynthParams params;
  params.seed = seed;
  params.n_subscribers = n_subs;
  params.n_campaigns = n_camps;
  params.predicate_pool = pool;
  auto [sub_path, camp_path] = adalloc::generate_synthetic_files(params, out_dir);
  std::printf("wrote %s and %s\n", sub_path.c_str(), camp_path.c_str());
  return 0;
}

adalloc::BenchScenario scenario_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  adalloc::BenchScenario s;
  s.name = doc.value("name", path);
  s.n_subscribers = doc.value("n_subscribers", s.n_subscribers);
  s.n_campaigns = doc.value("n_campaigns", s.n_campaigns);
  s.predicate_pool = doc.value("predicate_pool", s.predicate_pool);
  s.repetitions = doc.value("repetitions", s.repetitions);
  s.seed = doc.value("seed", s.seed);
  if (doc.contains("subscriber_caps"))
    s.subscriber_caps = doc["subscriber_caps"].get<std::vector<std::int64_t>>();
  s.campaign_cap_min = doc.value("campaign_cap_min", s.campaign_cap_min);
  s.campaign_cap_max = doc.value("campaign_cap_max", s.campaign_cap_max);
  return s;
}

int cmd_bench(const std::string& scenario_arg, int trials, std::uint64_t seed,
              int property_trials) {
  if (property_trials > 0) {
    adalloc::PropertyReport report =
        adalloc::run_property_suite(seed, property_trials);
    std::printf("{\"trials\": %d, \"failures\": %d", report.trials, report.failures);
    if (!report.first_failure.empty()) {
      std::printf(", \"first_failure\": \"%s\"", report.first_failure.c_str());
      std::fprintf(stderr, "counterexample subscribers.csv:\n%s\n",
                   report.counterexample.subscribers_csv.c_str());
      std::fprintf(stderr, "counterexample campaigns.json:\n%s\n",
                   report.counterexample.campaigns_json.c_str());
    }
    std::printf("}\n");
    return report.failures == 0 ? 0 : 1;
  }

  adalloc::BenchScenario scenario;
  if (scenario_arg.size() > 5 &&
      scenario_arg.substr(scenario_arg.size() - 5) == ".json")
    scenario = scenario_from_file(scenario_arg);
  else
    scenario = adalloc::builtin_scenario(scenario_arg);
  if (trials > 0) scenario.repetitions = trials;
  scenario.seed = seed;
  adalloc::BenchReport report = adalloc::run_bench(scenario);
  std::fputs(adalloc::bench_report_to_json(report).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constrained fair ad-allocation engine"};
  app.require_subcommand(1);

  CommonOpts run_opts, validate_opts, compare_opts;
  std::string run_out = "out";
  bool run_export_mps = false, run_oracle = false, compare_oracle = false;

  auto* run_cmd = app.add_subcommand("run", "allocate and emit outputs");
  add_instance_opts(run_cmd, &run_opts);
  run_cmd->add_option("--out", run_out, "output directory (default ./out)");
  run_cmd->add_flag("--export-mps", run_export_mps, "also write model.mps");
  run_cmd->add_flag("--oracle", run_oracle,
                    "also run the brute-force oracle (small instances only)");

  auto* validate_cmd = app.add_subcommand("validate", "check instance files");
  add_instance_opts(validate_cmd, &validate_opts);

  auto* compare_cmd = app.add_subcommand("compare", "scaled vs unscaled problem sizes");
  add_instance_opts(compare_cmd, &compare_opts);
  compare_cmd->add_flag("--oracle", compare_oracle,
                        "solve the unscaled problem when within the oracle budget");

  std::string gen_out = "data";
  std::uint64_t gen_seed = 1;
  std::int64_t gen_subs = 1000;
  int gen_camps = 10, gen_pool = 10;
  auto* gen_cmd = app.add_subcommand("gen", "generate synthetic instance files");
  gen_cmd->add_option("--out", gen_out, "output directory");
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--n-subscribers", gen_subs, "subscriber count")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--n-campaigns", gen_camps, "campaign count")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--pool", gen_pool, "predicate pool size");

  std::string bench_scenario = "small";
  int bench_trials = 0, bench_property_trials = 0;
  std::uint64_t bench_seed = 1;
  auto* bench_cmd = app.add_subcommand("bench", "benchmark and property harness");
  bench_cmd->add_option("--scenario", bench_scenario,
                        "builtin name (pooled1m, small, worstcase) or JSON file");
  bench_cmd->add_option("--trials", bench_trials, "repetitions override");
  bench_cmd->add_option("--seed", bench_seed, "scenario seed");
  bench_cmd->add_option("--properties", bench_property_trials,
                        "run the cross-module property suite for N trials instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed())
      return cmd_run(run_opts, run_out, run_export_mps, run_oracle);
    if (validate_cmd->parsed()) return cmd_validate(validate_opts);
    if (compare_cmd->parsed()) return cmd_compare(compare_opts, compare_oracle);
    if (gen_cmd->parsed())
      return cmd_gen(gen_out, gen_seed, gen_subs, gen_camps, gen_pool);
    if (bench_cmd->parsed())
      return cmd_bench(bench_scenario, bench_trials, bench_seed, bench_property_trials);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
