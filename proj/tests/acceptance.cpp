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
// End-to-end acceptance checks for the scaling transform. Each check prints
// one PASS/FAIL line; the process exits nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "adalloc/disaggregate.hpp"
#include "adalloc/grouping.hpp"
#include "adalloc/io.hpp"
#include "adalloc/ip_model.hpp"
#include "adalloc/metrics_bench.hpp"
#include "adalloc/mps.hpp"
#include "adalloc/oracle.hpp"
#include "adalloc/pipeline.hpp"
#include "adalloc/signature.hpp"
#include "adalloc/solver.hpp"
#include "adalloc/synth.hpp"

using namespace adalloc;

namespace {

int g_failures = 0;

void report(int index, const char* title, bool pass, const std::string& detail) {
  std::printf("[%d] %-28s %s  (%s)\n", index, title, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct ScaledSolve {
  Grouping grouping;
  IpModel model;
  GroupAllocation alloc;
  AllocationResult result;
};

ScaledSolve scaled_solve(const Instance& instance) {
  ScaledSolve s;
  auto signatures = compute_signatures_serial(instance);
  s.grouping = build_groups(instance, signatures);
  s.model = formulate(s.grouping, instance.campaigns, instance.fairness);
  s.alloc = solve(s.model);
  s.result = assemble(instance, s.grouping, s.model, s.alloc);
  return s;
}

// ------------------------------------------------------------------ 1

void check_oracle_equivalence() {
  const int kTrials = 500;
  auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(1001);
  int mismatches = 0;
  std::string first;
  for (int t = 0; t < kTrials; ++t) {
    Instance instance = random_small_instance(rng);
    Money scaled = scaled_solve(instance).result.objective;
    Money oracle = brute_force_solve(instance).objective;
    if (scaled != oracle) {
      ++mismatches;
      if (first.empty())
        first = "trial " + std::to_string(t) + ": scaled " + format_money(scaled) +
                " vs oracle " + format_money(oracle);
    }
  }
  double secs = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%d instances, %d objective mismatches, %.2fs%s%s", kTrials,
                mismatches, secs, first.empty() ? "" : "; ", first.c_str());
  report(1, "oracle equivalence", mismatches == 0 && secs < 60.0, detail);
}

// ------------------------------------------------------------------ 2

void check_lp_integrality() {
  const int kTrials = 500;
  SplitMix64 rng(2002);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    Instance instance = random_small_instance(rng);
    auto signatures = compute_signatures_serial(instance);
    Grouping grouping = build_groups(instance, signatures);
    IpModel model = formulate(grouping, instance.campaigns, instance.fairness);
    LpRelaxation lp = solve_lp_relaxation(model);
    bool ok = true;
    for (double v : lp.values) {
      double frac = std::abs(v - std::llround(v));
      worst = std::max(worst, frac);
      if (frac > 1e-6) ok = false;
    }
    if (std::llround(lp.objective) != solve(model).objective) ok = false;
    if (!ok) ++bad;
  }
  char detail[128];
  std::snprintf(detail, sizeof detail,
                "%d models, %d violations, max fractional part %.2e", kTrials, bad,
                worst);
  report(2, "LP integrality", bad == 0, detail);
}

// ------------------------------------------------------------------ 3

void check_disaggregation_feasibility() {
  const int kTrials = 10000;
  SplitMix64 rng(3003);
  int failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    std::size_t size = 1 + rng.below(8);
    std::int64_t cap = static_cast<std::int64_t>(1 + rng.below(3));  // spread 0
    GroupAssignmentPlan plan;
    plan.capacities.assign(size, cap);
    std::int64_t supply = cap * static_cast<std::int64_t>(size);
    std::size_t n_camps = 1 + rng.below(5);
    std::int64_t used = 0;
    for (std::size_t j = 0; j < n_camps && used < supply; ++j) {
      std::int64_t max_n = std::min<std::int64_t>(static_cast<std::int64_t>(size),
                                                  supply - used);
      std::int64_t n = static_cast<std::int64_t>(
          rng.below(static_cast<std::uint64_t>(max_n) + 1));
      if (n == 0) continue;
      plan.demands.push_back({static_cast<int>(j), n});
      used += n;
    }
    std::sort(plan.demands.begin(), plan.demands.end(),
              [](const auto& a, const auto& b) {
                return a.second != b.second ? a.second > b.second : a.first < b.first;
              });
    try {
      auto assignment = disaggregate_group(plan);
      // Independent checks: caps, conservation, distinctness.
      std::map<int, std::int64_t> served;
      bool ok = assignment.size() == size;
      for (std::size_t m = 0; ok && m < assignment.size(); ++m) {
        if (static_cast<std::int64_t>(assignment[m].size()) > cap) ok = false;
        std::vector<int> sorted = assignment[m];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) ok = false;
        for (int j : assignment[m]) ++served[j];
      }
      for (const auto& [j, n] : plan.demands)
        if (served[j] != n) ok = false;
      if (!ok) ++failures;
    } catch (const DisaggregationError&) {
      ++failures;  // the greedy must never fail on a feasible plan
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d random feasible plans, %d failures",
                kTrials, failures);
  report(3, "disaggregation feasibility", failures == 0, detail);
}

// ------------------------------------------------------------------ 4

void check_partition_homogeneity() {
  bool pass = true;
  std::string detail;
  for (std::int64_t n : {std::int64_t{0}, std::int64_t{1}, std::int64_t{1000},
                         std::int64_t{100000}}) {
    SynthParams params;
    params.seed = 4004 + static_cast<std::uint64_t>(n);
    params.n_subscribers = n;
    params.n_campaigns = 20;
    SynthFiles files = generate_synthetic(params);
    Instance instance;
    {
      std::istringstream subs(files.subscribers_csv);
      SubscriberFile loaded = load_subscribers(subs, instance.pool);
      instance.schema = std::move(loaded.schema);
      instance.subscribers = std::move(loaded.subscribers);
      std::istringstream camps(files.campaigns_json);
      instance.campaigns = load_campaigns(camps, instance.schema, instance.pool);
    }
    auto signatures = compute_signatures(instance);
    Grouping grouping = build_groups(instance, signatures);

    std::vector<char> seen(instance.subscribers.size(), 0);
    auto visit = [&](const SubscriberGroup& group, bool null_group) {
      std::int64_t cap_sum = 0;
      for (std::uint32_t i : group.members) {
        if (seen[i]) pass = false;  // disjointness
        seen[i] = 1;
        cap_sum += instance.subscribers[i].frequency_cap;
        if (!null_group) {
          // Homogeneity: recomputed signature matches the group key.
          auto sig = eligibility_signature(instance.subscribers[i], instance.campaigns);
          if (!(sig == group.key.signature)) pass = false;
          if (instance.subscribers[i].frequency_cap != group.key.cap_bucket)
            pass = false;
        }
      }
      if (!null_group && cap_sum != group.group_frequency_cap) pass = false;
    };
    for (const auto& group : grouping.groups) visit(group, false);
    visit(grouping.null_group, true);
    for (char s : seen)
      if (!s) pass = false;  // coverage
    detail += (detail.empty() ? "n=" : ",") + std::to_string(n);
  }
  report(4, "partition and homogeneity", pass, detail + " all verified");
}

// ------------------------------------------------------------------ 5

void check_reduction_trend() {
  BenchScenario scenario = builtin_scenario("pooled1m");
  scenario.repetitions = 1;
  BenchReport bench = run_bench(scenario);
  const BenchRow& row = bench.rows[0];
  bool vars_ok = row.variable_count_scaled <= (1 << 10) * 50;
  double size_ratio = static_cast<double>(row.mps_size_unscaled) /
                      static_cast<double>(row.mps_size_scaled);
  bool size_ok = size_ratio >= 100.0;
  bool time_ok = row.solve_time_ms < 1000.0;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "1e6 subscribers: %lld scaled vars (limit 51200), size ratio %.0fx "
                "(limit 100x), solve %.1fms (limit 1000ms)",
                static_cast<long long>(row.variable_count_scaled), size_ratio,
                row.solve_time_ms);
  report(5, "reduction trend", vars_ok && size_ok && time_ok, detail);
}

// ------------------------------------------------------------------ 6

void check_fairness_sandwich() {
  const int kTrials = 500;
  SplitMix64 rng(6006);
  int violations = 0;
  int infeasible = 0;
  int rejected = 0;  // all-zero prices: fairness is undefined and refused
  std::string first;
  auto note = [&](int t, const std::string& what) {
    ++violations;
    if (first.empty()) first = "trial " + std::to_string(t) + ": " + what;
  };
  for (int t = 0; t < kTrials; ++t) {
    Instance instance = random_small_instance(rng, /*fairness=*/true);

    Instance relaxed = instance;
    relaxed.fairness = FairnessConfig{};
    Money unconstrained = scaled_solve(relaxed).result.objective;

    try {
      ScaledSolve fair;
      try {
        fair = scaled_solve(instance);
      } catch (const FormulateError&) {
        ++rejected;
        continue;
      }
      if (fair.result.objective > unconstrained)
        note(t, "fairness objective exceeds the unconstrained objective");
      std::vector<std::int64_t> per_campaign(instance.campaigns.size(), 0);
      for (std::size_t k = 0; k < fair.model.vars.size(); ++k)
        per_campaign[fair.model.vars[k].campaign] += fair.alloc.counts[k];
      for (std::size_t j = 0; j < fair.model.floors.size(); ++j)
        if (per_campaign[j] < fair.model.floors[j])
          note(t, "campaign below its clamped floor");
      // Sandwich: at least the best floor-respecting unscaled solution, at
      // most the unconstrained unscaled optimum.
      try {
        Money floored = brute_force_solve(instance, fair.model.floors).objective;
        if (fair.result.objective < floored)
          note(t, "fairness objective below the floored oracle");
      } catch (const OracleInfeasibleError&) {
        note(t, "solver found a solution where the oracle finds none");
      }
      Money free_best = brute_force_solve(relaxed).objective;
      if (fair.result.objective > free_best)
        note(t, "fairness objective above the unconstrained oracle");
    } catch (const InfeasibleModelError&) {
      ++infeasible;
      // Only genuine infeasibility is acceptable: the oracle must agree.
      try {
        Instance probe = instance;
        auto signatures = compute_signatures_serial(probe);
        Grouping grouping = build_groups(probe, signatures);
        IpModel model = formulate(grouping, probe.campaigns, probe.fairness);
        brute_force_solve(probe, model.floors);
        note(t, "solver reported infeasible but the oracle found a solution");
      } catch (const OracleInfeasibleError&) {
        // agreed: genuinely infeasible
      }
    }
  }
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "%d instances, %d violations, %d genuinely infeasible, %d rejected "
                "(zero prices)%s%s",
                kTrials, violations, infeasible, rejected,
                first.empty() ? "" : "; ", first.c_str());
  report(6, "fairness sandwich", violations == 0, detail);
}

// ------------------------------------------------------------------ 7

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void check_determinism() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "adalloc_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  SynthParams params;
  params.seed = 7007;
  params.n_subscribers = 2000;
  params.n_campaigns = 15;
  generate_synthetic_files(params, dir.string());

  RunConfig config;
  config.subscribers_path = (dir / "subscribers.csv").string();
  config.campaigns_path = (dir / "campaigns.json").string();
  config.export_mps = true;

  config.output_dir = (dir / "a").string();
  run(config);
  config.output_dir = (dir / "b").string();
  run(config);

  int diffs = 0;
  for (const char* name :
       {"allocations.csv", "ranked.jsonl", "metrics.json", "model.mps"})
    if (slurp(dir / "a" / name) != slurp(dir / "b" / name)) ++diffs;
  fs::remove_all(dir);
  char detail[96];
  std::snprintf(detail, sizeof detail, "4 output files compared, %d differ", diffs);
  report(7, "byte determinism", diffs == 0, detail);
}

// ------------------------------------------------------------------ 8

void check_mps_round_trip() {
  const int kModels = 100;
  SplitMix64 rng(8008);
  int unstable = 0;
  for (int t = 0; t < kModels; ++t) {
    // Alternate fairness on/off so floor rows are exercised too.
    Instance instance = random_small_instance(rng, /*fairness=*/t % 2 == 1);
    auto signatures = compute_signatures_serial(instance);
    Grouping grouping = build_groups(instance, signatures);
    IpModel model;
    try {
      model = formulate(grouping, instance.campaigns, instance.fairness);
    } catch (const FormulateError&) {
      model = IpModel{};  // zero-price fairness rejection: export the empty model
    }
    std::ostringstream first;
    export_mps(model, first);
    std::istringstream in(first.str());
    std::ostringstream second;
    export_mps(import_mps(in), second);
    if (first.str() != second.str()) ++unstable;
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d models exported twice, %d unstable",
                kModels, unstable);
  report(8, "MPS round trip", unstable == 0, detail);
}

// ------------------------------------------------------------------ 9

void check_mutation_sensitivity() {
  const int kTrials = 500;
  SplitMix64 rng(1001);  // same stream shape as the equivalence check
  int divergences = 0;
  int first_trial = -1;
  for (int t = 0; t < kTrials; ++t) {
    Instance instance = random_small_instance(rng);
    auto signatures = compute_signatures_serial(instance);
    Grouping grouping = build_groups(instance, signatures);
    IpModel model = formulate(grouping, instance.campaigns, instance.fairness);
    IpModel mutated = drop_size_bound(model);
    Money mutated_obj = solve(mutated).objective;
    Money oracle = brute_force_solve(instance).objective;
    if (mutated_obj != oracle) {
      ++divergences;
      if (first_trial < 0) first_trial = t;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "without the group-size bound: %d/%d objectives diverge from the "
                "oracle (first at trial %d)",
                divergences, kTrials, first_trial);
  report(9, "mutation sensitivity", divergences > 0, detail);
}

}  // namespace

int main() {
  check_oracle_equivalence();
  check_lp_integrality();
  check_disaggregation_feasibility();
  check_partition_homogeneity();
  check_reduction_trend();
  check_fairness_sandwich();
  check_determinism();
  check_mps_round_trip();
  check_mutation_sensitivity();
  if (g_failures) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}
