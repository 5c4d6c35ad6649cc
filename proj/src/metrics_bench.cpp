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
#include "adalloc/metrics_bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "adalloc/disaggregate.hpp"
#include "adalloc/io.hpp"
#include "adalloc/mps.hpp"
#include "adalloc/oracle.hpp"
#include "adalloc/predicate.hpp"
#include "adalloc/solver.hpp"

namespace adalloc {
namespace {

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

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

std::int64_t median_i64(std::vector<std::int64_t> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

BenchScenario builtin_scenario(const std::string& name) {
  BenchScenario s;
  s.name = name;
  if (name == "pooled1m") {
    s.n_subscribers = 1000000;
    s.n_campaigns = 50;
    s.predicate_pool = 10;
    s.subscriber_caps = {2};
    s.campaign_cap_min = 1000;
    s.campaign_cap_max = 50000;
  } else if (name == "small") {
    s.n_subscribers = 10000;
    s.n_campaigns = 10;
    s.predicate_pool = 5;
    s.subscriber_caps = {1, 2, 3};
    s.campaign_cap_min = 10;
    s.campaign_cap_max = 500;
  } else if (name == "worstcase") {
    // Per-subscriber arpu values are nearly unique, so predicate
    // thresholds split the base into very many groups.
    s.n_subscribers = 2000;
    s.n_campaigns = 8;
    s.predicate_pool = 64;
    s.subscriber_caps = {1, 2, 3, 4, 5, 6};
    s.campaign_cap_min = 10;
    s.campaign_cap_max = 100;
  } else {
    throw std::invalid_argument("unknown bench scenario '" + name + "'");
  }
  return s;
}

BenchReport run_bench(const BenchScenario& scenario) {
  if (scenario.repetitions < 1)
    throw std::invalid_argument("bench repetitions must be >= 1");
  BenchReport report;
  report.scenario = scenario.name;

  for (int rep = 0; rep < scenario.repetitions; ++rep) {
    SynthParams params;
    params.seed = scenario.seed;  // same instance every repetition; only timing varies
    params.n_subscribers = scenario.n_subscribers;
    params.n_campaigns = scenario.n_campaigns;
    params.predicate_pool = scenario.predicate_pool;
    params.subscriber_caps = scenario.subscriber_caps;
    params.campaign_cap_min = scenario.campaign_cap_min;
    params.campaign_cap_max = scenario.campaign_cap_max;
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
    GroupStats stats = group_stats(grouping, signatures);
    IpModel model = formulate(grouping, instance.campaigns, instance.fairness);

    BenchRow row;
    row.repetition = rep;
    row.group_count = stats.group_count;
    row.variable_count_scaled = stats.variable_count_scaled;
    row.variable_count_unscaled = stats.variable_count_unscaled;
    {
      CountingBuf counter;
      std::ostream counting(&counter);
      export_mps(model, counting);
      row.mps_size_scaled = counter.count;
    }
    {
      CountingBuf counter;
      std::ostream counting(&counter);
      export_unscaled_mps(instance, signatures, counting);
      row.mps_size_unscaled = counter.count;
    }
    auto t0 = std::chrono::steady_clock::now();
    GroupAllocation alloc = solve(model);
    row.solve_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    row.objective = format_money(alloc.objective);
    report.rows.push_back(std::move(row));
  }

  auto pluck_i = [&](auto member) {
    std::vector<std::int64_t> v;
    for (const auto& r : report.rows) v.push_back(r.*member);
    return median_i64(std::move(v));
  };
  report.median.group_count = pluck_i(&BenchRow::group_count);
  report.median.variable_count_scaled = pluck_i(&BenchRow::variable_count_scaled);
  report.median.variable_count_unscaled = pluck_i(&BenchRow::variable_count_unscaled);
  report.median.mps_size_scaled = pluck_i(&BenchRow::mps_size_scaled);
  report.median.mps_size_unscaled = pluck_i(&BenchRow::mps_size_unscaled);
  {
    std::vector<double> v;
    for (const auto& r : report.rows) v.push_back(r.solve_time_ms);
    report.median.solve_time_ms = median_of(std::move(v));
  }
  return report;
}

std::string bench_report_to_json(const BenchReport& report) {
  auto row_json = [](const BenchRow& row, bool with_rep) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", row.solve_time_ms);
    std::string out = "{";
    if (with_rep) out += "\"repetition\": " + std::to_string(row.repetition) + ", ";
    out += "\"group_count\": " + std::to_string(row.group_count) +
           ", \"variable_count_scaled\": " + std::to_string(row.variable_count_scaled) +
           ", \"variable_count_unscaled\": " +
           std::to_string(row.variable_count_unscaled) +
           ", \"mps_size_scaled\": " + std::to_string(row.mps_size_scaled) +
           ", \"mps_size_unscaled\": " + std::to_string(row.mps_size_unscaled) +
           ", \"solve_time_ms\": " + buf;
    if (!row.objective.empty()) out += ", \"objective\": \"" + row.objective + "\"";
    out += "}";
    return out;
  };
  std::string out = "{\n  \"scenario\": \"" + report.scenario + "\",\n  \"rows\": [\n";
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    out += "    " + row_json(report.rows[k], true);
    out += k + 1 < report.rows.size() ? ",\n" : "\n";
  }
  out += "  ],\n  \"median\": " + row_json(report.median, false) + "\n}\n";
  return out;
}

Instance random_small_instance(SplitMix64& rng, bool fairness) {
  static const char* kRegions[] = {"N", "S"};
  for (;;) {
    Instance instance;
    instance.schema.attributes = {{"arpu", KpiKind::kNumeric},
                                  {"region", KpiKind::kCategorical}};
    instance.fairness.enabled = fairness;
    if (fairness)
      instance.fairness.min_fill_fraction =
          static_cast<double>(rng.below(11)) / 10.0;

    std::size_t n_subs = rng.below(7);       // 0..6
    std::size_t n_camps = 1 + rng.below(4);  // 1..4
    for (std::size_t i = 0; i < n_subs; ++i) {
      Subscriber sub;
      sub.id = "s" + std::to_string(i);
      sub.frequency_cap = static_cast<std::int64_t>(rng.below(4));  // 0..3
      double arpu = static_cast<double>(rng.below(20)) / 2.0;       // 0, 0.5 .. 9.5
      auto region = static_cast<std::int32_t>(
          instance.pool.intern(kRegions[rng.below(2)]));
      sub.kpis.values = {arpu, static_cast<double>(region)};
      instance.subscribers.push_back(std::move(sub));
    }
    for (std::size_t j = 0; j < n_camps; ++j) {
      Campaign camp;
      camp.id = "c" + std::to_string(j);
      switch (rng.below(6)) {
        case 0: camp.predicate_text = "TRUE"; break;
        case 1: camp.predicate_text = "arpu >= " + std::to_string(rng.below(10)); break;
        case 2: camp.predicate_text = "arpu < " + std::to_string(1 + rng.below(9)); break;
        case 3:
          camp.predicate_text =
              "region == \"" + std::string(kRegions[rng.below(2)]) + "\"";
          break;
        case 4:
          camp.predicate_text = "arpu >= " + std::to_string(rng.below(6)) +
                                " AND region == \"" +
                                std::string(kRegions[rng.below(2)]) + "\"";
          break;
        default:
          camp.predicate_text = "NOT arpu < " + std::to_string(1 + rng.below(8));
      }
      camp.predicate = parse_predicate(camp.predicate_text, instance.schema, instance.pool);
      camp.price = parse_money(std::to_string(rng.below(6)));  // 0..5 whole units
      camp.frequency_cap = static_cast<std::int64_t>(rng.below(6));  // 0..5
      instance.campaigns.push_back(std::move(camp));
    }

    std::int64_t pairs = 0;
    for (const auto& sig : compute_signatures_serial(instance))
      pairs += static_cast<std::int64_t>(sig.popcount());
    if (pairs <= kOracleBudget) return instance;
  }
}

SynthFiles serialize_instance(const Instance& instance) {
  SynthFiles files;
  files.subscribers_csv = "id,fc";
  for (const auto& attr : instance.schema.attributes) {
    files.subscribers_csv += "," + attr.name;
    if (attr.kind == KpiKind::kCategorical) files.subscribers_csv += ":cat";
  }
  files.subscribers_csv += "\n";
  char buf[64];
  for (const auto& sub : instance.subscribers) {
    files.subscribers_csv += sub.id + "," + std::to_string(sub.frequency_cap);
    for (std::size_t a = 0; a < instance.schema.size(); ++a) {
      if (instance.schema.attributes[a].kind == KpiKind::kNumeric) {
        std::snprintf(buf, sizeof buf, "%.6g", sub.kpis.values[a]);
        files.subscribers_csv += std::string(",") + buf;
      } else {
        files.subscribers_csv += "," + instance.pool.str(sub.kpis.cat(static_cast<int>(a)));
      }
    }
    files.subscribers_csv += "\n";
  }

  files.campaigns_json = "[\n";
  for (std::size_t j = 0; j < instance.campaigns.size(); ++j) {
    const auto& camp = instance.campaigns[j];
    files.campaigns_json += "  {\"id\":\"" + camp.id + "\",\"predicate\":\"";
    for (char c : camp.predicate_text) {
      if (c == '"') files.campaigns_json += "\\\"";
      else files.campaigns_json.push_back(c);
    }
    files.campaigns_json += "\",\"price\":\"" + format_money(camp.price) +
                            "\",\"frequency_cap\":" + std::to_string(camp.frequency_cap) +
                            "}";
    files.campaigns_json += j + 1 < instance.campaigns.size() ? ",\n" : "\n";
  }
  files.campaigns_json += "]\n";
  return files;
}

IpModel drop_size_bound(const IpModel& model) {
  IpModel mutated = model;
  for (auto& var : mutated.vars)
    var.upper = std::min(mutated.group_cap[var.group],
                         mutated.campaign_cap[var.campaign]);
  return mutated;
}

PropertyReport run_property_suite(std::uint64_t seed, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  PropertyReport report;
  report.trials = trials;
  SplitMix64 rng(seed);

  auto fail = [&](const Instance& instance, const std::string& what) {
    ++report.failures;
    if (report.first_failure.empty()) {
      report.first_failure = what;
      report.counterexample = serialize_instance(instance);
    }
  };

  for (int trial = 0; trial < trials; ++trial) {
    Instance instance = random_small_instance(rng);
    auto signatures = compute_signatures_serial(instance);
    Grouping grouping = build_groups(instance, signatures);

    // Partition and signature homogeneity.
    {
      std::vector<char> seen(instance.subscribers.size(), 0);
      bool ok = true;
      auto visit = [&](const SubscriberGroup& group, bool is_null) {
        for (auto idx : group.members) {
          if (seen[idx]) ok = false;
          seen[idx] = 1;
          if (!is_null && !(signatures[idx] == group.key.signature)) ok = false;
        }
      };
      for (const auto& group : grouping.groups) visit(group, false);
      visit(grouping.null_group, true);
      for (char c : seen)
        if (!c) ok = false;
      if (!ok) fail(instance, "partition or homogeneity violated");
    }

    IpModel model = formulate(grouping, instance.campaigns, instance.fairness);

    // LP integrality and bound agreement.
    LpRelaxation relax = solve_lp_relaxation(model);
    for (double v : relax.values)
      if (std::abs(v - std::llround(v)) > 1e-6) {
        fail(instance, "LP relaxation vertex not integral");
        break;
      }
    GroupAllocation alloc = solve(model);
    if (std::llround(relax.objective) != alloc.objective)
      fail(instance, "integer optimum does not match rounded LP bound");

    // Oracle equivalence through full disaggregation.
    AllocationResult scaled = assemble(instance, grouping, model, alloc);
    AllocationResult oracle = brute_force_solve(instance);
    if (scaled.objective != oracle.objective)
      fail(instance, "scaled objective " + format_money(scaled.objective) +
                         " != oracle " + format_money(oracle.objective));

    // Disaggregation feasibility on a random plan over a random group.
    if (!grouping.groups.empty()) {
      const auto& group = grouping.groups[rng.below(grouping.groups.size())];
      GroupAssignmentPlan plan;
      for (auto idx : group.members)
        plan.capacities.push_back(instance.subscribers[idx].frequency_cap);
      std::int64_t budget = group.group_frequency_cap;
      for (int j = 0; j < 3 && budget > 0; ++j) {
        std::int64_t n = static_cast<std::int64_t>(
            rng.below(static_cast<std::uint64_t>(
                std::min<std::int64_t>(group.size(), budget) + 1)));
        if (n > 0) plan.demands.push_back({j, n});
        budget -= n;
      }
      try {
        auto ads = disaggregate_group(plan);
        std::vector<std::int64_t> used(plan.capacities.size(), 0);
        std::vector<std::int64_t> delivered(3, 0);
        for (std::size_t k = 0; k < ads.size(); ++k)
          for (int j : ads[k]) {
            ++used[k];
            ++delivered[static_cast<std::size_t>(j)];
          }
        for (std::size_t k = 0; k < used.size(); ++k)
          if (used[k] > plan.capacities[k]) fail(instance, "disaggregation exceeded a cap");
        for (const auto& [j, n] : plan.demands)
          if (delivered[static_cast<std::size_t>(j)] != n)
            fail(instance, "disaggregation lost impressions");
      } catch (const DisaggregationError& e) {
        fail(instance, std::string("greedy disaggregation failed: ") + e.what());
      }
    }

    // Monotonicity: raising one campaign cap never lowers the optimum.
    if (!instance.campaigns.empty()) {
      Instance bigger = instance;
      std::size_t j = rng.below(bigger.campaigns.size());
      bigger.campaigns[j].frequency_cap += static_cast<std::int64_t>(1 + rng.below(3));
      auto sigs2 = compute_signatures_serial(bigger);
      Grouping grouping2 = build_groups(bigger, sigs2);
      IpModel model2 = formulate(grouping2, bigger.campaigns, bigger.fairness);
      GroupAllocation alloc2 = solve(model2);
      if (alloc2.objective < alloc.objective)
        fail(instance, "raising a campaign cap lowered the optimum");
    }

    // MPS round trip.
    {
      std::ostringstream first;
      export_mps(model, first);
      std::istringstream back(first.str());
      IpModel reread = import_mps(back);
      std::ostringstream second;
      export_mps(reread, second);
      if (first.str() != second.str()) fail(instance, "MPS round trip not byte-stable");
    }
  }
  return report;
}

}  // namespace adalloc
