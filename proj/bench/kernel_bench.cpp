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
// Compares the OpenMP kernels against their serial reference
// implementations: eligibility-signature computation, signature grouping,
// and per-group disaggregation. Also cross-checks that parallel and serial
// results agree, so the benchmark doubles as a smoke test.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "adalloc/disaggregate.hpp"
#include "adalloc/grouping.hpp"
#include "adalloc/io.hpp"
#include "adalloc/ip_model.hpp"
#include "adalloc/signature.hpp"
#include "adalloc/solver.hpp"
#include "adalloc/synth.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t n_subscribers = 500000;
  int reps = 3;
  if (argc > 1) n_subscribers = std::atoll(argv[1]);
  if (argc > 2) reps = std::atoi(argv[2]);

  adalloc::SynthParams params;
  params.seed = 42;
  params.n_subscribers = n_subscribers;
  params.n_campaigns = 50;
  params.predicate_pool = 10;
  params.subscriber_caps = {1, 2, 3};
  params.campaign_cap_min = 1000;
  params.campaign_cap_max = 50000;
  adalloc::SynthFiles files = adalloc::generate_synthetic(params);

  adalloc::Instance instance;
  {
    std::istringstream subs(files.subscribers_csv);
    adalloc::SubscriberFile loaded = adalloc::load_subscribers(subs, instance.pool);
    instance.schema = std::move(loaded.schema);
    instance.subscribers = std::move(loaded.subscribers);
    std::istringstream camps(files.campaigns_json);
    instance.campaigns = adalloc::load_campaigns(camps, instance.schema, instance.pool);
  }
  std::printf("instance: %zu subscribers, %zu campaigns, %d reps (best-of)\n",
              instance.subscribers.size(), instance.campaigns.size(), reps);

  std::vector<adalloc::EligibilitySignature> serial_sigs, parallel_sigs;
  double t_sig_serial =
      best_of(reps, [&] { serial_sigs = adalloc::compute_signatures_serial(instance); });
  double t_sig_parallel =
      best_of(reps, [&] { parallel_sigs = adalloc::compute_signatures(instance); });
  if (serial_sigs != parallel_sigs) {
    std::fprintf(stderr, "FAIL: signature kernels disagree\n");
    return 1;
  }
  std::printf("signatures     serial %10.2f ms   parallel %10.2f ms   (%.2fx)\n",
              t_sig_serial, t_sig_parallel, t_sig_serial / t_sig_parallel);

  adalloc::Grouping serial_groups, parallel_groups;
  double t_grp_serial = best_of(
      reps, [&] { serial_groups = adalloc::build_groups_serial(instance, serial_sigs); });
  double t_grp_parallel = best_of(
      reps, [&] { parallel_groups = adalloc::build_groups(instance, parallel_sigs); });
  bool groups_equal = serial_groups.groups.size() == parallel_groups.groups.size() &&
                      serial_groups.null_group.members == parallel_groups.null_group.members;
  for (std::size_t g = 0; groups_equal && g < serial_groups.groups.size(); ++g)
    groups_equal = serial_groups.groups[g].members == parallel_groups.groups[g].members &&
                   serial_groups.groups[g].group_frequency_cap ==
                       parallel_groups.groups[g].group_frequency_cap;
  if (!groups_equal) {
    std::fprintf(stderr, "FAIL: grouping kernels disagree\n");
    return 1;
  }
  std::printf("grouping       serial %10.2f ms   parallel %10.2f ms   (%.2fx)\n",
              t_grp_serial, t_grp_parallel, t_grp_serial / t_grp_parallel);

  adalloc::IpModel model =
      adalloc::formulate(parallel_groups, instance.campaigns, instance.fairness);
  adalloc::GroupAllocation alloc = adalloc::solve(model);
  std::printf("model: %zu groups, %zu variables, objective %s\n",
              parallel_groups.groups.size(), model.vars.size(),
              adalloc::format_money(alloc.objective).c_str());

  adalloc::AllocationResult result;
  double t_disagg = best_of(reps, [&] {
    result = adalloc::assemble(instance, parallel_groups, model, alloc);
  });
  std::printf("disaggregation (parallel, incl. final checks) %10.2f ms\n", t_disagg);
  if (result.objective != alloc.objective) {
    std::fprintf(stderr, "FAIL: disaggregated objective mismatch\n");
    return 1;
  }
  std::printf("ok\n");
  return 0;
}
