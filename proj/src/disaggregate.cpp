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
#include "adalloc/disaggregate.hpp"

#include <algorithm>
#include <numeric>

#include "adalloc/domain.hpp"

namespace adalloc {

std::vector<std::vector<int>> disaggregate_group(const GroupAssignmentPlan& plan) {
  const std::size_t n_members = plan.capacities.size();
  std::int64_t total_cap = 0;
  for (auto c : plan.capacities) total_cap += c;
  std::int64_t total_demand = 0;
  for (const auto& [campaign, n] : plan.demands) {
    if (n <= 0) throw DisaggregationError("non-positive demand in plan");
    if (n > static_cast<std::int64_t>(n_members))
      throw DisaggregationError("demand exceeds group size");
    total_demand += n;
  }
  if (total_demand > total_cap)
    throw DisaggregationError("total demand exceeds group frequency cap");

  std::vector<std::int64_t> remaining = plan.capacities;
  std::vector<std::vector<int>> out(n_members);
  std::vector<std::size_t> order(n_members);

  for (const auto& [campaign, n] : plan.demands) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&remaining](std::size_t a, std::size_t b) {
      return remaining[a] > remaining[b];  // ties keep roster order
    });
    for (std::int64_t k = 0; k < n; ++k) {
      std::size_t member = order[static_cast<std::size_t>(k)];
      if (remaining[member] <= 0)
        throw DisaggregationError("ran out of member capacity for campaign " +
                                  std::to_string(campaign));
      --remaining[member];
      out[member].push_back(campaign);
    }
  }
  return out;
}

AllocationResult assemble(const Instance& instance, const Grouping& grouping,
                          const IpModel& model, const GroupAllocation& alloc) {
  const std::size_t n_subs = instance.subscribers.size();
  const std::size_t n_camps = instance.campaigns.size();

  AllocationResult result;
  result.assignments.resize(n_subs);
  result.per_campaign_counts.assign(n_camps, 0);

  // Demands per group, from the solved counts.
  std::vector<std::vector<std::pair<int, std::int64_t>>> demands(grouping.groups.size());
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    if (alloc.counts[k] == 0) continue;
    demands[model.vars[k].group].push_back(
        {static_cast<int>(model.vars[k].campaign), alloc.counts[k]});
  }
  for (auto& d : demands) {
    std::sort(d.begin(), d.end(),
              [&instance](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return instance.campaigns[static_cast<std::size_t>(a.first)].id <
                       instance.campaigns[static_cast<std::size_t>(b.first)].id;
              });
  }

  // Groups are independent; each writes only its own members' slots.
  // Exceptions must not escape the parallel region, so the first error is
  // captured and rethrown afterwards.
  const std::int64_t n_groups = static_cast<std::int64_t>(grouping.groups.size());
  std::string first_error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t gi = 0; gi < n_groups; ++gi) {
    const auto& group = grouping.groups[static_cast<std::size_t>(gi)];
    if (demands[static_cast<std::size_t>(gi)].empty()) continue;
    try {
      GroupAssignmentPlan plan;
      plan.capacities.reserve(group.members.size());
      for (auto idx : group.members)
        plan.capacities.push_back(instance.subscribers[idx].frequency_cap);
      plan.demands = demands[static_cast<std::size_t>(gi)];
      auto member_ads = disaggregate_group(plan);
      for (std::size_t k = 0; k < group.members.size(); ++k)
        result.assignments[group.members[k]] = std::move(member_ads[k]);
    } catch (const std::exception& e) {
#pragma omp critical
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!first_error.empty()) throw DisaggregationError(first_error);

  for (auto& ads : result.assignments) {
    std::sort(ads.begin(), ads.end(), [&instance](int a, int b) {
      const auto& ca = instance.campaigns[static_cast<std::size_t>(a)];
      const auto& cb = instance.campaigns[static_cast<std::size_t>(b)];
      if (ca.price != cb.price) return ca.price > cb.price;
      return ca.id < cb.id;
    });
    for (int j : ads) ++result.per_campaign_counts[static_cast<std::size_t>(j)];
  }
  result.objective = 0;
  for (std::size_t j = 0; j < n_camps; ++j)
    result.objective += instance.campaigns[j].price * result.per_campaign_counts[j];

  auto violations = check_allocation(instance, result);
  if (!violations.empty())
    throw std::logic_error("assembled allocation violates invariants: " +
                           violations.front().reason);
  return result;
}

}  // namespace adalloc
