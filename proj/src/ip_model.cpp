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
#include "adalloc/ip_model.hpp"

#include <algorithm>
#include <cmath>

namespace adalloc {

IpModel formulate(const Grouping& grouping, const std::vector<Campaign>& campaigns,
                  const FairnessConfig& fairness) {
  if (campaigns.empty()) throw FormulateError("cannot formulate: no campaigns");

  IpModel model;
  const std::size_t n_groups = grouping.groups.size();
  const std::size_t n_camps = campaigns.size();
  model.group_cap.resize(n_groups);
  model.group_size.resize(n_groups);
  model.campaign_cap.resize(n_camps);
  model.price.resize(n_camps);
  for (std::size_t j = 0; j < n_camps; ++j) {
    model.campaign_cap[j] = campaigns[j].frequency_cap;
    model.price[j] = campaigns[j].price;
  }

  for (std::size_t g = 0; g < n_groups; ++g) {
    const auto& group = grouping.groups[g];
    model.group_cap[g] = group.group_frequency_cap;
    model.group_size[g] = group.size();
    for (std::size_t j = 0; j < n_camps; ++j) {
      if (!group.key.signature.bit(j)) continue;
      IpVariable var;
      var.group = static_cast<std::uint32_t>(g);
      var.campaign = static_cast<std::uint32_t>(j);
      var.upper = std::min({group.group_frequency_cap, group.size(),
                            campaigns[j].frequency_cap});
      var.objective = campaigns[j].price;
      model.vars.push_back(var);
    }
  }

  if (fairness.enabled) {
    Money p_max = 0;
    for (const auto& camp : campaigns) p_max = std::max(p_max, camp.price);
    if (p_max == 0)
      throw FormulateError("fairness enabled but every campaign price is zero");

    std::vector<std::int64_t> reachable(n_camps, 0);
    for (std::size_t g = 0; g < n_groups; ++g) {
      const auto& group = grouping.groups[g];
      for (std::size_t j = 0; j < n_camps; ++j)
        if (group.key.signature.bit(j))
          reachable[j] += std::min(group.group_frequency_cap, group.size());
    }

    model.floors.resize(n_camps, 0);
    for (std::size_t j = 0; j < n_camps; ++j) {
      long double raw = static_cast<long double>(fairness.min_fill_fraction) *
                        static_cast<long double>(campaigns[j].frequency_cap) *
                        static_cast<long double>(campaigns[j].price) /
                        static_cast<long double>(p_max);
      auto floor_j = static_cast<std::int64_t>(std::floor(raw + 1e-9L));
      model.floors[j] = std::min(floor_j, reachable[j]);
    }
  }

  return model;
}

std::string check_group_allocation(const IpModel& model, const GroupAllocation& alloc) {
  if (alloc.counts.size() != model.vars.size())
    return "count vector length does not match variable count";

  std::vector<std::int64_t> group_sum(model.n_groups(), 0);
  std::vector<std::int64_t> camp_sum(model.n_campaigns(), 0);
  Money objective = 0;
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    const auto& var = model.vars[k];
    std::int64_t y = alloc.counts[k];
    if (y < 0) return "negative count for variable " + std::to_string(k);
    if (y > var.upper)
      return "variable " + std::to_string(k) + " exceeds its upper bound";
    group_sum[var.group] += y;
    camp_sum[var.campaign] += y;
    objective += var.objective * y;
  }
  for (std::size_t g = 0; g < model.n_groups(); ++g)
    if (group_sum[g] > model.group_cap[g])
      return "group row " + std::to_string(g) + " violated";
  for (std::size_t j = 0; j < model.n_campaigns(); ++j)
    if (camp_sum[j] > model.campaign_cap[j])
      return "campaign row " + std::to_string(j) + " violated";
  if (!model.floors.empty())
    for (std::size_t j = 0; j < model.n_campaigns(); ++j)
      if (camp_sum[j] < model.floors[j])
        return "fairness floor for campaign row " + std::to_string(j) + " violated";
  if (objective != alloc.objective)
    return "objective mismatch";
  return "";
}

}  // namespace adalloc
