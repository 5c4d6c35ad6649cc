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
#include "adalloc/domain.hpp"

#include <cmath>
#include <set>
#include <unordered_set>

#include "adalloc/predicate.hpp"

namespace adalloc {

std::vector<Violation> validate_instance(const Instance& instance) {
  std::vector<Violation> out;

  std::unordered_set<std::string> names;
  for (const auto& attr : instance.schema.attributes) {
    if (attr.name.empty()) out.push_back({attr.name, "empty attribute name"});
    if (!names.insert(attr.name).second)
      out.push_back({attr.name, "duplicate attribute name"});
  }

  std::unordered_set<std::string> sub_ids;
  for (const auto& sub : instance.subscribers) {
    if (!sub_ids.insert(sub.id).second)
      out.push_back({sub.id, "duplicate subscriber id"});
    if (sub.kpis.values.size() != instance.schema.size())
      out.push_back({sub.id, "KPI vector length does not match schema"});
    if (sub.frequency_cap < 0)
      out.push_back({sub.id, "negative frequency cap"});
    for (std::size_t a = 0; a < sub.kpis.values.size() && a < instance.schema.size(); ++a) {
      if (instance.schema.attributes[a].kind == KpiKind::kNumeric &&
          !std::isfinite(sub.kpis.values[a]))
        out.push_back({sub.id, "non-finite value for attribute '" +
                                   instance.schema.attributes[a].name + "'"});
    }
  }

  std::unordered_set<std::string> camp_ids;
  for (const auto& camp : instance.campaigns) {
    if (!camp_ids.insert(camp.id).second)
      out.push_back({camp.id, "duplicate campaign id"});
    if (camp.price < 0) out.push_back({camp.id, "negative price"});
    if (camp.frequency_cap < 0) out.push_back({camp.id, "negative frequency cap"});
    if (!camp.predicate) out.push_back({camp.id, "missing targeting predicate"});
  }

  if (instance.fairness.min_fill_fraction < 0.0 || instance.fairness.min_fill_fraction > 1.0)
    out.push_back({"", "min_fill_fraction outside [0,1]"});

  return out;
}

Money objective_value(const std::map<std::string, std::int64_t>& counts,
                      const std::vector<Campaign>& campaigns) {
  Money total = 0;
  for (const auto& [id, count] : counts) {
    const Campaign* found = nullptr;
    for (const auto& camp : campaigns)
      if (camp.id == id) {
        found = &camp;
        break;
      }
    if (!found) throw std::runtime_error("unknown campaign id '" + id + "'");
    total += found->price * count;
  }
  return total;
}

std::vector<Violation> check_allocation(const Instance& instance,
                                        const AllocationResult& result) {
  std::vector<Violation> out;
  const std::size_t n_subs = instance.subscribers.size();
  const std::size_t n_camps = instance.campaigns.size();

  if (result.assignments.size() != n_subs)
    out.push_back({"", "assignment list length does not match subscriber count"});
  if (result.per_campaign_counts.size() != n_camps)
    out.push_back({"", "per-campaign count length does not match campaign count"});

  std::vector<std::int64_t> recounted(n_camps, 0);
  for (std::size_t i = 0; i < result.assignments.size() && i < n_subs; ++i) {
    const auto& sub = instance.subscribers[i];
    const auto& ads = result.assignments[i];
    if (static_cast<std::int64_t>(ads.size()) > sub.frequency_cap)
      out.push_back({sub.id, "assignment count exceeds subscriber frequency cap"});
    std::set<int> seen;
    for (int j : ads) {
      if (j < 0 || static_cast<std::size_t>(j) >= n_camps) {
        out.push_back({sub.id, "assignment references unknown campaign index"});
        continue;
      }
      if (!seen.insert(j).second)
        out.push_back({sub.id, "campaign '" + instance.campaigns[j].id + "' assigned twice"});
      if (!evaluate(*instance.campaigns[j].predicate, sub.kpis))
        out.push_back({sub.id, "assigned ineligible campaign '" + instance.campaigns[j].id + "'"});
      ++recounted[j];
    }
  }

  Money objective = 0;
  for (std::size_t j = 0; j < n_camps; ++j) {
    if (j < result.per_campaign_counts.size() && recounted[j] != result.per_campaign_counts[j])
      out.push_back({instance.campaigns[j].id, "per-campaign count does not match assignments"});
    if (recounted[j] > instance.campaigns[j].frequency_cap)
      out.push_back({instance.campaigns[j].id, "campaign frequency cap exceeded"});
    objective += instance.campaigns[j].price * recounted[j];
  }
  if (objective != result.objective)
    out.push_back({"", "objective does not equal sum of price * count"});

  return out;
}

}  // namespace adalloc
