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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adalloc/grouping.hpp"
#include "adalloc/money.hpp"

namespace adalloc {

// Group-level integer program, maximize sum of price * y over eligible
// (group, campaign) pairs subject to
//   per group g:     sum_j y_gj <= FC(g)
//   per campaign j:  sum_g y_gj <= fcc_j
//   per floor j:     sum_g y_gj >= floor_j      (fairness only)
//   per variable:    0 <= y_gj <= min(FC(g), size(g), fcc_j)
//
// The size(g) term in the variable bound is essential: x_ij is binary, so
// one campaign cannot reach a group member twice; without it the group
// optimum can exceed the true subscriber-level optimum.
struct IpVariable {
  std::uint32_t group = 0;
  std::uint32_t campaign = 0;
  std::int64_t upper = 0;
  Money objective = 0;  // price of the campaign, micros
};

struct IpModel {
  std::vector<IpVariable> vars;  // group-major, campaign-minor
  std::vector<std::int64_t> group_cap;     // FC(g)
  std::vector<std::int64_t> group_size;    // -1 when unknown (MPS import)
  std::vector<std::int64_t> campaign_cap;  // fcc_j
  std::vector<Money> price;
  std::vector<std::int64_t> floors;  // per campaign; empty when fairness off

  std::size_t n_groups() const { return group_cap.size(); }
  std::size_t n_campaigns() const { return campaign_cap.size(); }
};

struct GroupAllocation {
  std::vector<std::int64_t> counts;  // aligned with IpModel::vars
  Money objective = 0;
};

class FormulateError : public std::runtime_error {
 public:
  explicit FormulateError(const std::string& what) : std::runtime_error(what) {}
};

// Builds the group IP from the (null-group-excluded) grouping. With
// fairness enabled the per-campaign floor is
//   floor_j = min( floor(min_fill_fraction * fcc_j * p_j / p_max),
//                  reachable supply of j )
// so fairness alone can never make a single floor unreachable.
// Throws FormulateError when there are no campaigns, or when fairness is
// enabled and every price is zero.
IpModel formulate(const Grouping& grouping, const std::vector<Campaign>& campaigns,
                  const FairnessConfig& fairness);

// Independent feasibility check of a candidate allocation against the
// model, in exact integer arithmetic. Returns a description of the first
// violated row or bound, or an empty string.
std::string check_group_allocation(const IpModel& model, const GroupAllocation& alloc);

}  // namespace adalloc
