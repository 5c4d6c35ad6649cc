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
#include <utility>
#include <vector>

#include "adalloc/grouping.hpp"
#include "adalloc/ip_model.hpp"

namespace adalloc {

// One group's share of the solved IP: per-campaign impression demands to be
// spread over the member roster. capacities[k] is member k's frequency cap,
// roster order (descending cap, ties by id). demands are processed in the
// given order; callers sort them descending by n_j, ties by campaign id.
struct GroupAssignmentPlan {
  std::vector<std::int64_t> capacities;
  std::vector<std::pair<int, std::int64_t>> demands;  // (campaign, n_j > 0)
};

class DisaggregationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Greedy expansion: each campaign goes to the n_j members with the highest
// remaining capacity (ties by roster order). With intra-group cap spread
// <= 1 and n_j <= size, sum n_j <= FC(G), this never fails. Returns per-
// member campaign lists aligned with capacities. Throws DisaggregationError
// on an infeasible plan (unreachable for solver-produced plans).
std::vector<std::vector<int>> disaggregate_group(const GroupAssignmentPlan& plan);

// Expands every group of the solved model and assembles the subscriber-
// level result: assignments ranked descending by price (ties by campaign
// id), recomputed counts and objective. Null-group subscribers get empty
// lists. Throws std::logic_error if the assembled result violates any
// allocation invariant, which would indicate a solver or disaggregation
// bug.
AllocationResult assemble(const Instance& instance, const Grouping& grouping,
                          const IpModel& model, const GroupAllocation& alloc);

}  // namespace adalloc
