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

#include <optional>
#include <stdexcept>
#include <vector>

#include "adalloc/domain.hpp"
#include "adalloc/signature.hpp"

namespace adalloc {

inline constexpr std::int64_t kOracleBudget = 24;  // max eligible pairs

class OracleBudgetError : public std::runtime_error {
 public:
  explicit OracleBudgetError(std::int64_t pairs)
      : std::runtime_error("instance has " + std::to_string(pairs) +
                           " eligible pairs, over the oracle budget of " +
                           std::to_string(kOracleBudget) +
                           "; use the scaled path") {}
};

class OracleInfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive search over the original subscriber-level binary program:
// every eligible x_ij in {0,1}, subscriber and campaign caps enforced, and
// (when fairness is on) per-campaign floors at subscriber level. The
// desk-scale ground truth the scaled pipeline is checked against.
//
// explicit_floors overrides the fairness-derived floors (used to restrict
// the oracle to the same floors the group model used).
AllocationResult brute_force_solve(
    const Instance& instance,
    std::optional<std::vector<std::int64_t>> explicit_floors = std::nullopt);

}  // namespace adalloc
