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

#include <stdexcept>
#include <string>
#include <vector>

#include "adalloc/ip_model.hpp"
#include "adalloc/simplex.hpp"

namespace adalloc {

// Only fairness floors can make the model infeasible (they are clamped per
// campaign but can still compete for shared supply); the message names a
// violated floor.
class InfeasibleModelError : public std::runtime_error {
 public:
  InfeasibleModelError(const std::string& what, int campaign)
      : std::runtime_error(what), campaign(campaign) {}
  int campaign;  // -1 when no single floor could be named
};

struct LpRelaxation {
  std::vector<double> values;  // aligned with IpModel::vars
  double objective = 0.0;
};

// Optimal solution of the LP relaxation (fairness rows included when the
// model carries floors). Throws InfeasibleModelError.
LpRelaxation solve_lp_relaxation(const IpModel& model);

// Exact integer optimum: LP relaxation plus branch and bound on fractional
// variables (most-fractional branching, best-bound node order). Without
// fairness rows the constraint matrix is totally unimodular and the LP
// vertex is already integral, so branching is a certified fallback. The
// incumbent is always re-verified in exact integer arithmetic.
GroupAllocation solve(const IpModel& model);

}  // namespace adalloc
