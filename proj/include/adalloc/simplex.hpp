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

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace adalloc {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

// Maximization LP with bounded variables and L/G rows, all rhs >= 0.
struct LpProblem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;  // may be kLpInfinity

  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    char sense = 'L';  // 'L': <= rhs, 'G': >= rhs
    double rhs = 0.0;
  };
  std::vector<Row> rows;

  std::size_t n_vars() const { return objective.size(); }
};

struct LpResult {
  enum class Status { kOptimal, kInfeasible };
  Status status = Status::kOptimal;
  std::vector<double> x;
  double objective = 0.0;
  // When infeasible: the G row phase 1 could not satisfy (most violated).
  int infeasible_row = -1;
};

// Two-phase bounded-variable revised simplex. Dantzig pricing with
// lowest-index tie-breaks; falls back to Bland's rule after a run of
// degenerate pivots, so the pivot sequence is deterministic and finite.
LpResult solve_lp(const LpProblem& problem);

}  // namespace adalloc
