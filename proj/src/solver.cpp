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
#include "adalloc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace adalloc {
namespace {

struct RowLabel {
  enum Kind { kGroup, kCampaign, kFloor } kind;
  int index;
};

LpProblem build_lp(const IpModel& model, std::vector<RowLabel>* labels) {
  LpProblem lp;
  const std::size_t n = model.vars.size();
  lp.objective.resize(n);
  lp.lower.assign(n, 0.0);
  lp.upper.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    lp.objective[k] = static_cast<double>(model.vars[k].objective);
    lp.upper[k] = static_cast<double>(model.vars[k].upper);
  }

  std::vector<LpProblem::Row> group_rows(model.n_groups());
  std::vector<LpProblem::Row> camp_rows(model.n_campaigns());
  for (std::size_t k = 0; k < n; ++k) {
    group_rows[model.vars[k].group].coeffs.push_back({static_cast<int>(k), 1.0});
    camp_rows[model.vars[k].campaign].coeffs.push_back({static_cast<int>(k), 1.0});
  }
  for (std::size_t g = 0; g < model.n_groups(); ++g) {
    group_rows[g].sense = 'L';
    group_rows[g].rhs = static_cast<double>(model.group_cap[g]);
    if (labels) labels->push_back({RowLabel::kGroup, static_cast<int>(g)});
    lp.rows.push_back(std::move(group_rows[g]));
  }
  for (std::size_t j = 0; j < model.n_campaigns(); ++j) {
    camp_rows[j].sense = 'L';
    camp_rows[j].rhs = static_cast<double>(model.campaign_cap[j]);
    if (labels) labels->push_back({RowLabel::kCampaign, static_cast<int>(j)});
    lp.rows.push_back(camp_rows[j]);
  }
  if (!model.floors.empty()) {
    for (std::size_t j = 0; j < model.n_campaigns(); ++j) {
      if (model.floors[j] < 1) continue;
      LpProblem::Row row;
      row.coeffs = lp.rows[model.n_groups() + j].coeffs;
      row.sense = 'G';
      row.rhs = static_cast<double>(model.floors[j]);
      if (labels) labels->push_back({RowLabel::kFloor, static_cast<int>(j)});
      lp.rows.push_back(std::move(row));
    }
  }
  return lp;
}

[[noreturn]] void throw_infeasible(const IpModel&, const std::vector<RowLabel>& labels,
                                   int row) {
  int campaign = -1;
  std::string what = "model infeasible";
  if (row >= 0 && static_cast<std::size_t>(row) < labels.size() &&
      labels[static_cast<std::size_t>(row)].kind == RowLabel::kFloor) {
    campaign = labels[static_cast<std::size_t>(row)].index;
    what = "model infeasible: fairness floor for campaign index " +
           std::to_string(campaign) + " cannot be met";
  }
  throw InfeasibleModelError(what, campaign);
}

// Exact feasibility + objective of a rounded LP vertex; empty counts on
// violation.
bool verify_integral(const IpModel& model, const std::vector<double>& x,
                     GroupAllocation* out) {
  GroupAllocation alloc;
  alloc.counts.resize(model.vars.size());
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    double v = x[k];
    auto r = static_cast<std::int64_t>(std::llround(v));
    if (std::abs(v - static_cast<double>(r)) > 1e-6) return false;
    alloc.counts[k] = r;
  }
  alloc.objective = 0;
  for (std::size_t k = 0; k < model.vars.size(); ++k)
    alloc.objective += model.vars[k].objective * alloc.counts[k];
  if (!check_group_allocation(model, alloc).empty()) return false;
  *out = std::move(alloc);
  return true;
}

int most_fractional(const std::vector<double>& x) {
  int best = -1;
  double best_frac = 1e-6;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double f = x[k] - std::floor(x[k]);
    double dist = std::min(f, 1.0 - f);
    if (dist > best_frac) {
      best_frac = dist;
      best = static_cast<int>(k);
    }
  }
  return best;
}

}  // namespace

LpRelaxation solve_lp_relaxation(const IpModel& model) {
  std::vector<RowLabel> labels;
  LpProblem lp = build_lp(model, &labels);
  LpResult res = solve_lp(lp);
  if (res.status == LpResult::Status::kInfeasible)
    throw_infeasible(model, labels, res.infeasible_row);
  return LpRelaxation{std::move(res.x), res.objective};
}

GroupAllocation solve(const IpModel& model) {
  std::vector<RowLabel> labels;
  LpProblem root_lp = build_lp(model, &labels);

  struct Node {
    double bound;
    long id;
    std::vector<double> lower, upper;
  };
  auto cmp = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound < b.bound;  // max-heap on bound
    return a.id > b.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);

  bool have_incumbent = false;
  GroupAllocation incumbent;
  long next_id = 0;

  LpResult root = solve_lp(root_lp);
  if (root.status == LpResult::Status::kInfeasible)
    throw_infeasible(model, labels, root.infeasible_row);

  // Safe pruning margin: all integral objectives are integer micros, and
  // the LP bound carries only relative float error.
  auto prune_threshold = [](double bound) {
    return bound + 1e-9 * std::abs(bound) + 1e-3;
  };

  {
    GroupAllocation alloc;
    if (verify_integral(model, root.x, &alloc)) {
      return alloc;  // LP vertex integral, which is the common case
    }
    open.push({root.objective, next_id++, root_lp.lower, root_lp.upper});
  }

  // Re-solve the node LP under its branching bounds when popped.
  long safety = 0;
  while (!open.empty()) {
    if (++safety > 200000)
      throw std::runtime_error("branch and bound: node limit exceeded");
    Node node = open.top();
    open.pop();
    if (have_incumbent &&
        prune_threshold(node.bound) <= static_cast<double>(incumbent.objective))
      continue;

    LpProblem lp = root_lp;
    lp.lower = node.lower;
    lp.upper = node.upper;
    LpResult res = solve_lp(lp);
    if (res.status == LpResult::Status::kInfeasible) continue;
    if (have_incumbent &&
        prune_threshold(res.objective) <= static_cast<double>(incumbent.objective))
      continue;

    GroupAllocation alloc;
    if (verify_integral(model, res.x, &alloc)) {
      if (!have_incumbent || alloc.objective > incumbent.objective) {
        incumbent = std::move(alloc);
        have_incumbent = true;
      }
      continue;
    }
    int k = most_fractional(res.x);
    if (k < 0)
      throw std::runtime_error("branch and bound: fractional vertex failed exact check");
    double v = res.x[static_cast<std::size_t>(k)];

    Node down{res.objective, next_id++, node.lower, node.upper};
    down.upper[static_cast<std::size_t>(k)] = std::floor(v);
    open.push(std::move(down));
    Node up{res.objective, next_id++, node.lower, node.upper};
    up.lower[static_cast<std::size_t>(k)] = std::ceil(v);
    open.push(std::move(up));
  }

  if (!have_incumbent)
    throw InfeasibleModelError("model infeasible: no integral solution found", -1);
  return incumbent;
}

}  // namespace adalloc
