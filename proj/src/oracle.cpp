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
#include "adalloc/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace adalloc {
namespace {

struct Pair {
  int subscriber;
  int campaign;
};

struct Search {
  const Instance* instance;
  std::vector<Pair> pairs;
  std::vector<Money> price_suffix;                  // sum of prices from index k on
  std::vector<std::vector<std::int64_t>> camp_suffix;  // per campaign, pairs from k on
  std::vector<std::int64_t> sub_left;
  std::vector<std::int64_t> camp_left;
  std::vector<std::int64_t> camp_taken;
  std::vector<std::int64_t> floors;
  bool fairness = false;

  std::vector<char> chosen;
  Money current = 0;
  Money best = -1;
  std::vector<char> best_chosen;

  void dfs(std::size_t k) {
    const std::size_t n_camps = instance->campaigns.size();
    if (fairness) {
      for (std::size_t j = 0; j < n_camps; ++j)
        if (camp_taken[j] + camp_suffix[j][k] < floors[j]) return;  // floor unreachable
    } else if (best >= 0 && current + price_suffix[k] <= best) {
      return;  // even taking every remaining pair cannot beat the incumbent
    }
    if (k == pairs.size()) {
      if (fairness)
        for (std::size_t j = 0; j < n_camps; ++j)
          if (camp_taken[j] < floors[j]) return;
      if (current > best) {
        best = current;
        best_chosen = chosen;
      }
      return;
    }
    const Pair& p = pairs[k];
    // Take the pair first so a good incumbent appears early.
    if (sub_left[p.subscriber] > 0 && camp_left[p.campaign] > 0) {
      chosen[k] = 1;
      --sub_left[p.subscriber];
      --camp_left[p.campaign];
      ++camp_taken[p.campaign];
      current += instance->campaigns[p.campaign].price;
      dfs(k + 1);
      current -= instance->campaigns[p.campaign].price;
      --camp_taken[p.campaign];
      ++camp_left[p.campaign];
      ++sub_left[p.subscriber];
      chosen[k] = 0;
    }
    dfs(k + 1);
  }
};

}  // namespace

AllocationResult brute_force_solve(const Instance& instance,
                                   std::optional<std::vector<std::int64_t>> explicit_floors) {
  const auto signatures = compute_signatures_serial(instance);
  std::int64_t total_pairs = 0;
  for (const auto& sig : signatures)
    total_pairs += static_cast<std::int64_t>(sig.popcount());
  if (total_pairs > kOracleBudget) throw OracleBudgetError(total_pairs);

  Search search;
  search.instance = &instance;
  const std::size_t n_subs = instance.subscribers.size();
  const std::size_t n_camps = instance.campaigns.size();

  for (std::size_t i = 0; i < n_subs; ++i) {
    if (instance.subscribers[i].frequency_cap == 0) continue;
    for (std::size_t j = 0; j < n_camps; ++j)
      if (signatures[i].bit(j) && instance.campaigns[j].frequency_cap > 0)
        search.pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
  }

  const std::size_t np = search.pairs.size();
  search.price_suffix.assign(np + 1, 0);
  for (std::size_t k = np; k-- > 0;)
    search.price_suffix[k] =
        search.price_suffix[k + 1] + instance.campaigns[search.pairs[k].campaign].price;
  search.camp_suffix.assign(n_camps, std::vector<std::int64_t>(np + 1, 0));
  for (std::size_t j = 0; j < n_camps; ++j)
    for (std::size_t k = np; k-- > 0;)
      search.camp_suffix[j][k] = search.camp_suffix[j][k + 1] +
                                 (search.pairs[k].campaign == static_cast<int>(j) ? 1 : 0);

  search.sub_left.resize(n_subs);
  for (std::size_t i = 0; i < n_subs; ++i)
    search.sub_left[i] = instance.subscribers[i].frequency_cap;
  search.camp_left.resize(n_camps);
  for (std::size_t j = 0; j < n_camps; ++j)
    search.camp_left[j] = instance.campaigns[j].frequency_cap;
  search.camp_taken.assign(n_camps, 0);

  search.fairness = instance.fairness.enabled || explicit_floors.has_value();
  search.floors.assign(n_camps, 0);
  if (explicit_floors) {
    search.floors = *explicit_floors;
  } else if (instance.fairness.enabled) {
    Money p_max = 0;
    for (const auto& camp : instance.campaigns) p_max = std::max(p_max, camp.price);
    if (p_max == 0)
      throw OracleInfeasibleError("fairness enabled but every campaign price is zero");
    std::vector<std::int64_t> reachable(n_camps, 0);
    for (std::size_t i = 0; i < n_subs; ++i) {
      if (instance.subscribers[i].frequency_cap == 0) continue;
      for (std::size_t j = 0; j < n_camps; ++j)
        if (signatures[i].bit(j)) ++reachable[j];
    }
    for (std::size_t j = 0; j < n_camps; ++j) {
      long double raw = static_cast<long double>(instance.fairness.min_fill_fraction) *
                        static_cast<long double>(instance.campaigns[j].frequency_cap) *
                        static_cast<long double>(instance.campaigns[j].price) /
                        static_cast<long double>(p_max);
      search.floors[j] = std::min(static_cast<std::int64_t>(std::floor(raw + 1e-9L)),
                                  reachable[j]);
    }
  }

  search.chosen.assign(np, 0);
  search.dfs(0);

  if (search.best < 0)
    throw OracleInfeasibleError("no assignment satisfies the fairness floors");

  AllocationResult result;
  result.assignments.resize(n_subs);
  result.per_campaign_counts.assign(n_camps, 0);
  for (std::size_t k = 0; k < np; ++k) {
    if (!search.best_chosen[k]) continue;
    result.assignments[static_cast<std::size_t>(search.pairs[k].subscriber)].push_back(
        search.pairs[k].campaign);
    ++result.per_campaign_counts[static_cast<std::size_t>(search.pairs[k].campaign)];
  }
  for (auto& ads : result.assignments) {
    std::sort(ads.begin(), ads.end(), [&instance](int a, int b) {
      const auto& ca = instance.campaigns[static_cast<std::size_t>(a)];
      const auto& cb = instance.campaigns[static_cast<std::size_t>(b)];
      if (ca.price != cb.price) return ca.price > cb.price;
      return ca.id < cb.id;
    });
  }
  result.objective = search.best;
  return result;
}

}  // namespace adalloc
