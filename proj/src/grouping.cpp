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
#include "adalloc/grouping.hpp"

#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adalloc {
namespace {

struct GroupKeyHash {
  std::size_t operator()(const GroupKey& key) const {
    return key.signature.hash() * 31 + static_cast<std::size_t>(key.cap_bucket);
  }
};

using GroupMap = std::unordered_map<GroupKey, std::vector<std::uint32_t>, GroupKeyHash>;

Grouping canonicalize(const Instance& instance, GroupMap&& map,
                      std::vector<std::uint32_t>&& null_members) {
  Grouping out;
  out.groups.reserve(map.size());
  for (auto& [key, members] : map) {
    SubscriberGroup group;
    group.key = key;
    group.members = std::move(members);
    out.groups.push_back(std::move(group));
  }
  std::sort(out.groups.begin(), out.groups.end(),
            [](const SubscriberGroup& a, const SubscriberGroup& b) {
              if (!(a.key.signature == b.key.signature))
                return a.key.signature.lex_less(b.key.signature);
              return a.key.cap_bucket < b.key.cap_bucket;
            });

  auto member_order = [&instance](std::uint32_t a, std::uint32_t b) {
    const auto& sa = instance.subscribers[a];
    const auto& sb = instance.subscribers[b];
    if (sa.frequency_cap != sb.frequency_cap) return sa.frequency_cap > sb.frequency_cap;
    return sa.id < sb.id;
  };
  for (auto& group : out.groups) {
    std::sort(group.members.begin(), group.members.end(), member_order);
    group.group_frequency_cap = 0;
    for (auto idx : group.members)
      group.group_frequency_cap += instance.subscribers[idx].frequency_cap;
  }

  std::sort(null_members.begin(), null_members.end(), member_order);
  out.null_group.members = std::move(null_members);
  out.null_group.key.signature = EligibilitySignature(instance.campaigns.size());
  for (auto idx : out.null_group.members)
    out.null_group.group_frequency_cap += instance.subscribers[idx].frequency_cap;
  return out;
}

}  // namespace

Grouping build_groups_serial(const Instance& instance,
                             const std::vector<EligibilitySignature>& signatures) {
  GroupMap map;
  std::vector<std::uint32_t> null_members;
  for (std::uint32_t i = 0; i < instance.subscribers.size(); ++i) {
    const auto& sig = signatures[i];
    std::int64_t cap = instance.subscribers[i].frequency_cap;
    if (cap == 0 || !sig.any()) {
      null_members.push_back(i);
      continue;
    }
    map[GroupKey{sig, cap}].push_back(i);
  }
  return canonicalize(instance, std::move(map), std::move(null_members));
}

Grouping build_groups(const Instance& instance,
                      const std::vector<EligibilitySignature>& signatures) {
#ifdef _OPENMP
  int n_threads = omp_get_max_threads();
#else
  int n_threads = 1;
#endif
  const std::uint32_t n = static_cast<std::uint32_t>(instance.subscribers.size());
  std::vector<GroupMap> shard_maps(static_cast<std::size_t>(n_threads));
  std::vector<std::vector<std::uint32_t>> shard_null(static_cast<std::size_t>(n_threads));

#pragma omp parallel num_threads(n_threads)
  {
#ifdef _OPENMP
    int tid = omp_get_thread_num();
#else
    int tid = 0;
#endif
    GroupMap& map = shard_maps[static_cast<std::size_t>(tid)];
    auto& nulls = shard_null[static_cast<std::size_t>(tid)];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      std::uint32_t idx = static_cast<std::uint32_t>(i);
      const auto& sig = signatures[idx];
      std::int64_t cap = instance.subscribers[idx].frequency_cap;
      if (cap == 0 || !sig.any())
        nulls.push_back(idx);
      else
        map[GroupKey{sig, cap}].push_back(idx);
    }
  }

  // Per-key merge is associative and commutative; canonical sorting below
  // makes the final result independent of the shard layout.
  GroupMap merged = std::move(shard_maps[0]);
  std::vector<std::uint32_t> null_members = std::move(shard_null[0]);
  for (std::size_t t = 1; t < shard_maps.size(); ++t) {
    for (auto& [key, members] : shard_maps[t]) {
      auto& dst = merged[key];
      dst.insert(dst.end(), members.begin(), members.end());
    }
    null_members.insert(null_members.end(), shard_null[t].begin(), shard_null[t].end());
  }
  return canonicalize(instance, std::move(merged), std::move(null_members));
}

GroupStats group_stats(const Grouping& grouping,
                       const std::vector<EligibilitySignature>& signatures) {
  GroupStats stats;
  stats.group_count = static_cast<std::int64_t>(grouping.groups.size());
  for (const auto& group : grouping.groups)
    stats.variable_count_scaled += static_cast<std::int64_t>(group.key.signature.popcount());
  for (const auto& sig : signatures)
    stats.variable_count_unscaled += static_cast<std::int64_t>(sig.popcount());
  return stats;
}

}  // namespace adalloc
