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
#include <vector>

#include "adalloc/signature.hpp"

namespace adalloc {

// The scaling transform: subscribers sharing an eligibility signature and a
// frequency-cap value form one group. Exact-value cap bucketing keeps the
// intra-group cap spread at 0, within the allowed spread of 1, and makes
// greedy disaggregation provably feasible.
struct GroupKey {
  EligibilitySignature signature;
  std::int64_t cap_bucket = 0;  // the shared frequency-cap value

  bool operator==(const GroupKey& other) const {
    return cap_bucket == other.cap_bucket && signature == other.signature;
  }
};

struct SubscriberGroup {
  GroupKey key;
  // Indices into Instance::subscribers, sorted by descending frequency cap,
  // ties by subscriber id.
  std::vector<std::uint32_t> members;
  std::int64_t group_frequency_cap = 0;  // FC(G) = sum of member caps

  std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
};

struct Grouping {
  // Canonical order: lexicographic by signature bits, then cap value.
  std::vector<SubscriberGroup> groups;
  // Subscribers that can never receive an ad: all-zero signature or
  // frequency cap 0. Excluded from the IP.
  SubscriberGroup null_group;
};

struct GroupStats {
  std::int64_t group_count = 0;
  std::int64_t variable_count_scaled = 0;    // sum over groups of popcount
  std::int64_t variable_count_unscaled = 0;  // sum over subscribers of popcount
};

// Partitions subscribers into groups given their precomputed signatures.
// The parallel kernel merges per-thread hash maps; the canonical output
// order makes the result identical to the serial reference.
Grouping build_groups_serial(const Instance& instance,
                             const std::vector<EligibilitySignature>& signatures);
Grouping build_groups(const Instance& instance,
                      const std::vector<EligibilitySignature>& signatures);

GroupStats group_stats(const Grouping& grouping,
                       const std::vector<EligibilitySignature>& signatures);

}  // namespace adalloc
