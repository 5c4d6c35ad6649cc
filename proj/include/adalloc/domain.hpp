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
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "adalloc/money.hpp"

namespace adalloc {

enum class KpiKind { kNumeric, kCategorical };

// Column order is fixed per instance: it is the column order of the
// subscriber file and the index space KpiVector uses.
struct KpiSchema {
  struct Attribute {
    std::string name;
    KpiKind kind;
  };
  std::vector<Attribute> attributes;

  // Returns the attribute index or -1.
  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
      if (attributes[i].name == name) return static_cast<int>(i);
    return -1;
  }
  std::size_t size() const { return attributes.size(); }
};

// Interns categorical strings to dense int ids so predicate evaluation and
// signature computation never compare strings.
class StringPool {
 public:
  std::int32_t intern(const std::string& s) {
    auto it = ids_.find(s);
    if (it != ids_.end()) return it->second;
    std::int32_t id = static_cast<std::int32_t>(strings_.size());
    strings_.push_back(s);
    ids_.emplace(s, id);
    return id;
  }
  // Lookup without inserting; -1 when absent.
  std::int32_t find(const std::string& s) const {
    auto it = ids_.find(s);
    return it == ids_.end() ? -1 : it->second;
  }
  const std::string& str(std::int32_t id) const { return strings_.at(id); }
  std::size_t size() const { return strings_.size(); }

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, std::int32_t> ids_;
};

// One value per schema attribute. Numeric attributes hold the ingested
// double (finite by construction); categorical attributes hold the interned
// id stored as a double (ids are small, so the representation is exact).
struct KpiVector {
  std::vector<double> values;

  double num(int attr) const { return values[attr]; }
  std::int32_t cat(int attr) const { return static_cast<std::int32_t>(values[attr]); }
};

struct Subscriber {
  std::string id;
  KpiVector kpis;
  std::int64_t frequency_cap = 0;  // fcs: max ads per delivery window
};

struct PredicateNode;  // targeting/predicate.hpp

struct Campaign {
  std::string id;
  std::shared_ptr<const PredicateNode> predicate;
  std::string predicate_text;  // concrete syntax as ingested
  Money price = 0;             // per impression
  std::int64_t frequency_cap = 0;  // fcc: impression budget
};

struct FairnessConfig {
  bool enabled = false;
  double min_fill_fraction = 0.0;  // in [0,1]
};

struct Instance {
  KpiSchema schema;
  std::vector<Subscriber> subscribers;
  std::vector<Campaign> campaigns;
  FairnessConfig fairness;
  StringPool pool;
};

struct AllocationResult {
  // assignments[i] holds the campaign indices (into Instance::campaigns)
  // allocated to subscriber i, ranked descending by price, ties by id.
  std::vector<std::vector<int>> assignments;
  Money objective = 0;
  std::vector<std::int64_t> per_campaign_counts;
};

struct Violation {
  std::string entity_id;
  std::string reason;
};

// Empty result iff every domain invariant holds. Violations are data, not
// failures.
std::vector<Violation> validate_instance(const Instance& instance);

// Sum of price_j * count_j over campaigns, exact in micros.
Money objective_value(const std::map<std::string, std::int64_t>& counts,
                      const std::vector<Campaign>& campaigns);

// Re-checks every AllocationResult invariant against the instance:
// per-subscriber caps, distinct campaigns, eligibility, campaign caps,
// objective consistency. Used after every solve.
std::vector<Violation> check_allocation(const Instance& instance,
                                        const AllocationResult& result);

}  // namespace adalloc
