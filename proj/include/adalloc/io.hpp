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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "adalloc/domain.hpp"

namespace adalloc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// subscribers.csv: header "id,fc,<kpi columns...>"; fc is a non-negative
// integer. A KPI column may be annotated "name:num" or "name:cat"; without
// an annotation the kind is inferred from the first data row (parses as a
// decimal -> numeric). Row-level errors are collected up to max_errors and
// reported together with line numbers before the load aborts.
struct SubscriberFile {
  KpiSchema schema;
  std::vector<Subscriber> subscribers;
};
SubscriberFile load_subscribers(std::istream& in, StringPool& pool,
                                std::size_t max_errors = 20);
SubscriberFile load_subscribers_file(const std::string& path, StringPool& pool,
                                     std::size_t max_errors = 20);

// campaigns.json: array of {id, predicate, price, frequency_cap}; price is
// a decimal string (a plain JSON number is also accepted). Predicates are
// parsed against the schema; errors carry the campaign id.
std::vector<Campaign> load_campaigns(std::istream& in, const KpiSchema& schema,
                                     StringPool& pool);
std::vector<Campaign> load_campaigns_file(const std::string& path,
                                          const KpiSchema& schema, StringPool& pool);

// Output writers; all byte-deterministic for identical inputs.
void write_allocations_csv(const Instance& instance, const AllocationResult& result,
                           std::ostream& out);
void write_ranked_jsonl(const Instance& instance, const AllocationResult& result,
                        std::ostream& out);

}  // namespace adalloc
