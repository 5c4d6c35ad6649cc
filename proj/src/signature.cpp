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
#include "adalloc/signature.hpp"

#include "adalloc/predicate.hpp"

namespace adalloc {

EligibilitySignature eligibility_signature(const Subscriber& subscriber,
                                           const std::vector<Campaign>& campaigns) {
  EligibilitySignature sig(campaigns.size());
  for (std::size_t j = 0; j < campaigns.size(); ++j)
    if (evaluate(*campaigns[j].predicate, subscriber.kpis)) sig.set_bit(j, true);
  return sig;
}

std::vector<EligibilitySignature> compute_signatures_serial(const Instance& instance) {
  std::vector<EligibilitySignature> sigs;
  sigs.reserve(instance.subscribers.size());
  for (const auto& sub : instance.subscribers)
    sigs.push_back(eligibility_signature(sub, instance.campaigns));
  return sigs;
}

std::vector<EligibilitySignature> compute_signatures(const Instance& instance) {
  const std::int64_t n = static_cast<std::int64_t>(instance.subscribers.size());
  std::vector<EligibilitySignature> sigs(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    sigs[static_cast<std::size_t>(i)] =
        eligibility_signature(instance.subscribers[static_cast<std::size_t>(i)],
                              instance.campaigns);
  return sigs;
}

}  // namespace adalloc
