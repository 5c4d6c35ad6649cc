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
#include "adalloc/synth.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace adalloc {
namespace {

const char* kRegions[] = {"N", "S", "E", "W"};

// Predicate templates over the fixed synthetic schema. Thresholds land on
// one-decimal arpu values and integer ages, the same grid the subscriber
// KPIs use.
std::string make_pool_predicate(SplitMix64& rng) {
  switch (rng.below(6)) {
    case 0:
      return "arpu >= " + std::to_string(2 + rng.below(20));
    case 1:
      return "arpu < " + std::to_string(5 + rng.below(20));
    case 2:
      return "age >= " + std::to_string(18 + rng.below(40));
    case 3:
      return "region == \"" + std::string(kRegions[rng.below(4)]) + "\"";
    case 4:
      return "arpu >= " + std::to_string(1 + rng.below(10)) + " AND age < " +
             std::to_string(40 + rng.below(35));
    default:
      return "region != \"" + std::string(kRegions[rng.below(4)]) + "\" OR arpu >= " +
             std::to_string(10 + rng.below(15));
  }
}

}  // namespace

SynthFiles generate_synthetic(const SynthParams& params) {
  if (params.n_subscribers < 0 || params.n_campaigns < 0)
    throw std::invalid_argument("synthetic sizes must be >= 0");
  if (params.predicate_pool < 1)
    throw std::invalid_argument("predicate pool must be >= 1");
  if (params.subscriber_caps.empty())
    throw std::invalid_argument("subscriber cap set must be non-empty");

  SynthFiles out;
  SplitMix64 rng(params.seed);

  out.subscribers_csv = "id,fc,arpu,age,region:cat\n";
  out.subscribers_csv.reserve(static_cast<std::size_t>(params.n_subscribers) * 24 + 64);
  for (std::int64_t i = 0; i < params.n_subscribers; ++i) {
    std::int64_t cap =
        params.subscriber_caps[rng.below(params.subscriber_caps.size())];
    std::uint64_t arpu_tenths = rng.below(300);  // 0.0 .. 29.9
    std::uint64_t age = 10 + rng.below(70);
    const char* region = kRegions[rng.below(4)];
    out.subscribers_csv += "s" + std::to_string(i);
    out.subscribers_csv += "," + std::to_string(cap);
    out.subscribers_csv += "," + std::to_string(arpu_tenths / 10) + "." +
                           std::to_string(arpu_tenths % 10);
    out.subscribers_csv += "," + std::to_string(age);
    out.subscribers_csv += ",";
    out.subscribers_csv += region;
    out.subscribers_csv += "\n";
  }

  std::vector<std::string> pool;
  pool.reserve(static_cast<std::size_t>(params.predicate_pool));
  for (int p = 0; p < params.predicate_pool; ++p) pool.push_back(make_pool_predicate(rng));

  out.campaigns_json = "[\n";
  for (int j = 0; j < params.n_campaigns; ++j) {
    const std::string& predicate = pool[rng.below(pool.size())];
    std::uint64_t price_cents = 1 + rng.below(500);  // 0.01 .. 5.00
    std::int64_t span = params.campaign_cap_max - params.campaign_cap_min + 1;
    std::int64_t cap = params.campaign_cap_min +
                       static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(
                           span > 0 ? span : 1)));
    out.campaigns_json += "  {\"id\":\"c" + std::to_string(j) + "\",\"predicate\":\"";
    for (char c : predicate) {
      if (c == '"') out.campaigns_json += "\\\"";
      else out.campaigns_json.push_back(c);
    }
    out.campaigns_json += "\",\"price\":\"" + std::to_string(price_cents / 100) + "." +
                          (price_cents % 100 < 10 ? "0" : "") +
                          std::to_string(price_cents % 100);
    out.campaigns_json += "\",\"frequency_cap\":" + std::to_string(cap) + "}";
    out.campaigns_json += (j + 1 < params.n_campaigns) ? ",\n" : "\n";
  }
  out.campaigns_json += "]\n";
  return out;
}

std::pair<std::string, std::string> generate_synthetic_files(const SynthParams& params,
                                                             const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  SynthFiles files = generate_synthetic(params);
  std::string sub_path = out_dir + "/subscribers.csv";
  std::string camp_path = out_dir + "/campaigns.json";
  {
    std::ofstream out(sub_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + sub_path);
    out << files.subscribers_csv;
  }
  {
    std::ofstream out(camp_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + camp_path);
    out << files.campaigns_json;
  }
  return {sub_path, camp_path};
}

}  // namespace adalloc
