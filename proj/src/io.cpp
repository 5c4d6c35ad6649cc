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
#include "adalloc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "adalloc/predicate.hpp"

namespace adalloc {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && p == end;
}

bool parse_int64(const std::string& s, std::int64_t* out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && p == s.data() + s.size();
}

void json_escape(const std::string& s, std::string& out) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
}

}  // namespace

SubscriberFile load_subscribers(std::istream& in, StringPool& pool,
                                std::size_t max_errors) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("subscriber file: missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "id" || header[1] != "fc")
    throw IoError("subscriber file: header must start with 'id,fc'");

  SubscriberFile out;
  struct ColInfo {
    bool annotated = false;
    bool inferred = false;
  };
  std::vector<ColInfo> col_info(header.size() - 2);
  for (std::size_t c = 2; c < header.size(); ++c) {
    std::string name = header[c];
    KpiKind kind = KpiKind::kNumeric;
    bool annotated = false;
    if (auto pos = name.rfind(":num"); pos != std::string::npos && pos == name.size() - 4) {
      name = name.substr(0, pos);
      annotated = true;
    } else if (auto cpos = name.rfind(":cat");
               cpos != std::string::npos && cpos == name.size() - 4) {
      name = name.substr(0, cpos);
      kind = KpiKind::kCategorical;
      annotated = true;
    }
    if (name.empty()) throw IoError("subscriber file: empty KPI column name");
    out.schema.attributes.push_back({name, kind});
    col_info[c - 2].annotated = annotated;
  }

  std::vector<std::string> errors;
  std::unordered_set<std::string> seen_ids;
  std::size_t line_no = 1;
  auto add_error = [&](const std::string& what) {
    if (errors.size() < max_errors)
      errors.push_back("line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      add_error("expected " + std::to_string(header.size()) + " columns, got " +
                std::to_string(fields.size()));
      continue;
    }
    Subscriber sub;
    sub.id = fields[0];
    if (sub.id.empty()) {
      add_error("empty subscriber id");
      continue;
    }
    if (!seen_ids.insert(sub.id).second) {
      add_error("duplicate subscriber id '" + sub.id + "'");
      continue;
    }
    if (!parse_int64(fields[1], &sub.frequency_cap) || sub.frequency_cap < 0) {
      add_error("bad frequency cap '" + fields[1] + "' for '" + sub.id + "'");
      continue;
    }
    bool row_ok = true;
    sub.kpis.values.reserve(out.schema.size());
    for (std::size_t c = 2; c < fields.size(); ++c) {
      auto& attr = out.schema.attributes[c - 2];
      auto& info = col_info[c - 2];
      if (!info.annotated && !info.inferred) {
        double probe;
        attr.kind = parse_double(fields[c], &probe) ? KpiKind::kNumeric
                                                    : KpiKind::kCategorical;
        info.inferred = true;
      }
      if (attr.kind == KpiKind::kNumeric) {
        double v;
        if (!parse_double(fields[c], &v) || !std::isfinite(v)) {
          add_error("non-numeric or non-finite value '" + fields[c] + "' in column '" +
                    attr.name + "'");
          row_ok = false;
          break;
        }
        sub.kpis.values.push_back(v);
      } else {
        sub.kpis.values.push_back(static_cast<double>(pool.intern(fields[c])));
      }
    }
    if (row_ok) out.subscribers.push_back(std::move(sub));
  }

  if (!errors.empty()) {
    std::string what = "subscriber file has errors:";
    for (const auto& e : errors) what += "\n  " + e;
    throw IoError(what);
  }
  return out;
}

SubscriberFile load_subscribers_file(const std::string& path, StringPool& pool,
                                     std::size_t max_errors) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read subscriber file: " + path);
  return load_subscribers(in, pool, max_errors);
}

std::vector<Campaign> load_campaigns(std::istream& in, const KpiSchema& schema,
                                     StringPool& pool) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("campaign file: ") + e.what());
  }
  if (!doc.is_array()) throw IoError("campaign file: top-level value must be an array");

  std::vector<Campaign> out;
  std::unordered_set<std::string> seen;
  for (const auto& item : doc) {
    if (!item.is_object()) throw IoError("campaign file: array entries must be objects");
    Campaign camp;
    try {
      camp.id = item.at("id").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw IoError("campaign file: entry missing string 'id'");
    }
    if (!seen.insert(camp.id).second)
      throw IoError("campaign file: duplicate campaign id '" + camp.id + "'");

    if (!item.contains("predicate") || !item.at("predicate").is_string())
      throw IoError("campaign '" + camp.id + "': missing string 'predicate'");
    camp.predicate_text = item.at("predicate").get<std::string>();
    try {
      camp.predicate = parse_predicate(camp.predicate_text, schema, pool);
    } catch (const PredicateParseError& e) {
      throw IoError("syntax error in campaign '" + camp.id + "': " + e.what());
    }

    if (!item.contains("price"))
      throw IoError("campaign '" + camp.id + "': missing 'price'");
    const auto& price = item.at("price");
    try {
      if (price.is_string()) {
        camp.price = parse_money(price.get<std::string>());
      } else if (price.is_number()) {
        double v = price.get<double>();
        if (v < 0 || !std::isfinite(v)) throw MoneyParseError("negative or non-finite");
        camp.price = static_cast<Money>(std::llround(v * kMoneyScale));
      } else {
        throw MoneyParseError("price must be a decimal string or number");
      }
    } catch (const MoneyParseError& e) {
      throw IoError("campaign '" + camp.id + "': bad price: " + e.what());
    }

    if (!item.contains("frequency_cap") || !item.at("frequency_cap").is_number_integer())
      throw IoError("campaign '" + camp.id + "': missing integer 'frequency_cap'");
    camp.frequency_cap = item.at("frequency_cap").get<std::int64_t>();
    if (camp.frequency_cap < 0)
      throw IoError("campaign '" + camp.id + "': negative frequency_cap");
    out.push_back(std::move(camp));
  }
  return out;
}

std::vector<Campaign> load_campaigns_file(const std::string& path,
                                          const KpiSchema& schema, StringPool& pool) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read campaign file: " + path);
  return load_campaigns(in, schema, pool);
}

void write_allocations_csv(const Instance& instance, const AllocationResult& result,
                           std::ostream& out) {
  out << "subscriber_id,campaign_id\n";
  for (std::size_t i = 0; i < result.assignments.size(); ++i)
    for (int j : result.assignments[i])
      out << instance.subscribers[i].id << ','
          << instance.campaigns[static_cast<std::size_t>(j)].id << '\n';
}

void write_ranked_jsonl(const Instance& instance, const AllocationResult& result,
                        std::ostream& out) {
  std::string line;
  for (std::size_t i = 0; i < result.assignments.size(); ++i) {
    line.clear();
    line += "{\"subscriber\":\"";
    json_escape(instance.subscribers[i].id, line);
    line += "\",\"ads\":[";
    bool first = true;
    for (int j : result.assignments[i]) {
      const auto& camp = instance.campaigns[static_cast<std::size_t>(j)];
      if (!first) line.push_back(',');
      first = false;
      line += "{\"campaign\":\"";
      json_escape(camp.id, line);
      line += "\",\"price\":\"";
      line += format_money(camp.price);
      line += "\"}";
    }
    line += "]}\n";
    out << line;
  }
}

}  // namespace adalloc
