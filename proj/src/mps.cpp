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
#include "adalloc/mps.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace adalloc {
namespace {

// Classic fixed-format field starts (0-based): 1, 4, 14, 24, 39, 49.
void put_field(std::string& line, std::size_t start, const std::string& text) {
  if (line.size() < start) line.resize(start, ' ');
  line += text;
}

std::string record(const std::string& f1, const std::string& f2,
                   const std::string& f3 = "", const std::string& f4 = "",
                   const std::string& f5 = "", const std::string& f6 = "") {
  std::string line;
  if (!f1.empty()) put_field(line, 1, f1);
  if (!f2.empty()) put_field(line, 4, f2);
  if (!f3.empty()) put_field(line, 14, f3);
  if (!f4.empty()) put_field(line, 24, f4);
  if (!f5.empty()) put_field(line, 39, f5);
  if (!f6.empty()) put_field(line, 49, f6);
  line.push_back('\n');
  return line;
}

std::string name7(char prefix, std::int64_t index) {
  std::array<char, 16> buf;
  std::snprintf(buf.data(), buf.size(), "%c%07lld", prefix,
                static_cast<long long>(index));
  return std::string(buf.data());
}

// 7-digit base-36, for the unscaled export where indices exceed 10^7.
std::string name36(char prefix, std::int64_t index) {
  static const char* digits = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string s(8, '0');
  s[0] = prefix;
  for (int pos = 7; pos >= 1; --pos) {
    s[static_cast<std::size_t>(pos)] = digits[index % 36];
    index /= 36;
  }
  return s;
}

std::string num(std::int64_t v) { return std::to_string(v); }

}  // namespace

void export_mps(const IpModel& model, std::ostream& sink) {
  sink << "NAME          ADALLOC\n";
  sink << "ROWS\n";
  sink << record("N", "OBJ");
  for (std::size_t g = 0; g < model.n_groups(); ++g)
    sink << record("L", name7('G', static_cast<std::int64_t>(g)));
  for (std::size_t j = 0; j < model.n_campaigns(); ++j)
    sink << record("L", name7('C', static_cast<std::int64_t>(j)));
  for (std::size_t j = 0; j < model.floors.size(); ++j)
    if (model.floors[j] >= 1)
      sink << record("G", name7('F', static_cast<std::int64_t>(j)));

  if (!model.vars.empty()) {
    sink << "COLUMNS\n";
    sink << record("", "MARKER", "'MARKER'", "", "'INTORG'");
    for (std::size_t k = 0; k < model.vars.size(); ++k) {
      const auto& var = model.vars[k];
      std::string col = name7('X', static_cast<std::int64_t>(k));
      sink << record("", col, "OBJ", num(var.objective),
                     name7('G', var.group), "1");
      if (!model.floors.empty() && model.floors[var.campaign] >= 1)
        sink << record("", col, name7('C', var.campaign), "1",
                       name7('F', var.campaign), "1");
      else
        sink << record("", col, name7('C', var.campaign), "1");
    }
    sink << record("", "MARKER", "'MARKER'", "", "'INTEND'");
  }

  if (model.n_groups() + model.n_campaigns() > 0) {
    sink << "RHS\n";
    for (std::size_t g = 0; g < model.n_groups(); ++g)
      sink << record("", "RHS", name7('G', static_cast<std::int64_t>(g)),
                     num(model.group_cap[g]));
    for (std::size_t j = 0; j < model.n_campaigns(); ++j)
      sink << record("", "RHS", name7('C', static_cast<std::int64_t>(j)),
                     num(model.campaign_cap[j]));
    for (std::size_t j = 0; j < model.floors.size(); ++j)
      if (model.floors[j] >= 1)
        sink << record("", "RHS", name7('F', static_cast<std::int64_t>(j)),
                       num(model.floors[j]));
  }

  if (!model.vars.empty()) {
    sink << "BOUNDS\n";
    for (std::size_t k = 0; k < model.vars.size(); ++k)
      sink << record("UP", "BND", name7('X', static_cast<std::int64_t>(k)),
                     num(model.vars[k].upper));
  }
  sink << "ENDATA\n";
}

namespace {

struct Fields {
  std::vector<std::string> f;
};

Fields split_ws(const std::string& line) {
  Fields out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.f.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& s, std::size_t line_no) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw MpsError(line_no, "malformed integer '" + s + "'");
  return v;
}

std::int64_t name_index(const std::string& name, char prefix, std::size_t line_no) {
  if (name.size() != 8 || name[0] != prefix)
    throw MpsError(line_no, "unexpected name '" + name + "'");
  return parse_int(name.substr(1), line_no);
}

}  // namespace

IpModel import_mps(std::istream& source) {
  IpModel model;
  enum Section { kNone, kRows, kColumns, kRhs, kBounds, kDone };
  Section section = kNone;
  std::size_t line_no = 0;
  std::string line;
  bool saw_endata = false;

  std::int64_t n_groups = 0, n_campaigns = 0;
  std::vector<std::int64_t> floor_rows;  // campaign indices with a floor row
  struct RawVar {
    std::int64_t group = -1, campaign = -1;
    Money objective = 0;
    std::int64_t upper = 0;
  };
  std::map<std::int64_t, RawVar> vars;  // by column index

  while (std::getline(source, line)) {
    ++line_no;
    if (line.empty() || line[0] == '*') continue;
    if (line[0] != ' ') {  // section header
      Fields h = split_ws(line);
      const std::string& name = h.f[0];
      if (name == "NAME") section = kNone;
      else if (name == "ROWS") section = kRows;
      else if (name == "COLUMNS") section = kColumns;
      else if (name == "RHS") section = kRhs;
      else if (name == "BOUNDS") section = kBounds;
      else if (name == "ENDATA") { saw_endata = true; section = kDone; break; }
      else throw MpsError(line_no, "unknown section '" + name + "'");
      continue;
    }
    Fields fields = split_ws(line);
    if (fields.f.empty()) continue;
    switch (section) {
      case kRows: {
        if (fields.f.size() != 2) throw MpsError(line_no, "malformed ROWS record");
        const std::string& sense = fields.f[0];
        const std::string& name = fields.f[1];
        if (sense == "N") {
          if (name != "OBJ") throw MpsError(line_no, "unexpected objective row name");
        } else if (sense == "L") {
          if (name[0] == 'G') ++n_groups;
          else if (name[0] == 'C') ++n_campaigns;
          else throw MpsError(line_no, "unexpected L row '" + name + "'");
        } else if (sense == "G") {
          floor_rows.push_back(name_index(name, 'F', line_no));
        } else {
          throw MpsError(line_no, "unknown row sense '" + sense + "'");
        }
        break;
      }
      case kColumns: {
        if (fields.f.size() >= 3 && fields.f[0] == "MARKER") continue;
        if (fields.f.size() != 3 && fields.f.size() != 5)
          throw MpsError(line_no, "malformed COLUMNS record");
        std::int64_t col = name_index(fields.f[0], 'X', line_no);
        RawVar& var = vars[col];
        for (std::size_t k = 1; k + 1 < fields.f.size(); k += 2) {
          const std::string& row = fields.f[k];
          std::int64_t value = parse_int(fields.f[k + 1], line_no);
          if (row == "OBJ") var.objective = value;
          else if (row[0] == 'G') var.group = name_index(row, 'G', line_no);
          else if (row[0] == 'C') var.campaign = name_index(row, 'C', line_no);
          else if (row[0] == 'F') { /* floor membership follows the campaign */ }
          else throw MpsError(line_no, "unknown row '" + row + "'");
        }
        break;
      }
      case kRhs: {
        if (fields.f.size() != 3 || fields.f[0] != "RHS")
          throw MpsError(line_no, "malformed RHS record");
        const std::string& row = fields.f[1];
        std::int64_t value = parse_int(fields.f[2], line_no);
        if (row[0] == 'G') {
          std::int64_t g = name_index(row, 'G', line_no);
          if (static_cast<std::size_t>(g) >= model.group_cap.size())
            model.group_cap.resize(static_cast<std::size_t>(g) + 1, 0);
          model.group_cap[static_cast<std::size_t>(g)] = value;
        } else if (row[0] == 'C') {
          std::int64_t j = name_index(row, 'C', line_no);
          if (static_cast<std::size_t>(j) >= model.campaign_cap.size())
            model.campaign_cap.resize(static_cast<std::size_t>(j) + 1, 0);
          model.campaign_cap[static_cast<std::size_t>(j)] = value;
        } else if (row[0] == 'F') {
          std::int64_t j = name_index(row, 'F', line_no);
          if (static_cast<std::size_t>(j) >= model.floors.size())
            model.floors.resize(static_cast<std::size_t>(j) + 1, 0);
          model.floors[static_cast<std::size_t>(j)] = value;
        } else {
          throw MpsError(line_no, "unknown RHS row '" + row + "'");
        }
        break;
      }
      case kBounds: {
        if (fields.f.size() != 4 || fields.f[0] != "UP" || fields.f[1] != "BND")
          throw MpsError(line_no, "malformed BOUNDS record");
        std::int64_t col = name_index(fields.f[2], 'X', line_no);
        vars[col].upper = parse_int(fields.f[3], line_no);
        break;
      }
      case kNone:
      case kDone:
        throw MpsError(line_no, "record outside any section");
    }
  }
  if (!saw_endata) throw MpsError(line_no, "missing ENDATA");

  model.group_cap.resize(static_cast<std::size_t>(n_groups), 0);
  model.campaign_cap.resize(static_cast<std::size_t>(n_campaigns), 0);
  model.group_size.assign(static_cast<std::size_t>(n_groups), -1);
  if (!floor_rows.empty()) model.floors.resize(static_cast<std::size_t>(n_campaigns), 0);
  model.price.assign(static_cast<std::size_t>(n_campaigns), 0);

  for (const auto& [col, raw] : vars) {
    if (raw.group < 0 || raw.campaign < 0)
      throw MpsError(0, "column X" + std::to_string(col) +
                            " lacks a group or campaign row entry");
    IpVariable var;
    var.group = static_cast<std::uint32_t>(raw.group);
    var.campaign = static_cast<std::uint32_t>(raw.campaign);
    var.objective = raw.objective;
    var.upper = raw.upper;
    model.vars.push_back(var);
    model.price[var.campaign] = raw.objective;
  }
  std::sort(model.vars.begin(), model.vars.end(),
            [](const IpVariable& a, const IpVariable& b) {
              if (a.group != b.group) return a.group < b.group;
              return a.campaign < b.campaign;
            });
  return model;
}

std::int64_t export_unscaled_mps(const Instance& instance,
                                 const std::vector<EligibilitySignature>& signatures,
                                 std::ostream& sink) {
  const std::size_t n_subs = instance.subscribers.size();
  const std::size_t n_camps = instance.campaigns.size();

  sink << "NAME          ADALLOC-UNSCALED\n";
  sink << "ROWS\n";
  sink << record("N", "OBJ");
  for (std::size_t i = 0; i < n_subs; ++i)
    if (signatures[i].any())
      sink << record("L", name36('S', static_cast<std::int64_t>(i)));
  for (std::size_t j = 0; j < n_camps; ++j)
    sink << record("L", name7('C', static_cast<std::int64_t>(j)));

  std::int64_t n_vars = 0;
  sink << "COLUMNS\n";
  sink << record("", "MARKER", "'MARKER'", "", "'INTORG'");
  for (std::size_t i = 0; i < n_subs; ++i) {
    if (!signatures[i].any()) continue;
    std::string srow = name36('S', static_cast<std::int64_t>(i));
    for (std::size_t j = 0; j < n_camps; ++j) {
      if (!signatures[i].bit(j)) continue;
      std::string col = name36('X', n_vars);
      sink << record("", col, "OBJ", num(instance.campaigns[j].price), srow, "1");
      sink << record("", col, name7('C', static_cast<std::int64_t>(j)), "1");
      ++n_vars;
    }
  }
  sink << record("", "MARKER", "'MARKER'", "", "'INTEND'");

  sink << "RHS\n";
  for (std::size_t i = 0; i < n_subs; ++i)
    if (signatures[i].any())
      sink << record("", "RHS", name36('S', static_cast<std::int64_t>(i)),
                     num(instance.subscribers[i].frequency_cap));
  for (std::size_t j = 0; j < n_camps; ++j)
    sink << record("", "RHS", name7('C', static_cast<std::int64_t>(j)),
                   num(instance.campaigns[j].frequency_cap));

  sink << "BOUNDS\n";
  for (std::int64_t k = 0; k < n_vars; ++k)
    sink << record("UP", "BND", name36('X', k), "1");
  sink << "ENDATA\n";
  return n_vars;
}

}  // namespace adalloc
