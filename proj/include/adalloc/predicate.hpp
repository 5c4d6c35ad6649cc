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
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "adalloc/domain.hpp"

namespace adalloc {

// Targeting predicate grammar:
//
//   expr    := term (OR term)*
//   term    := factor (AND factor)*
//   factor  := NOT factor | '(' expr ')' | TRUE
//            | ident cmpop literal
//            | ident IN '{' literal (',' literal)* '}'
//   cmpop   := < | <= | > | >= | == | !=
//   literal := decimal number | double-quoted string
//
// Ordering operators apply to numeric attributes only; == and != apply to
// both. Numeric comparison is exact (no epsilon): eligibility keys the
// grouping transform and must be reproducible bit for bit.

enum class CmpOp { kLt, kLe, kGt, kGe, kEq, kNe };

struct PredicateNode {
  enum class Kind { kTrue, kCmp, kIn, kAnd, kOr, kNot };
  Kind kind = Kind::kTrue;

  // kCmp / kIn
  int attr = -1;
  std::string attr_name;
  KpiKind attr_kind = KpiKind::kNumeric;
  CmpOp op = CmpOp::kEq;
  double num_lit = 0.0;
  std::int32_t cat_lit = -1;
  std::string lit_text;  // literal as written, reused by the printer
  std::vector<double> in_nums;
  std::vector<std::int32_t> in_cats;
  std::vector<std::string> in_texts;

  // kAnd / kOr / kNot
  std::vector<std::shared_ptr<const PredicateNode>> children;
};

using PredicatePtr = std::shared_ptr<const PredicateNode>;

class PredicateParseError : public std::runtime_error {
 public:
  PredicateParseError(std::size_t position, const std::string& what)
      : std::runtime_error("at position " + std::to_string(position) + ": " + what),
        position(position) {}
  std::size_t position;
};

// Parses and type-checks against the schema; categorical literals are
// interned into the pool.
PredicatePtr parse_predicate(const std::string& text, const KpiSchema& schema,
                             StringPool& pool);

bool evaluate(const PredicateNode& predicate, const KpiVector& kpis);

// Canonical concrete syntax; parse(print(p)) reproduces p.
std::string print_predicate(const PredicateNode& predicate);

}  // namespace adalloc
