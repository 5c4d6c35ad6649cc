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
#include <stdexcept>
#include <string>

namespace adalloc {

// Money in integer micro-units. Objectives must compare exactly, so all
// price arithmetic stays in int64 micros; decimals exist only at the I/O
// boundary.
using Money = std::int64_t;

inline constexpr Money kMoneyScale = 1'000'000;

// Parses a non-negative decimal like "0.02" or "12" into micros.
// Rejects more than 6 fractional digits (they would not be exact).
Money parse_money(const std::string& text);

// Canonical decimal rendering: no trailing fractional zeros, no exponent.
std::string format_money(Money micros);

class MoneyParseError : public std::runtime_error {
 public:
  explicit MoneyParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adalloc
