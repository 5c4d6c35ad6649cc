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
#include "adalloc/money.hpp"

#include <cctype>

namespace adalloc {

Money parse_money(const std::string& text) {
  if (text.empty()) throw MoneyParseError("empty money literal");
  std::size_t pos = 0;
  if (text[pos] == '+') ++pos;
  if (pos < text.size() && text[pos] == '-')
    throw MoneyParseError("negative money literal: " + text);

  Money whole = 0;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    whole = whole * 10 + (text[pos] - '0');
    if (whole > 1'000'000'000'000LL)
      throw MoneyParseError("money literal out of range: " + text);
    ++pos;
    ++digits;
  }
  Money frac = 0;
  std::size_t frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (frac_digits == 6)
        throw MoneyParseError("more than 6 fractional digits: " + text);
      frac = frac * 10 + (text[pos] - '0');
      ++pos;
      ++frac_digits;
    }
    if (frac_digits == 0 && digits == 0)
      throw MoneyParseError("malformed money literal: " + text);
  }
  if (digits == 0 && frac_digits == 0)
    throw MoneyParseError("malformed money literal: " + text);
  if (pos != text.size())
    throw MoneyParseError("trailing characters in money literal: " + text);
  for (std::size_t i = frac_digits; i < 6; ++i) frac *= 10;
  return whole * kMoneyScale + frac;
}

std::string format_money(Money micros) {
  std::string sign;
  if (micros < 0) {
    sign = "-";
    micros = -micros;
  }
  Money whole = micros / kMoneyScale;
  Money frac = micros % kMoneyScale;
  std::string out = sign + std::to_string(whole);
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, 6 - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

}  // namespace adalloc
