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

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "adalloc/domain.hpp"

namespace adalloc {

// Per-subscriber eligibility bit vector, one bit per campaign in instance
// campaign order. Bit j is 1 iff the subscriber satisfies campaign j's
// predicate.
class EligibilitySignature {
 public:
  EligibilitySignature() = default;
  explicit EligibilitySignature(std::size_t width)
      : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t width() const { return width_; }

  bool bit(std::size_t j) const {
    return (words_[j >> 6] >> (j & 63)) & 1u;
  }
  void set_bit(std::size_t j, bool value) {
    std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (value)
      words_[j >> 6] |= mask;
    else
      words_[j >> 6] &= ~mask;
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  bool operator==(const EligibilitySignature& other) const {
    return width_ == other.width_ && words_ == other.words_;
  }

  // Lexicographic on the bit string b0 b1 ... b_{w-1}: at the lowest
  // differing bit index, the signature with a 0 there sorts first.
  bool lex_less(const EligibilitySignature& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t diff = words_[w] ^ other.words_[w];
      if (diff) {
        std::uint64_t mask = std::uint64_t{1} << std::countr_zero(diff);
        return (words_[w] & mask) == 0;
      }
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = width_;
    for (auto w : words_) {
      h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  // "110" style rendering, bit 0 first.
  std::string to_string() const {
    std::string s(width_, '0');
    for (std::size_t j = 0; j < width_; ++j)
      if (bit(j)) s[j] = '1';
    return s;
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

// Bit j = evaluate(campaign_j.predicate, subscriber.kpis).
EligibilitySignature eligibility_signature(const Subscriber& subscriber,
                                           const std::vector<Campaign>& campaigns);

// Signatures for every subscriber, in subscriber order. The parallel kernel
// shards subscribers across OpenMP threads with an order-preserving gather;
// the serial kernel is the reference both for tests and the benchmark.
std::vector<EligibilitySignature> compute_signatures_serial(const Instance& instance);
std::vector<EligibilitySignature> compute_signatures(const Instance& instance);

}  // namespace adalloc
