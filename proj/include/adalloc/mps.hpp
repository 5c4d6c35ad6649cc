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

#include "adalloc/ip_model.hpp"
#include "adalloc/signature.hpp"

namespace adalloc {

class MpsError : public std::runtime_error {
 public:
  MpsError(std::size_t line, const std::string& what)
      : std::runtime_error("MPS line " + std::to_string(line) + ": " + what),
        line(line) {}
  std::size_t line;
};

// Fixed-format MPS of the group IP: NAME, ROWS, COLUMNS (INTORG/INTEND
// markers), RHS, BOUNDS, ENDATA, in canonical order. Row names: OBJ,
// G<group>, C<campaign>, F<campaign> (fairness floors); columns X<var>.
// Objective coefficients are prices in micros; sense is maximize.
// Byte-deterministic: identical models export identical bytes. Empty
// sections are omitted.
void export_mps(const IpModel& model, std::ostream& sink);

// Reads the dialect emitted by export_mps back into a canonical IpModel
// (group_size is not serialized and comes back as -1). Errors carry line
// numbers.
IpModel import_mps(std::istream& source);

// Streams the original subscriber-level binary program (one binary x_ij per
// eligible pair) without materializing it; used to measure the unscaled
// problem size. Returns the number of variables written.
std::int64_t export_unscaled_mps(const Instance& instance,
                                 const std::vector<EligibilitySignature>& signatures,
                                 std::ostream& sink);

}  // namespace adalloc
