// Copyright 2026 The pvcsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pvcsp/instance.hpp"
#include "pvcsp/rational.hpp"
#include "pvcsp/structure.hpp"

namespace pvcsp {

// Label-level cost of an assignment. Throws on malformed instances, unknown
// labels, and variables missing from the assignment.
ExtendedRational evaluate_cost(const ValuedStructure& structure, const Instance& instance,
                               const std::map<std::string, std::string>& assignment);

// Position-level variant; assignment[v] is the label position of variable v.
ExtendedRational evaluate_cost(const ValuedStructure& structure,
                               std::span<const ResolvedTerm> terms,
                               std::span<const std::size_t> assignment);

struct MinimumResult {
  ExtendedRational value = ExtendedRational::infinity();
  // Lexicographically least minimizing assignment; empty optional when every
  // assignment costs +inf.
  std::optional<std::vector<std::size_t>> argmin;
};

// Exhaustive minimum over all |D|^|V| assignments. The enumeration is split
// across OpenMP threads; the result matches serial::brute_force_minimize.
MinimumResult brute_force_minimize(const ValuedStructure& structure, const Instance& instance);
ExtendedRational brute_force_min(const ValuedStructure& structure, const Instance& instance);

namespace serial {
MinimumResult brute_force_minimize(const ValuedStructure& structure, const Instance& instance);
}  // namespace serial

enum class OracleClass { kYes, kNo, kGap };
const char* to_string(OracleClass cls);

// kYes if min over delta <= u, else kNo if min over gamma > u, else kGap.
OracleClass pvcsp_oracle(const PromiseTemplate& promise, const Instance& instance);

}  // namespace pvcsp
