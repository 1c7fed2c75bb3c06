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

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pvcsp/instance.hpp"
#include "pvcsp/structure.hpp"

namespace pvcsp::gen {

enum class Family {
  kXor,         // crisp linear equations mod 2
  kHorn,        // crisp Horn clauses
  kSubmodular,  // valued submodular unary and binary tables over {0,1}
  kRandom,      // arbitrary tables; gamma lowers some delta entries
};

const char* to_string(Family family);
// Throws Error(kInvalidArgument) on an unknown name.
Family parse_family(std::string_view name);

// Cost values drawn for valued families, in this order.
inline constexpr std::array<const char*, 5> kCostValues = {"0", "1", "1/2", "2", "inf"};

struct GeneratorConfig {
  Family family = Family::kRandom;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t max_variables = 0;  // 0 selects the family default
  std::size_t max_terms = 0;      // 0 selects the family default
  std::size_t domain_size = 0;    // random family; 0 draws from {2, 3}
  std::size_t max_arity = 2;      // random family
  std::array<unsigned, 5> cost_weights = {3, 3, 2, 2, 1};

  // Throws Error(kInvalidArgument) on unusable settings.
  void validate() const;
};

struct GeneratedCase {
  std::size_t index;
  PromiseTemplate promise;
  Instance instance;
};

// Case i depends only on (seed, i).
GeneratedCase generate_case(const GeneratorConfig& config, std::size_t index);
std::vector<GeneratedCase> generate_batch(const GeneratorConfig& config);

std::mt19937_64 case_engine(std::uint64_t seed, std::size_t index);

// Fixed structures of the crisp families.
ValuedStructure xor_structure();
ValuedStructure horn_structure();

bool is_submodular(const std::vector<ExtendedRational>& binary_table);

}  // namespace pvcsp::gen
