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

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace pvcsp {

// Multiplicities over a base domain {0, ..., n-1}.
struct Multiset {
  std::vector<std::uint32_t> counts;

  static Multiset of(std::span<const std::size_t> elements, std::size_t base_size);

  std::size_t size() const;
  // Elements in non-decreasing order.
  std::vector<std::size_t> elements() const;

  auto operator<=>(const Multiset&) const = default;
  bool operator==(const Multiset&) const = default;
};

// C(n + k - 1, k), saturating at UINT64_MAX.
std::uint64_t multiset_count(std::size_t base_size, std::size_t size);

// All multisets of the given size as non-decreasing element sequences, in
// lexicographic order.
std::vector<std::vector<std::size_t>> enumerate_multisets(std::size_t base_size, std::size_t size);

}  // namespace pvcsp
