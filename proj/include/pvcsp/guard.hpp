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

#include <cstdint>
#include <string_view>

namespace pvcsp {

// Upper bound on the work an exhaustive enumeration may perform. The unit is
// "evaluated inequalities" for checkers and "table entries times
// arrangements" for constructions.
struct ResourceGuard {
  static constexpr std::uint64_t kDefaultCap = 10'000'000;

  std::uint64_t cap = kDefaultCap;

  // kDefaultCap, or the value of PVCSP_CAP when it parses as a positive integer.
  static ResourceGuard from_environment();

  // Throws Error(kResourceGuard) mentioning `what` when `amount` exceeds the cap.
  void require(std::uint64_t amount, std::string_view what) const;
};

// Saturating arithmetic for size estimates; the result is UINT64_MAX on overflow.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent);

}  // namespace pvcsp
