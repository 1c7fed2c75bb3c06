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

#include "pvcsp/guard.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "pvcsp/error.hpp"

namespace pvcsp {

ResourceGuard ResourceGuard::from_environment() {
  ResourceGuard guard;
  if (const char* env = std::getenv("PVCSP_CAP")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) guard.cap = parsed;
  }
  return guard;
}

void ResourceGuard::require(std::uint64_t amount, std::string_view what) const {
  if (amount > cap) {
    throw Error(ErrorKind::kResourceGuard,
                std::string(what) + " needs " +
                    (amount == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64")
                                                                        : std::to_string(amount)) +
                    " units, cap is " + std::to_string(cap));
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) result = saturating_mul(result, base);
  return result;
}

}  // namespace pvcsp
