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

#include "pvcsp/measure.hpp"

#include "pvcsp/multiset.hpp"

namespace pvcsp {

OperationTable::OperationTable(std::size_t input_size, std::size_t output_size, std::size_t arity,
                               std::vector<std::uint32_t> values)
    : input_size_(input_size), output_size_(output_size), arity_(arity), values_(std::move(values)) {
  if (input_size_ == 0 || output_size_ == 0) {
    throw Error(ErrorKind::kInvalidArgument, "operation over an empty domain");
  }
  if (values_.size() != tuple_count(input_size_, arity_)) {
    throw Error(ErrorKind::kDimensionMismatch, "operation table has " +
                                                   std::to_string(values_.size()) + " entries");
  }
  for (auto v : values_) {
    if (v >= output_size_) {
      throw Error(ErrorKind::kInvalidArgument, "operation value outside the output domain");
    }
  }
}

OperationTable OperationTable::identity(std::size_t domain_size) {
  return tabulate(domain_size, domain_size, 1, [](auto t) { return t[0]; });
}

OperationTable OperationTable::projection(std::size_t domain_size, std::size_t arity,
                                          std::size_t coordinate) {
  return tabulate(domain_size, domain_size, arity, [coordinate](auto t) { return t[coordinate]; });
}

Multiset Multiset::of(std::span<const std::size_t> elements, std::size_t base_size) {
  Multiset m;
  m.counts.assign(base_size, 0);
  for (auto e : elements) ++m.counts[e];
  return m;
}

std::size_t Multiset::size() const {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::vector<std::size_t> Multiset::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < counts.size(); ++a) out.insert(out.end(), counts[a], a);
  return out;
}

std::uint64_t multiset_count(std::size_t base_size, std::size_t size) {
  if (base_size == 0) return size == 0 ? 1 : 0;
  // C(n + k - 1, k) computed incrementally; each partial product is a binomial.
  mpz_class result = 1;
  for (std::size_t i = 1; i <= size; ++i) {
    result *= static_cast<unsigned long>(base_size - 1 + i);
    result /= static_cast<unsigned long>(i);
  }
  if (!result.fits_ulong_p()) return UINT64_MAX;
  return result.get_ui();
}

namespace {

void extend(std::size_t base_size, std::size_t size, std::size_t min_element,
            std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
  if (prefix.size() == size) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t a = min_element; a < base_size; ++a) {
    prefix.push_back(a);
    extend(base_size, size, a, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_multisets(std::size_t base_size, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> prefix;
  extend(base_size, size, 0, prefix, out);
  return out;
}

}  // namespace pvcsp
