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

#include "pvcsp/structure.hpp"

#include <limits>

#include "pvcsp/error.hpp"
#include "pvcsp/guard.hpp"

namespace pvcsp {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name.empty()) throw Error(ErrorKind::kInvalidArgument, "empty symbol name");
    if (symbols_[i].arity == 0) {
      throw Error(ErrorKind::kInvalidArgument, "symbol '" + symbols_[i].name + "' has arity 0");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols_[j].name == symbols_[i].name) {
        throw Error(ErrorKind::kInvalidArgument, "duplicate symbol '" + symbols_[i].name + "'");
      }
    }
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t tuple_count(std::size_t domain_size, std::size_t arity) {
  const std::uint64_t count = saturating_pow(domain_size, arity);
  if (count > std::numeric_limits<std::size_t>::max() / 2) {
    throw Error(ErrorKind::kResourceGuard, "tuple space " + std::to_string(domain_size) + "^" +
                                               std::to_string(arity) + " is too large");
  }
  return static_cast<std::size_t>(count);
}

std::size_t encode_tuple(std::span<const std::size_t> tuple, std::size_t domain_size) {
  std::size_t index = 0;
  for (std::size_t value : tuple) index = index * domain_size + value;
  return index;
}

void decode_tuple(std::size_t index, std::size_t domain_size, std::span<std::size_t> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = index % domain_size;
    index /= domain_size;
  }
}

Tuple decode_tuple(std::size_t index, std::size_t domain_size, std::size_t arity) {
  Tuple tuple(arity);
  decode_tuple(index, domain_size, tuple);
  return tuple;
}

ValuedStructure::ValuedStructure(Signature signature, std::vector<std::string> domain,
                                 std::vector<std::vector<ExtendedRational>> tables)
    : signature_(std::move(signature)), domain_(std::move(domain)), tables_(std::move(tables)) {
  if (domain_.empty()) throw Error(ErrorKind::kInvalidArgument, "empty domain");
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (!label_lookup_.emplace(domain_[i], i).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate domain label '" + domain_[i] + "'");
    }
  }
  if (tables_.size() != signature_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "expected " + std::to_string(signature_.size()) +
                                                   " tables, got " + std::to_string(tables_.size()));
  }
  for (std::size_t s = 0; s < tables_.size(); ++s) {
    const std::size_t expected = tuple_count(domain_.size(), signature_[s].arity);
    if (tables_[s].size() != expected) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "table for '" + signature_[s].name + "' has " + std::to_string(tables_[s].size()) +
                      " entries, expected " + std::to_string(expected));
    }
  }
}

std::optional<std::size_t> ValuedStructure::label_index(std::string_view label) const {
  const auto it = label_lookup_.find(std::string(label));
  if (it == label_lookup_.end()) return std::nullopt;
  return it->second;
}

PromiseTemplate::PromiseTemplate(ValuedStructure delta_structure, ValuedStructure gamma_structure)
    : delta(std::move(delta_structure)), gamma(std::move(gamma_structure)) {
  if (!(delta.signature() == gamma.signature())) {
    throw Error(ErrorKind::kInvalidArgument, "template structures have different signatures");
  }
}

}  // namespace pvcsp
