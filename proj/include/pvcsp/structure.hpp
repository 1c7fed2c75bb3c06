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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pvcsp/rational.hpp"

namespace pvcsp {

struct Symbol {
  std::string name;
  std::size_t arity = 1;

  bool operator==(const Symbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  // Throws Error(kInvalidArgument) on duplicate names, empty names or arity 0.
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const Signature& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

// Tuples over a finite domain are vectors of label positions. The flat index
// of a tuple is lexicographic with the first coordinate most significant.
using Tuple = std::vector<std::size_t>;

// Throws Error(kResourceGuard) if the count does not fit in size_t.
std::size_t tuple_count(std::size_t domain_size, std::size_t arity);
std::size_t encode_tuple(std::span<const std::size_t> tuple, std::size_t domain_size);
void decode_tuple(std::size_t index, std::size_t domain_size, std::span<std::size_t> out);
Tuple decode_tuple(std::size_t index, std::size_t domain_size, std::size_t arity);

// Finite-domain valued structure. Immutable after construction.
class ValuedStructure {
 public:
  // tables[s] must have tuple_count(domain.size(), arity(s)) entries.
  ValuedStructure(Signature signature, std::vector<std::string> domain,
                  std::vector<std::vector<ExtendedRational>> tables);

  const Signature& signature() const { return signature_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t domain_size() const { return domain_.size(); }
  std::optional<std::size_t> label_index(std::string_view label) const;

  const std::vector<ExtendedRational>& table(std::size_t symbol) const { return tables_[symbol]; }
  const ExtendedRational& cost(std::size_t symbol, std::span<const std::size_t> tuple) const {
    return tables_[symbol][encode_tuple(tuple, domain_.size())];
  }

  bool operator==(const ValuedStructure& other) const {
    return signature_ == other.signature_ && domain_ == other.domain_ &&
           tables_ == other.tables_;
  }

 private:
  Signature signature_;
  std::vector<std::string> domain_;
  std::unordered_map<std::string, std::size_t> label_lookup_;
  std::vector<std::vector<ExtendedRational>> tables_;
};

// Structures with identical signatures; domains may differ. The fractional
// homomorphism delta -> gamma is not verified here.
struct PromiseTemplate {
  PromiseTemplate(ValuedStructure delta_structure, ValuedStructure gamma_structure);

  ValuedStructure delta;
  ValuedStructure gamma;
};

}  // namespace pvcsp
