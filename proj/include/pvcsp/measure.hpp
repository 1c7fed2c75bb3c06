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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pvcsp/error.hpp"
#include "pvcsp/rational.hpp"
#include "pvcsp/structure.hpp"

namespace pvcsp {

// A total map D^m -> C over label positions, stored in flat tuple order.
class OperationTable {
 public:
  OperationTable() = default;
  OperationTable(std::size_t input_size, std::size_t output_size, std::size_t arity,
                 std::vector<std::uint32_t> values);

  // Builds the table by calling fn(tuple) for every tuple in flat order.
  template <typename Fn>
  static OperationTable tabulate(std::size_t input_size, std::size_t output_size,
                                 std::size_t arity, Fn&& fn) {
    const std::size_t count = tuple_count(input_size, arity);
    std::vector<std::uint32_t> values(count);
    Tuple tuple(arity);
    for (std::size_t i = 0; i < count; ++i) {
      decode_tuple(i, input_size, tuple);
      values[i] = static_cast<std::uint32_t>(fn(std::span<const std::size_t>(tuple)));
    }
    return OperationTable(input_size, output_size, arity, std::move(values));
  }

  static OperationTable identity(std::size_t domain_size);
  static OperationTable projection(std::size_t domain_size, std::size_t arity, std::size_t coordinate);

  std::size_t input_size() const { return input_size_; }
  std::size_t output_size() const { return output_size_; }
  std::size_t arity() const { return arity_; }
  const std::vector<std::uint32_t>& values() const { return values_; }

  std::size_t at(std::size_t flat_index) const { return values_[flat_index]; }
  std::size_t operator()(std::span<const std::size_t> args) const {
    return values_[encode_tuple(args, input_size_)];
  }

  auto operator<=>(const OperationTable&) const = default;
  bool operator==(const OperationTable&) const = default;

 private:
  std::size_t input_size_ = 0;
  std::size_t output_size_ = 0;
  std::size_t arity_ = 0;
  std::vector<std::uint32_t> values_;
};

// A finitely supported probability measure with exact weights. Equal
// elements are merged and atoms are kept sorted, so two measures are equal
// iff their atom lists are equal.
template <typename T>
class FiniteMeasure {
 public:
  using Atom = std::pair<T, Rational>;

  FiniteMeasure() = default;

  // Throws Error(kInvalidArgument) unless every weight is positive and the
  // weights sum to exactly 1.
  explicit FiniteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::stable_sort(atoms_.begin(), atoms_.end(),
                     [](const Atom& a, const Atom& b) { return a.first < b.first; });
    std::vector<Atom> merged;
    Rational total = 0;
    for (auto& atom : atoms_) {
      if (atom.second <= 0) {
        throw Error(ErrorKind::kInvalidArgument,
                    "measure weight " + to_string(atom.second) + " is not positive");
      }
      total += atom.second;
      if (!merged.empty() && merged.back().first == atom.first) {
        merged.back().second += atom.second;
      } else {
        merged.push_back(std::move(atom));
      }
    }
    if (total != 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  "measure weights sum to " + to_string(total) + ", expected 1");
    }
    atoms_ = std::move(merged);
  }

  static FiniteMeasure point_mass(T element) {
    std::vector<Atom> atoms;
    atoms.emplace_back(std::move(element), Rational(1));
    return FiniteMeasure(std::move(atoms));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  Rational weight_of(const T& element) const {
    for (const auto& [value, weight] : atoms_) {
      if (value == element) return weight;
    }
    return 0;
  }

  bool operator==(const FiniteMeasure& other) const { return atoms_ == other.atoms_; }

 private:
  std::vector<Atom> atoms_;
};

}  // namespace pvcsp
