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
#include <vector>

#include "pvcsp/rational.hpp"

namespace pvcsp::lattice {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntegerMatrix identity(std::size_t n);
  // Throws Error(kDimensionMismatch) on ragged input.
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> column(std::size_t c) const;
  IntegerMatrix without_columns(const std::vector<bool>& drop) const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  bool operator==(const IntegerMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::vector<Integer> multiply(const IntegerMatrix& a, std::span<const Integer> x);
// Exact determinant by fraction-free elimination (square matrices only).
Integer determinant(const IntegerMatrix& a);

// A * U = H with U unimodular and H in column echelon form: column k < rank
// has its leading nonzero (positive) in row pivot_rows[k], pivot rows are
// strictly increasing, entries left of a pivot lie in [0, pivot), and columns
// rank.. are zero.
struct HermiteForm {
  IntegerMatrix h;
  IntegerMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

HermiteForm hermite_normal_form(const IntegerMatrix& a);

// The integer solutions of A x = b: particular + span_Z(kernel).
struct AffineLattice {
  std::vector<Integer> particular;
  std::vector<std::vector<Integer>> kernel;
};

// Empty optional iff A x = b has no integer solution. Throws
// Error(kDimensionMismatch) when b.size() != A.rows().
std::optional<AffineLattice> solve_integer_system(const IntegerMatrix& a, std::span<const Integer> b);

// min c.x over the lattice: +inf when empty, the constant value when c is
// orthogonal to every kernel vector, -inf otherwise.
ExtendedValue evaluate_affine_min(std::span<const Rational> c,
                                  const std::optional<AffineLattice>& lattice);

// value <= u in the extended order.
bool check_threshold(const ExtendedValue& value, const Rational& u);

}  // namespace pvcsp::lattice
