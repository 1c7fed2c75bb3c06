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
#include <span>
#include <vector>

#include "pvcsp/rational.hpp"

namespace pvcsp::lp {

// min objective . x  subject to  rows * x = rhs,  x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;

  // Appends one equality row.
  void add_row(std::vector<Rational> coefficients, Rational value);
  // Throws Error(kDimensionMismatch) on inconsistent sizes.
  void validate() const;
};

enum class LpStatus { kInfeasible, kUnbounded, kOptimal };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;              // set when kOptimal
  std::vector<Rational> point;  // a basic optimal solution when kOptimal
};

// Two-phase primal simplex over exact rationals with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

// flags[i] is true iff some feasible point has x_i > 0.
struct SupportProfile {
  std::vector<bool> flags;

  bool operator==(const SupportProfile&) const = default;
};

// A feasible point whose positive coordinates are exactly the profile's flags.
struct InteriorWitness {
  std::vector<Rational> point;
  SupportProfile profile;
};

// Throws Error(kInfeasibleRegion) when the feasible region is empty.
SupportProfile support_profile(const LinearProgram& lp);
std::vector<Rational> relative_interior_point(const LinearProgram& lp);
InteriorWitness relative_interior(const LinearProgram& lp);

// lp plus the row objective . x = optimum. Throws kInfeasibleRegion or
// kUnboundedObjective when there is no optimum.
LinearProgram restrict_to_optimal_face(const LinearProgram& lp);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
// Exact check of rows * x = rhs and x >= 0.
bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> x);

}  // namespace pvcsp::lp
