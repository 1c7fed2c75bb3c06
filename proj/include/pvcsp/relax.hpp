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

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pvcsp/exactlp.hpp"
#include "pvcsp/instance.hpp"
#include "pvcsp/lattice.hpp"
#include "pvcsp/rational.hpp"
#include "pvcsp/structure.hpp"

namespace pvcsp::relax {

// lambda_j(t): owner = term j, index = flat tuple index of t.
// mu_x(a):     owner = variable x, index = label position of a.
enum class ColumnKind { kLambda, kMu };

struct ColumnKey {
  ColumnKind kind;
  std::size_t owner;
  std::size_t index;

  auto operator<=>(const ColumnKey&) const = default;
};

enum class EliminationReason { kOutsideDomain, kRefinement };

// Maps program columns to the (term, tuple) / (variable, label) pairs they
// stand for. Column order: terms in instance order with tuples in flat
// order, then variables in declaration order with labels in domain order.
struct ProgramLayout {
  std::vector<ColumnKey> columns;
  std::vector<std::pair<ColumnKey, EliminationReason>> eliminated;

  std::optional<std::size_t> column_of(const ColumnKey& key) const;
  std::size_t lambda_count() const;

  bool operator==(const ProgramLayout&) const = default;
};

// min sum lambda_j(t) f_j(t) subject to the marginal and normalization
// equalities; lambda_j(t) with f_j(t) = +inf are eliminated. The bounds
// <= 1 are implied by nonnegativity and normalization and are not encoded.
struct BlpProgram {
  lp::LinearProgram lp;
  ProgramLayout layout;
  std::size_t marginal_rows = 0;
  std::size_t normalization_rows = 0;
};

// The same system over unbounded integers.
struct AipProgram {
  lattice::IntegerMatrix matrix;
  std::vector<Integer> rhs;
  std::vector<Rational> objective;
  ProgramLayout layout;
};

BlpProgram build_blp(const ValuedStructure& delta, const Instance& instance);
AipProgram build_aip(const ValuedStructure& delta, const Instance& instance);

// +inf when infeasible.
ExtendedValue blp_value(const BlpProgram& blp);
ExtendedValue aip_value(const AipProgram& aip);

enum class StarProvenance { kFeasibleInterior, kOptimalFaceInterior };
const char* to_string(StarProvenance provenance);

struct StarPoint {
  std::vector<Rational> values;  // one per BLP column
  StarProvenance provenance = StarProvenance::kFeasibleInterior;
  ProgramLayout layout;
  lp::SupportProfile profile;  // of the polytope named by provenance
};

// A relative-interior point of the BLP feasibility polytope with cost <= u
// when one exists, else a relative-interior point of the optimal face.
// Throws kPreconditionViolated unless blp value <= u, and kInternalInvariant
// if the result fails its feasibility, cost, or support checks.
StarPoint select_star_point(const BlpProgram& blp, const Rational& u);

// Eliminates every q/r column whose star coordinate is zero. Throws
// kIndexMisalignment if the layouts differ.
AipProgram refine_aip(const AipProgram& aip, const StarPoint& star);

enum class Verdict { kYes, kNo };
const char* to_string(Verdict verdict);

struct SolveTrace {
  std::size_t blp_columns = 0;
  std::size_t blp_rows = 0;
  std::size_t domain_eliminated = 0;
  std::optional<ExtendedValue> blp_value;
  std::optional<StarProvenance> star_provenance;
  std::vector<ColumnKey> refinement_eliminated;
  std::optional<std::size_t> refined_columns;
  std::optional<ExtendedValue> aff_value;
};

struct SolveAnswer {
  Verdict verdict = Verdict::kNo;
  SolveTrace trace;
};

// BLP gate, star point, refined AIP gate.
SolveAnswer combined_solve(const ValuedStructure& delta, const Instance& instance);
// YES iff blp <= u.
SolveAnswer blp_only_solve(const ValuedStructure& delta, const Instance& instance);
// YES iff the unrefined AIP value <= u.
SolveAnswer aip_only_solve(const ValuedStructure& delta, const Instance& instance);

enum class Algorithm { kCombined, kBlpOnly };

// Produces a finite structure for instances with the given variable count.
using Sampler = std::function<ValuedStructure(std::size_t)>;
Sampler pass_through_sampler(ValuedStructure structure);

// Runs the finite-domain algorithm on sampler(|V|). Throws
// kSamplerSignatureMismatch when the sample's signature differs from the
// hint's or does not cover the instance.
SolveAnswer solve_with_sampler(const Sampler& sampler, const ValuedStructure* gamma2_hint,
                               const Instance& instance, Algorithm algorithm);

// Human-readable name of a column, e.g. "lambda[0:f](0,1)" or "mu[x](1)".
std::string describe_column(const ColumnKey& key, const ValuedStructure& delta,
                            const Instance& instance);

}  // namespace pvcsp::relax
