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

#include "pvcsp/exactlp.hpp"

#include <optional>
#include <set>
#include <string>

#include "pvcsp/error.hpp"

namespace pvcsp::lp {

void LinearProgram::add_row(std::vector<Rational> coefficients, Rational value) {
  rows.push_back(std::move(coefficients));
  rhs.push_back(std::move(value));
}

void LinearProgram::validate() const {
  if (rows.size() != rhs.size()) {
    throw Error(ErrorKind::kDimensionMismatch, std::to_string(rows.size()) + " rows but " +
                                                   std::to_string(rhs.size()) + " right-hand sides");
  }
  if (objective.size() != num_vars) {
    throw Error(ErrorKind::kDimensionMismatch, "objective length " +
                                                   std::to_string(objective.size()) + " != " +
                                                   std::to_string(num_vars));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != num_vars) {
      throw Error(ErrorKind::kDimensionMismatch, "row " + std::to_string(i) + " has length " +
                                                     std::to_string(rows[i].size()));
    }
  }
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) total += a[i] * b[i];
  }
  return total;
}

bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& v : x) {
    if (sgn(v) < 0) return false;
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (dot(lp.rows[i], x) != lp.rhs[i]) return false;
  }
  return true;
}

namespace {

// Dense tableau in canonical form: the basic columns form an identity.
// Columns [0, n) are structural, [n, n + m) artificial (until dropped).
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : n_(lp.num_vars) {
    const std::size_t m = lp.rows.size();
    width_ = n_ + m;
    cells_.assign(m, std::vector<Rational>(width_));
    rhs_.resize(m);
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const bool flip = sgn(lp.rhs[i]) < 0;
      for (std::size_t j = 0; j < n_; ++j) cells_[i][j] = flip ? Rational(-lp.rows[i][j]) : lp.rows[i][j];
      rhs_[i] = flip ? Rational(-lp.rhs[i]) : lp.rhs[i];
      cells_[i][n_ + i] = 1;
      basis_[i] = n_ + i;
    }
  }

  // Phase one; returns false when infeasible. On success the artificial
  // columns are gone and redundant rows are dropped.
  bool make_feasible() {
    std::vector<Rational> cost(width_);
    for (std::size_t j = n_; j < width_; ++j) cost[j] = 1;
    const auto outcome = optimize(cost);
    (void)outcome;  // phase one is bounded below by 0
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
      if (basis_[i] >= n_) infeasibility += rhs_[i];
    }
    if (sgn(infeasibility) != 0) return false;

    for (std::size_t i = 0; i < rhs_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(cells_[i][j]) != 0) {
          entering = j;
          break;
        }
      }
      if (entering) {
        pivot(i, *entering, nullptr);
        ++i;
      } else {
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (auto& row : cells_) row.resize(n_);
    width_ = n_;
    return true;
  }

  struct Outcome {
    bool bounded = true;
    std::size_t ray_column = 0;  // entering column when unbounded
  };

  // Minimizes cost . x from the current basis with Bland's rule.
  Outcome optimize(const std::vector<Rational>& cost) {
    std::vector<Rational> reduced(cost.begin(), cost.begin() + static_cast<std::ptrdiff_t>(width_));
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(cells_[i][j]) != 0) reduced[j] -= cb * cells_[i][j];
      }
    }
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(reduced[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return {};
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rhs_.size(); ++i) {
        if (sgn(cells_[i][*entering]) <= 0) continue;
        Rational ratio = rhs_[i] / cells_[i][*entering];
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return {false, *entering};
      pivot(*leaving, *entering, &reduced);
    }
  }

  std::vector<Rational> point() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

  // The point at step 1 along the unbounded ray of `column`.
  std::vector<Rational> ray_point(std::size_t column) const {
    std::vector<Rational> x = point();
    x[column] += 1;
    for (std::size_t i = 0; i < rhs_.size(); ++i) x[basis_[i]] -= cells_[i][column];
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t column, std::vector<Rational>* reduced) {
    const Rational inverse = 1 / cells_[row][column];
    auto& pivot_row = cells_[row];
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(pivot_row[j]) != 0) pivot_row[j] *= inverse;
    }
    rhs_[row] *= inverse;
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
      if (i == row || sgn(cells_[i][column]) == 0) continue;
      const Rational factor = cells_[i][column];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(pivot_row[j]) != 0) cells_[i][j] -= factor * pivot_row[j];
      }
      rhs_[i] -= factor * rhs_[row];
    }
    if (reduced != nullptr && sgn((*reduced)[column]) != 0) {
      const Rational factor = (*reduced)[column];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(pivot_row[j]) != 0) (*reduced)[j] -= factor * pivot_row[j];
      }
    }
    basis_[row] = column;
  }

  std::size_t n_;
  std::size_t width_;
  std::vector<std::vector<Rational>> cells_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

Tableau feasible_tableau(const LinearProgram& lp) {
  lp.validate();
  Tableau tableau(lp);
  if (!tableau.make_feasible()) {
    throw Error(ErrorKind::kInfeasibleRegion, "the feasible region is empty");
  }
  return tableau;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  lp.validate();
  Tableau tableau(lp);
  LpResult result;
  if (!tableau.make_feasible()) return result;
  if (!tableau.optimize(lp.objective).bounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.point = tableau.point();
  result.value = dot(lp.objective, result.point);
  return result;
}

InteriorWitness relative_interior(const LinearProgram& lp) {
  Tableau tableau = feasible_tableau(lp);
  const std::size_t n = lp.num_vars;
  InteriorWitness witness;
  witness.profile.flags.assign(n, false);

  std::set<std::vector<Rational>> witnesses;
  auto record = [&](std::vector<Rational> x) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(x[j]) > 0) witness.profile.flags[j] = true;
    }
    witnesses.insert(std::move(x));
  };
  record(tableau.point());

  // Maximize each coordinate not yet seen positive; the basis carries over
  // between solves since every intermediate basis is feasible.
  std::vector<Rational> cost(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (witness.profile.flags[i]) continue;
    cost.assign(n, Rational(0));
    cost[i] = -1;
    const auto outcome = tableau.optimize(cost);
    std::vector<Rational> x = outcome.bounded ? tableau.point() : tableau.ray_point(outcome.ray_column);
    if (sgn(x[i]) > 0) record(std::move(x));
  }

  witness.point.assign(n, Rational(0));
  for (const auto& x : witnesses) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(x[j]) != 0) witness.point[j] += x[j];
    }
  }
  const Rational scale(1, static_cast<unsigned long>(witnesses.size()));
  for (auto& v : witness.point) v *= scale;
  return witness;
}

SupportProfile support_profile(const LinearProgram& lp) { return relative_interior(lp).profile; }

std::vector<Rational> relative_interior_point(const LinearProgram& lp) {
  return relative_interior(lp).point;
}

LinearProgram restrict_to_optimal_face(const LinearProgram& lp) {
  const LpResult result = solve_lp(lp);
  if (result.status == LpStatus::kInfeasible) {
    throw Error(ErrorKind::kInfeasibleRegion, "no optimal face of an infeasible program");
  }
  if (result.status == LpStatus::kUnbounded) {
    throw Error(ErrorKind::kUnboundedObjective, "objective is unbounded below");
  }
  LinearProgram face = lp;
  face.add_row(lp.objective, result.value);
  return face;
}

}  // namespace pvcsp::lp
