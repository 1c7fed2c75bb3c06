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

#include "pvcsp/relax.hpp"

#include <limits>

#include "pvcsp/error.hpp"

namespace pvcsp::relax {

std::optional<std::size_t> ProgramLayout::column_of(const ColumnKey& key) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == key) return c;
  }
  return std::nullopt;
}

std::size_t ProgramLayout::lambda_count() const {
  std::size_t count = 0;
  for (const auto& key : columns) count += key.kind == ColumnKind::kLambda ? 1 : 0;
  return count;
}

const char* to_string(StarProvenance provenance) {
  return provenance == StarProvenance::kFeasibleInterior ? "FeasibleInterior"
                                                          : "OptimalFaceInterior";
}

const char* to_string(Verdict verdict) { return verdict == Verdict::kYes ? "YES" : "NO"; }

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// The constraint system shared by both relaxations, with sparse 0/+-1 rows.
struct Skeleton {
  ProgramLayout layout;
  std::vector<std::vector<std::pair<std::size_t, int>>> rows;
  std::vector<int> rhs;
  std::vector<Rational> objective;
  std::size_t marginal_rows = 0;
  std::size_t normalization_rows = 0;
};

Skeleton build_skeleton(const ValuedStructure& delta, const Instance& instance) {
  const auto terms = resolve_terms(delta.signature(), instance);
  const std::size_t d = delta.domain_size();
  Skeleton sk;

  std::vector<std::vector<std::size_t>> lambda_column(terms.size());
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const auto& table = delta.table(terms[j].symbol);
    lambda_column[j].assign(table.size(), kNone);
    for (std::size_t t = 0; t < table.size(); ++t) {
      const ColumnKey key{ColumnKind::kLambda, j, t};
      if (table[t].is_infinite()) {
        sk.layout.eliminated.emplace_back(key, EliminationReason::kOutsideDomain);
        continue;
      }
      lambda_column[j][t] = sk.layout.columns.size();
      sk.layout.columns.push_back(key);
      sk.objective.push_back(table[t].value());
    }
  }
  const std::size_t mu_base = sk.layout.columns.size();
  for (std::size_t x = 0; x < instance.variables().size(); ++x) {
    for (std::size_t a = 0; a < d; ++a) {
      sk.layout.columns.push_back({ColumnKind::kMu, x, a});
      sk.objective.push_back(0);
    }
  }
  auto mu_column = [&](std::size_t x, std::size_t a) { return mu_base + x * d + a; };

  // Marginals: sum_{t : t_l = a} lambda_j(t) - mu_{x_l}(a) = 0.
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const std::size_t arity = terms[j].vars.size();
    const std::size_t first = sk.rows.size();
    sk.rows.resize(first + arity * d);
    Tuple tuple(arity);
    for (std::size_t t = 0; t < lambda_column[j].size(); ++t) {
      if (lambda_column[j][t] == kNone) continue;
      decode_tuple(t, d, tuple);
      for (std::size_t l = 0; l < arity; ++l) {
        sk.rows[first + l * d + tuple[l]].emplace_back(lambda_column[j][t], 1);
      }
    }
    for (std::size_t l = 0; l < arity; ++l) {
      for (std::size_t a = 0; a < d; ++a) {
        sk.rows[first + l * d + a].emplace_back(mu_column(terms[j].vars[l], a), -1);
      }
    }
  }
  sk.marginal_rows = sk.rows.size();
  sk.rhs.assign(sk.rows.size(), 0);

  for (std::size_t x = 0; x < instance.variables().size(); ++x) {
    std::vector<std::pair<std::size_t, int>> row;
    for (std::size_t a = 0; a < d; ++a) row.emplace_back(mu_column(x, a), 1);
    sk.rows.push_back(std::move(row));
    sk.rhs.push_back(1);
  }
  sk.normalization_rows = instance.variables().size();
  return sk;
}

BlpProgram to_blp(const Skeleton& sk) {
  BlpProgram blp;
  blp.layout = sk.layout;
  blp.marginal_rows = sk.marginal_rows;
  blp.normalization_rows = sk.normalization_rows;
  blp.lp.num_vars = sk.layout.columns.size();
  blp.lp.objective = sk.objective;
  for (std::size_t r = 0; r < sk.rows.size(); ++r) {
    std::vector<Rational> row(blp.lp.num_vars);
    for (const auto& [c, v] : sk.rows[r]) row[c] += v;
    blp.lp.add_row(std::move(row), sk.rhs[r]);
  }
  return blp;
}

AipProgram to_aip(const Skeleton& sk) {
  AipProgram aip;
  aip.layout = sk.layout;
  aip.objective = sk.objective;
  aip.matrix = lattice::IntegerMatrix(sk.rows.size(), sk.layout.columns.size());
  for (std::size_t r = 0; r < sk.rows.size(); ++r) {
    for (const auto& [c, v] : sk.rows[r]) aip.matrix(r, c) += v;
    aip.rhs.emplace_back(sk.rhs[r]);
  }
  return aip;
}

std::vector<bool> positive_pattern(const std::vector<Rational>& x) {
  std::vector<bool> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sgn(x[i]) > 0;
  return out;
}

void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::kInternalInvariant, "star point: " + what);
}

}  // namespace

BlpProgram build_blp(const ValuedStructure& delta, const Instance& instance) {
  return to_blp(build_skeleton(delta, instance));
}

AipProgram build_aip(const ValuedStructure& delta, const Instance& instance) {
  return to_aip(build_skeleton(delta, instance));
}

ExtendedValue blp_value(const BlpProgram& blp) {
  const lp::LpResult result = lp::solve_lp(blp.lp);
  switch (result.status) {
    case lp::LpStatus::kInfeasible: return ExtendedValue::plus_infinity();
    case lp::LpStatus::kUnbounded: return ExtendedValue::minus_infinity();
    case lp::LpStatus::kOptimal: break;
  }
  return ExtendedValue(result.value);
}

ExtendedValue aip_value(const AipProgram& aip) {
  return lattice::evaluate_affine_min(aip.objective,
                                      lattice::solve_integer_system(aip.matrix, aip.rhs));
}

StarPoint select_star_point(const BlpProgram& blp, const Rational& u) {
  const lp::LpResult optimum = lp::solve_lp(blp.lp);
  if (optimum.status != lp::LpStatus::kOptimal || optimum.value > u) {
    throw Error(ErrorKind::kPreconditionViolated, "blp value is not <= " + pvcsp::to_string(u));
  }
  const Rational& m = optimum.value;

  StarPoint star;
  star.layout = blp.layout;
  lp::InteriorWitness interior = lp::relative_interior(blp.lp);
  const Rational cost_p = lp::dot(blp.lp.objective, interior.point);
  if (cost_p <= u) {
    star.values = std::move(interior.point);
    star.profile = std::move(interior.profile);
  } else if (m < u) {
    // Any theta in [theta*, 1) keeps cost <= u; the midpoint keeps the
    // combination strictly inside.
    const Rational theta_star = (cost_p - u) / (cost_p - m);
    const Rational theta = (theta_star + 1) / 2;
    star.values.resize(interior.point.size());
    for (std::size_t i = 0; i < star.values.size(); ++i) {
      star.values[i] = (1 - theta) * interior.point[i] + theta * optimum.point[i];
    }
    star.profile = std::move(interior.profile);
  } else {
    lp::LinearProgram face = blp.lp;
    face.add_row(blp.lp.objective, m);
    lp::InteriorWitness face_interior = lp::relative_interior(face);
    star.values = std::move(face_interior.point);
    star.profile = std::move(face_interior.profile);
    star.provenance = StarProvenance::kOptimalFaceInterior;
  }

  require(lp::is_feasible_point(blp.lp, star.values), "not feasible");
  require(lp::dot(blp.lp.objective, star.values) <= u, "cost exceeds the threshold");
  require(positive_pattern(star.values) == star.profile.flags,
          "support differs from the polytope's support profile");
  return star;
}

AipProgram refine_aip(const AipProgram& aip, const StarPoint& star) {
  if (!(aip.layout.columns == star.layout.columns) || star.values.size() != aip.layout.columns.size()) {
    throw Error(ErrorKind::kIndexMisalignment, "star point and AIP use different column layouts");
  }
  std::vector<bool> drop(star.values.size());
  AipProgram refined;
  refined.rhs = aip.rhs;
  refined.layout.eliminated = aip.layout.eliminated;
  for (std::size_t c = 0; c < star.values.size(); ++c) {
    drop[c] = sgn(star.values[c]) == 0;
    if (drop[c]) {
      refined.layout.eliminated.emplace_back(aip.layout.columns[c], EliminationReason::kRefinement);
    } else {
      refined.layout.columns.push_back(aip.layout.columns[c]);
      refined.objective.push_back(aip.objective[c]);
    }
  }
  refined.matrix = aip.matrix.without_columns(drop);
  return refined;
}

namespace {

SolveAnswer run(const ValuedStructure& delta, const Instance& instance, bool use_blp, bool use_aip,
                bool refine) {
  const Skeleton sk = build_skeleton(delta, instance);
  const Rational& u = instance.threshold();
  SolveAnswer answer;
  SolveTrace& trace = answer.trace;
  trace.blp_columns = sk.layout.columns.size();
  trace.blp_rows = sk.rows.size();
  trace.domain_eliminated = sk.layout.eliminated.size();

  std::optional<BlpProgram> blp;
  if (use_blp) {
    blp = to_blp(sk);
    trace.blp_value = blp_value(*blp);
    if (!lattice::check_threshold(*trace.blp_value, u)) {
      answer.verdict = Verdict::kNo;
      return answer;
    }
  }
  if (!use_aip) {
    answer.verdict = Verdict::kYes;
    return answer;
  }
  AipProgram aip = to_aip(sk);
  if (refine) {
    const StarPoint star = select_star_point(*blp, u);
    trace.star_provenance = star.provenance;
    aip = refine_aip(aip, star);
    for (const auto& [key, reason] : aip.layout.eliminated) {
      if (reason == EliminationReason::kRefinement) trace.refinement_eliminated.push_back(key);
    }
  }
  trace.refined_columns = aip.layout.columns.size();
  trace.aff_value = aip_value(aip);
  answer.verdict = lattice::check_threshold(*trace.aff_value, u) ? Verdict::kYes : Verdict::kNo;
  return answer;
}

}  // namespace

SolveAnswer combined_solve(const ValuedStructure& delta, const Instance& instance) {
  return run(delta, instance, true, true, true);
}

SolveAnswer blp_only_solve(const ValuedStructure& delta, const Instance& instance) {
  return run(delta, instance, true, false, false);
}

SolveAnswer aip_only_solve(const ValuedStructure& delta, const Instance& instance) {
  return run(delta, instance, false, true, false);
}

Sampler pass_through_sampler(ValuedStructure structure) {
  return [structure = std::move(structure)](std::size_t) { return structure; };
}

SolveAnswer solve_with_sampler(const Sampler& sampler, const ValuedStructure* gamma2_hint,
                               const Instance& instance, Algorithm algorithm) {
  const ValuedStructure sample = sampler(instance.variables().size());
  if (gamma2_hint != nullptr && !(gamma2_hint->signature() == sample.signature())) {
    throw Error(ErrorKind::kSamplerSignatureMismatch,
                "sample signature differs from the target structure's");
  }
  const auto issues = validate_instance(sample, instance);
  if (!issues.empty()) {
    throw Error(ErrorKind::kSamplerSignatureMismatch, "sample does not cover the instance: " +
                                                          issues.front().message);
  }
  return algorithm == Algorithm::kCombined ? combined_solve(sample, instance)
                                           : blp_only_solve(sample, instance);
}

std::string describe_column(const ColumnKey& key, const ValuedStructure& delta,
                            const Instance& instance) {
  if (key.kind == ColumnKind::kMu) {
    return "mu[" + instance.variables()[key.owner] + "](" + delta.domain()[key.index] + ")";
  }
  const Term& term = instance.terms()[key.owner];
  std::string out = "lambda[" + std::to_string(key.owner) + ":" + term.symbol + "](";
  const Tuple tuple = decode_tuple(key.index, delta.domain_size(), term.args.size());
  for (std::size_t l = 0; l < tuple.size(); ++l) {
    if (l) out += ",";
    out += delta.domain()[tuple[l]];
  }
  return out + ")";
}

}  // namespace pvcsp::relax
