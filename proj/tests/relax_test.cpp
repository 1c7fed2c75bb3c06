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

#include <doctest.h>

#include <random>

#include "pvcsp/error.hpp"
#include "pvcsp/generate.hpp"
#include "pvcsp/oracle.hpp"
#include "pvcsp/relax.hpp"
#include "support/oracles.hpp"

using namespace pvcsp;
using relax::ColumnKey;
using relax::ColumnKind;
using relax::StarProvenance;
using relax::Verdict;

namespace {

ExtendedRational inf() { return ExtendedRational::infinity(); }

ValuedStructure unary01() {
  return ValuedStructure(Signature({{"f", 1}}), {"0", "1"}, {{0L, 1L}});
}

ValuedStructure disequality() {
  return ValuedStructure(Signature({{"f", 2}}), {"0", "1"}, {{inf(), 0L, 0L, inf()}});
}

Instance unary_instance(Rational u) { return Instance({"x"}, {{"f", {"x"}}}, std::move(u)); }

Instance triangle() {
  return Instance({"x", "y", "z"}, {{"f", {"x", "y"}}, {"f", {"y", "z"}}, {"f", {"x", "z"}}}, 0);
}

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& error) {
    return error.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kInternalInvariant;
}

Rational cost_of(const relax::BlpProgram& blp, const std::vector<Rational>& point) {
  return lp::dot(blp.lp.objective, point);
}

gen::GeneratedCase random_case(std::uint64_t seed, std::size_t index) {
  gen::GeneratorConfig config;
  config.family = gen::Family::kRandom;
  config.seed = seed;
  return gen::generate_case(config, index);
}

// Column values of the integral point induced by an assignment.
Rational integral_value(const ColumnKey& key, const Instance& instance,
                        const std::vector<ResolvedTerm>& terms, const ValuedStructure& delta,
                        const Tuple& assignment) {
  if (key.kind == ColumnKind::kMu) return assignment[key.owner] == key.index ? 1 : 0;
  (void)instance;
  Tuple args;
  for (auto v : terms[key.owner].vars) args.push_back(assignment[v]);
  return encode_tuple(args, delta.domain_size()) == key.index ? 1 : 0;
}

}  // namespace

TEST_CASE("build_blp examples") {
  const auto blp = relax::build_blp(unary01(), unary_instance(0));
  CHECK(blp.layout.lambda_count() == 2);
  CHECK(blp.layout.columns.size() == 4);
  CHECK(blp.marginal_rows == 2);
  CHECK(blp.normalization_rows == 1);
  CHECK(relax::blp_value(blp) == ExtendedValue(Rational(0)));

  const auto empty = relax::build_blp(unary01(), Instance({"x"}, {}, 0));
  CHECK(empty.layout.columns.size() == 2);
  CHECK(empty.marginal_rows == 0);
  CHECK(empty.normalization_rows == 1);
  CHECK(relax::blp_value(empty) == ExtendedValue(Rational(0)));

  const auto repeated = relax::build_blp(disequality(), Instance({"x"}, {{"f", {"x", "x"}}}, 0));
  // Both marginals bind the same mu_x; the half/half point is feasible.
  CHECK(repeated.layout.eliminated.size() == 2);
  const auto oracle = testing::vertex_oracle(repeated.lp);
  REQUIRE(oracle.status == lp::LpStatus::kOptimal);
  CHECK(*oracle.value == 0);
  CHECK(relax::blp_value(repeated) == ExtendedValue(Rational(0)));
  CHECK(relax::combined_solve(disequality(), Instance({"x"}, {{"f", {"x", "x"}}}, 0)).verdict ==
        Verdict::kNo);
}

TEST_CASE("BLP column order follows terms, tuples, variables, labels") {
  const auto blp = relax::build_blp(disequality(), triangle());
  REQUIRE(blp.layout.columns.size() == 3 * 2 + 3 * 2);
  CHECK(blp.layout.columns[0] == ColumnKey{ColumnKind::kLambda, 0, 1});
  CHECK(blp.layout.columns[1] == ColumnKey{ColumnKind::kLambda, 0, 2});
  CHECK(blp.layout.columns[6] == ColumnKey{ColumnKind::kMu, 0, 0});
  CHECK(relax::describe_column(blp.layout.columns[1], disequality(), triangle()) ==
        "lambda[0:f](1,0)");
  CHECK(relax::describe_column(blp.layout.columns[7], disequality(), triangle()) == "mu[x](1)");
}

TEST_CASE("build_aip examples") {
  const auto aip = relax::build_aip(unary01(), unary_instance(0));
  CHECK(aip.layout == relax::build_blp(unary01(), unary_instance(0)).layout);
  CHECK(relax::aip_value(aip) == ExtendedValue::minus_infinity());

  CHECK(relax::aip_value(relax::build_aip(unary01(), Instance({"x"}, {}, 0))) ==
        ExtendedValue(Rational(0)));

  const ValuedStructure empty_domain(Signature({{"f", 1}}), {"0", "1"}, {{inf(), inf()}});
  CHECK(relax::aip_value(relax::build_aip(empty_domain, unary_instance(0))) ==
        ExtendedValue::plus_infinity());
}

TEST_CASE("select_star_point examples") {
  const ValuedStructure pinned(Signature({{"f", 1}}), {"0", "1"}, {{0L, inf()}});
  const auto single = relax::select_star_point(relax::build_blp(pinned, unary_instance(0)), 0);
  CHECK(single.provenance == StarProvenance::kFeasibleInterior);
  CHECK(single.values == std::vector<Rational>{1, 1, 0});

  const auto blp = relax::build_blp(unary01(), unary_instance(0));
  const auto half = relax::select_star_point(blp, Rational(1, 2));
  CHECK(half.provenance == StarProvenance::kFeasibleInterior);
  CHECK(half.values[0] > 0);
  CHECK(half.values[1] > 0);
  CHECK(cost_of(blp, half.values) <= Rational(1, 2));

  const auto quarter = relax::select_star_point(blp, Rational(1, 4));
  CHECK(quarter.provenance == StarProvenance::kFeasibleInterior);
  CHECK(quarter.values[0] > 0);
  CHECK(quarter.values[1] > 0);
  CHECK(cost_of(blp, quarter.values) <= Rational(1, 4));

  const auto face = relax::select_star_point(blp, 0);
  CHECK(face.provenance == StarProvenance::kOptimalFaceInterior);
  CHECK(face.values[0] == 1);
  CHECK(face.values[1] == 0);

  CHECK(kind_of([&] { relax::select_star_point(blp, -1); }) == ErrorKind::kPreconditionViolated);
}

TEST_CASE("refine_aip examples") {
  const auto blp = relax::build_blp(unary01(), unary_instance(1));
  const auto aip = relax::build_aip(unary01(), unary_instance(1));
  const auto all_positive = relax::select_star_point(blp, 1);
  const auto unchanged = relax::refine_aip(aip, all_positive);
  CHECK(unchanged.layout.columns == aip.layout.columns);
  CHECK(unchanged.matrix == aip.matrix);

  const auto face = relax::select_star_point(blp, 0);
  const auto refined = relax::refine_aip(aip, face);
  CHECK(!refined.layout.column_of({ColumnKind::kLambda, 0, 1}));
  CHECK(!refined.layout.column_of({ColumnKind::kMu, 0, 1}));
  CHECK(refined.layout.column_of({ColumnKind::kLambda, 0, 0}));
  CHECK(relax::aip_value(refined) == ExtendedValue(Rational(0)));
  bool recorded = false;
  for (const auto& [key, reason] : refined.layout.eliminated) {
    if (key == ColumnKey{ColumnKind::kMu, 0, 1}) {
      recorded = reason == relax::EliminationReason::kRefinement;
    }
  }
  CHECK(recorded);

  const auto other = relax::build_aip(disequality(), triangle());
  CHECK(kind_of([&] { relax::refine_aip(other, face); }) == ErrorKind::kIndexMisalignment);
}

TEST_CASE("combined_solve examples") {
  const auto cycle = relax::combined_solve(disequality(), triangle());
  CHECK(cycle.verdict == Verdict::kNo);
  CHECK(cycle.trace.blp_value == ExtendedValue(Rational(0)));
  CHECK(cycle.trace.aff_value == ExtendedValue::plus_infinity());
  REQUIRE(cycle.trace.star_provenance);

  const auto star = relax::select_star_point(relax::build_blp(disequality(), triangle()), 0);
  for (const auto& value : star.values) CHECK(value == Rational(1, 2));

  const Instance edge({"x", "y"}, {{"f", {"x", "y"}}}, 0);
  CHECK(relax::combined_solve(disequality(), edge).verdict == Verdict::kYes);

  const auto below = relax::combined_solve(unary01(), unary_instance(-1));
  CHECK(below.verdict == Verdict::kNo);
  CHECK(!below.trace.star_provenance);
}

TEST_CASE("blp_only_solve examples") {
  CHECK(relax::blp_only_solve(disequality(), triangle()).verdict == Verdict::kYes);
  const Instance loop({"x"}, {{"f", {"x", "x"}}}, -1);
  CHECK(relax::blp_only_solve(disequality(), loop).verdict == Verdict::kNo);
  CHECK(relax::blp_only_solve(disequality(), loop.with_threshold(0)).verdict == Verdict::kYes);

  gen::GeneratorConfig config;
  config.family = gen::Family::kSubmodular;
  config.seed = 17;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto generated = gen::generate_case(config, i);
    const bool yes = brute_force_min(generated.promise.delta, generated.instance) <=
                     ExtendedRational(generated.instance.threshold());
    CHECK((relax::blp_only_solve(generated.promise.delta, generated.instance).verdict ==
           Verdict::kYes) == yes);
  }
}

TEST_CASE("empty instances are decided by 0 <= u") {
  const Instance none({"x"}, {}, 0);
  CHECK(relax::combined_solve(unary01(), none).verdict == Verdict::kYes);
  CHECK(relax::combined_solve(unary01(), none.with_threshold(-1)).verdict == Verdict::kNo);
  CHECK(relax::combined_solve(unary01(), Instance({}, {}, 0)).verdict == Verdict::kYes);
}

TEST_CASE("solve_with_sampler examples") {
  const Instance edge({"x", "y"}, {{"f", {"x", "y"}}}, 0);
  for (auto algorithm : {relax::Algorithm::kCombined, relax::Algorithm::kBlpOnly}) {
    const auto sampled =
        relax::solve_with_sampler(relax::pass_through_sampler(disequality()), nullptr, triangle(), algorithm);
    const auto direct = algorithm == relax::Algorithm::kCombined
                            ? relax::combined_solve(disequality(), triangle())
                            : relax::blp_only_solve(disequality(), triangle());
    CHECK(sampled.verdict == direct.verdict);
  }

  // One-element substructure on the label attaining the minimum.
  const ValuedStructure costs(Signature({{"g", 1}}), {"a", "b", "c"}, {{3L, 1L, 2L}});
  const ValuedStructure only_b(Signature({{"g", 1}}), {"b"}, {{1L}});
  const Instance unary({"x"}, {{"g", {"x"}}}, 1);
  CHECK(brute_force_min(costs, unary) == ExtendedRational(1));
  const auto sampler = [&](std::size_t) { return only_b; };
  CHECK(relax::solve_with_sampler(sampler, &costs, unary, relax::Algorithm::kCombined).verdict ==
        Verdict::kYes);

  CHECK(kind_of([&] {
          relax::solve_with_sampler(relax::pass_through_sampler(unary01()), &costs, unary,
                                    relax::Algorithm::kCombined);
        }) == ErrorKind::kSamplerSignatureMismatch);
}

TEST_CASE("completeness, monotonicity and determinism on random templates") {
  int yes_cases = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const auto generated = random_case(77, i);
    const auto& delta = generated.promise.delta;
    const auto& instance = generated.instance;
    const auto combined = relax::combined_solve(delta, instance);
    const auto blp = relax::blp_only_solve(delta, instance);
    if (brute_force_min(delta, instance) <= ExtendedRational(instance.threshold())) {
      ++yes_cases;
      CHECK(combined.verdict == Verdict::kYes);
    }
    if (combined.verdict == Verdict::kYes) CHECK(blp.verdict == Verdict::kYes);
    const auto again = relax::combined_solve(delta, instance);
    CHECK(again.verdict == combined.verdict);
    CHECK(again.trace.refinement_eliminated == combined.trace.refinement_eliminated);
    CHECK(again.trace.aff_value == combined.trace.aff_value);
  }
  CHECK(yes_cases > 100);
}

TEST_CASE("star points are feasible, cheap enough and relatively interior") {
  int checked = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const auto generated = random_case(91, i);
    const auto& delta = generated.promise.delta;
    const auto& instance = generated.instance;
    const auto blp = relax::build_blp(delta, instance);
    const auto value = relax::blp_value(blp);
    if (!lattice::check_threshold(value, instance.threshold())) continue;
    ++checked;
    const auto star = relax::select_star_point(blp, instance.threshold());
    CHECK(lp::is_feasible_point(blp.lp, star.values));
    CHECK(cost_of(blp, star.values) <= instance.threshold());
    const auto polytope = star.provenance == StarProvenance::kFeasibleInterior
                              ? blp.lp
                              : lp::restrict_to_optimal_face(blp.lp);
    const auto flags = lp::support_profile(polytope).flags;
    for (std::size_t c = 0; c < flags.size(); ++c) {
      CHECK((star.values[c] > 0) == static_cast<bool>(flags[c]));
      CHECK(star.values[c] <= 1);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("refinement keeps every assignment supported by the star point") {
  int kept = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const auto generated = random_case(55, i);
    const auto& delta = generated.promise.delta;
    const auto& instance = generated.instance;
    const auto blp = relax::build_blp(delta, instance);
    if (!lattice::check_threshold(relax::blp_value(blp), instance.threshold())) continue;
    const auto star = relax::select_star_point(blp, instance.threshold());
    const auto refined = relax::refine_aip(relax::build_aip(delta, instance), star);
    const auto terms = resolve_terms(delta.signature(), instance);
    const std::size_t n = instance.variables().size();
    for (std::size_t flat = 0; flat < tuple_count(delta.domain_size(), n); ++flat) {
      const Tuple assignment = decode_tuple(flat, delta.domain_size(), n);
      bool supported = evaluate_cost(delta, terms, assignment).is_finite();
      for (std::size_t c = 0; c < blp.layout.columns.size() && supported; ++c) {
        if (integral_value(blp.layout.columns[c], instance, terms, delta, assignment) != 0 &&
            star.values[c] == 0) {
          supported = false;
        }
      }
      if (!supported) continue;
      ++kept;
      std::vector<Integer> x;
      for (const auto& key : refined.layout.columns) {
        x.emplace_back(integral_value(key, instance, terms, delta, assignment).get_num());
      }
      CHECK(lattice::multiply(refined.matrix, x) == refined.rhs);
    }
  }
  CHECK(kept > 100);
}
