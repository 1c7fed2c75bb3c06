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

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "pvcsp/error.hpp"
#include "pvcsp/generate.hpp"
#include "pvcsp/oracle.hpp"
#include "pvcsp/theory.hpp"
#include "support/oracles.hpp"

using namespace pvcsp;
using namespace pvcsp::theory;

namespace {

ExtendedRational inf() { return ExtendedRational::infinity(); }
ExtendedRational q(const char* text) { return parse_extended_rational(text); }

std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

ValuedStructure unary(std::vector<ExtendedRational> costs) {
  const std::size_t n = costs.size();
  return ValuedStructure(Signature({{"f", 1}}), labels(n), {std::move(costs)});
}

ValuedStructure binary(std::vector<ExtendedRational> costs) {
  return ValuedStructure(Signature({{"f", 2}}), labels(2), {std::move(costs)});
}

ValuedStructure disequality() { return binary({inf(), 0L, 0L, inf()}); }

OperationTable parity3() {
  return OperationTable::tabulate(2, 2, 3, [](auto t) { return (t[0] + t[1] + t[2]) % 2; });
}

OperationTable map_of(std::vector<std::uint32_t> values, std::size_t output_size) {
  const std::size_t n = values.size();
  return OperationTable(n, output_size, 1, std::move(values));
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

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
}

// Copy of delta with about a third of the finite entries lowered to 0.
ValuedStructure lowered(std::mt19937_64& rng, const ValuedStructure& delta) {
  std::vector<std::vector<ExtendedRational>> tables;
  for (std::size_t s = 0; s < delta.signature().size(); ++s) {
    auto table = delta.table(s);
    for (auto& entry : table) {
      if (pick(rng, 3) == 0) entry = ExtendedRational(0);
    }
    tables.push_back(std::move(table));
  }
  return ValuedStructure(delta.signature(), delta.domain(), std::move(tables));
}

// Same signature and domain as delta, every entry drawn afresh.
ValuedStructure resampled(std::mt19937_64& rng, const ValuedStructure& delta) {
  static const char* const kCosts[] = {"0", "1", "1/2", "2", "inf"};
  std::vector<std::vector<ExtendedRational>> tables;
  for (std::size_t s = 0; s < delta.signature().size(); ++s) {
    std::vector<ExtendedRational> table(delta.table(s).size());
    for (auto& entry : table) entry = parse_extended_rational(kCosts[pick(rng, 5)]);
    tables.push_back(std::move(table));
  }
  return ValuedStructure(delta.signature(), delta.domain(), std::move(tables));
}

Instance random_instance(std::mt19937_64& rng, const Signature& signature) {
  const std::size_t n = 1 + pick(rng, 4);
  std::vector<std::string> variables;
  for (std::size_t i = 0; i < n; ++i) variables.push_back("v" + std::to_string(i));
  std::vector<Term> terms;
  const std::size_t m = pick(rng, 6);
  for (std::size_t t = 0; t < m; ++t) {
    const auto& symbol = signature[pick(rng, signature.size())];
    std::vector<std::string> args;
    for (std::size_t j = 0; j < symbol.arity; ++j) args.push_back(variables[pick(rng, n)]);
    terms.push_back({symbol.name, std::move(args)});
  }
  return Instance(std::move(variables), std::move(terms), 0);
}

// Least violating (symbol, tuple) by direct evaluation of the homomorphism
// inequality.
std::optional<std::pair<std::size_t, Tuple>> naive_frachom_violation(
    const FractionalHomomorphism& chi, const ValuedStructure& delta,
    const ValuedStructure& gamma) {
  for (std::size_t s = 0; s < delta.signature().size(); ++s) {
    const std::size_t arity = delta.signature()[s].arity;
    for (std::size_t flat = 0; flat < tuple_count(delta.domain_size(), arity); ++flat) {
      const Tuple a = decode_tuple(flat, delta.domain_size(), arity);
      ExtendedRational lhs(0);
      for (const auto& [h, w] : chi.atoms()) {
        Tuple image;
        for (auto x : a) image.push_back(h.at(x));
        const auto& c = gamma.cost(s, image);
        lhs = c.is_infinite() ? inf() : (lhs.is_infinite() ? lhs : ExtendedRational(lhs.value() + w * c.value()));
      }
      if (!(lhs <= delta.cost(s, a))) return std::make_pair(s, a);
    }
  }
  return std::nullopt;
}

// Block-multiset costs by enumerating every sequence of tuples in D^m and
// grouping by the element each coordinate sequence realizes.
ValuedStructure naive_block_multiset(const ValuedStructure& delta, const BlockPartition& partition) {
  const BlockMultisetDomain domain(delta.domain_size(), partition);
  const std::size_t m = partition.arity();
  const std::size_t d = delta.domain_size();
  std::vector<std::vector<ExtendedRational>> tables;
  for (std::size_t s = 0; s < delta.signature().size(); ++s) {
    const std::size_t k = delta.signature()[s].arity;
    std::vector<ExtendedRational> table(tuple_count(domain.size(), k), inf());
    for (std::size_t flat = 0; flat < tuple_count(d, k * m); ++flat) {
      const Tuple digits = decode_tuple(flat, d, k * m);
      Tuple elements;
      for (std::size_t j = 0; j < k; ++j) {
        elements.push_back(domain.index_of_tuple(std::span(digits).subspan(j * m, m)));
      }
      ExtendedRational total(0);
      for (std::size_t i = 0; i < m && total.is_finite(); ++i) {
        Tuple column;
        for (std::size_t j = 0; j < k; ++j) column.push_back(digits[j * m + i]);
        const auto& c = delta.cost(s, column);
        total = c.is_infinite() ? inf() : ExtendedRational(total.value() + c.value());
      }
      if (total.is_finite()) total = ExtendedRational(total.value() / Rational(static_cast<long>(m)));
      auto& slot = table[encode_tuple(elements, domain.size())];
      if (total < slot) slot = total;
    }
    tables.push_back(std::move(table));
  }
  return ValuedStructure(delta.signature(), domain.labels(delta.domain()), std::move(tables));
}

bool fully_symmetric(const OperationTable& g) {
  const std::size_t m = g.arity();
  for (std::size_t flat = 0; flat < tuple_count(g.input_size(), m); ++flat) {
    Tuple t = decode_tuple(flat, g.input_size(), m);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    do {
      Tuple permuted;
      for (auto i : order) permuted.push_back(t[i]);
      if (g(permuted) != g(t)) return false;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return true;
}

FractionalHomomorphism identity_on(std::size_t n) {
  return FractionalHomomorphism::point_mass(OperationTable::identity(n));
}

void check_same(const CheckResult& a, const CheckResult& b) {
  CHECK(a.holds == b.holds);
  REQUIRE(a.violation.has_value() == b.violation.has_value());
  if (a.violation) {
    CHECK(a.violation->symbol == b.violation->symbol);
    CHECK(a.violation->tuples == b.violation->tuples);
    CHECK(a.violation->lhs == b.violation->lhs);
    CHECK(a.violation->rhs == b.violation->rhs);
  }
}

}  // namespace

TEST_CASE("check_fractional_homomorphism examples") {
  const auto delta = unary({inf(), 0L, 2L});
  CHECK(check_fractional_homomorphism(identity_on(3), delta, delta).holds);

  const auto dearer = unary({inf(), 1L, 3L});
  const auto failed = check_fractional_homomorphism(identity_on(3), delta, dearer);
  CHECK(!failed.holds);
  REQUIRE(failed.violation);
  CHECK(failed.violation->symbol == 0);
  CHECK(failed.violation->tuples == std::vector<Tuple>{{1}});
  CHECK(failed.violation->lhs == ExtendedRational(1));
  CHECK(failed.violation->rhs == ExtendedRational(0));
  CHECK(naive_frachom_violation(identity_on(3), delta, dearer)->second == Tuple{1});

  // Each map violates one inequality; their average meets both with equality.
  const auto flat = unary({1L, 1L});
  const auto skew = unary({0L, 2L});
  const auto id = OperationTable::identity(2);
  const auto swap = map_of({1, 0}, 2);
  CHECK(!check_fractional_homomorphism(FractionalHomomorphism::point_mass(id), flat, skew).holds);
  CHECK(!check_fractional_homomorphism(FractionalHomomorphism::point_mass(swap), flat, skew).holds);
  const FractionalHomomorphism mixed({{id, Rational(1, 2)}, {swap, Rational(1, 2)}});
  CHECK(check_fractional_homomorphism(mixed, flat, skew).holds);

  CHECK(kind_of([&] { check_fractional_homomorphism(identity_on(2), delta, delta); }) ==
        ErrorKind::kDomainMismatch);
}

TEST_CASE("check_promise_fpol examples") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    const auto delta = testing::random_structure(rng, 2, 2, 2);
    std::vector<std::pair<OperationTable, Rational>> atoms;
    for (std::size_t i = 0; i < 3; ++i) atoms.emplace_back(OperationTable::projection(2, 3, i), Rational(1, 3));
    const auto omega = PromiseFractionalPolymorphism::uniform(FiniteMeasure<OperationTable>(atoms));
    CHECK(check_promise_fpol(omega, PromiseTemplate(delta, delta)).holds);
  }

  const auto xor_structure = gen::xor_structure();
  const auto parity = PromiseFractionalPolymorphism::uniform(
      FiniteMeasure<OperationTable>::point_mass(parity3()));
  CHECK(check_promise_fpol(parity, PromiseTemplate(xor_structure, xor_structure)).holds);

  const auto zero = PromiseFractionalPolymorphism::uniform(FiniteMeasure<OperationTable>::point_mass(
      OperationTable::tabulate(2, 2, 2, [](auto) { return 0; })));
  const auto failed = check_promise_fpol(zero, PromiseTemplate(disequality(), disequality()));
  CHECK(!failed.holds);
  REQUIRE(failed.violation);
  CHECK(failed.violation->tuples == std::vector<Tuple>{{0, 1}, {0, 1}});
  CHECK(failed.violation->lhs == inf());
  CHECK(failed.violation->rhs == ExtendedRational(0));

  CHECK(kind_of([&] { check_promise_fpol(parity, PromiseTemplate(unary({0L, 0L, 0L}), unary({0L, 0L, 0L}))); }) ==
        ErrorKind::kDomainMismatch);
}

TEST_CASE("zero-weight projections do not enter the right-hand side") {
  // f(1) = inf is ignored when the second projection has weight 0.
  const auto delta = unary({0L, inf()});
  const auto first = OperationTable::projection(2, 2, 0);
  const PromiseFractionalPolymorphism omega({1, 0}, FiniteMeasure<OperationTable>::point_mass(first));
  CHECK(check_promise_fpol(omega, PromiseTemplate(delta, delta)).holds);
}

TEST_CASE("check_block_symmetry examples") {
  CHECK(check_block_symmetry(OperationTable::identity(3), BlockPartition::single(1)));
  CHECK(check_block_symmetry(parity3(), BlockPartition::single(3)));
  const std::vector<std::size_t> sizes{2, 1};
  CHECK(!check_block_symmetry(OperationTable::projection(2, 3, 0), BlockPartition::from_sizes(sizes)));
  CHECK(check_block_symmetry(OperationTable::projection(2, 3, 2), BlockPartition::from_sizes(sizes)));
  CHECK(!check_block_symmetry(parity3(), BlockPartition::single(2)));
  CHECK(kind_of([] { BlockPartition({{0, 1}, {1}}); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { BlockPartition({{0}, {2}}); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("single-block symmetry agrees with all permutations") {
  std::mt19937_64 rng(23);
  int symmetric = 0;
  for (int round = 0; round < 400; ++round) {
    const std::size_t m = 1 + pick(rng, 4);
    const std::size_t d = 2 + pick(rng, 2 - (m == 4 ? 1 : 0));
    // Half the tables are built symmetric by sorting the arguments.
    const bool sorted = round % 2 == 0;
    std::vector<std::uint32_t> noise(tuple_count(d, m));
    for (auto& v : noise) v = static_cast<std::uint32_t>(pick(rng, 2));
    const auto g = OperationTable::tabulate(d, 2, m, [&](auto t) {
      Tuple key(t.begin(), t.end());
      if (sorted) std::sort(key.begin(), key.end());
      return noise[encode_tuple(key, d)];
    });
    const bool expected = fully_symmetric(g);
    symmetric += expected ? 1 : 0;
    CHECK(check_block_symmetry(g, BlockPartition::single(m)) == expected);
  }
  CHECK(symmetric >= 200);
}

TEST_CASE("block partitions and the block-multiset domain") {
  const std::vector<std::size_t> sizes{2, 1};
  const auto partition = BlockPartition::from_sizes(sizes);
  CHECK(partition.blocks() == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  const BlockMultisetDomain domain(2, partition);
  REQUIRE(domain.size() == 6);
  CHECK(domain.labels({"0", "1"}) ==
        std::vector<std::string>{"{0,0}|{0}", "{0,0}|{1}", "{0,1}|{0}", "{0,1}|{1}", "{1,1}|{0}", "{1,1}|{1}"});
  for (std::size_t i = 0; i < domain.size(); ++i) {
    CHECK(domain.index_of_tuple(domain.arrangement(i)) == i);
  }
  const Tuple t{1, 0, 1};
  CHECK(domain.index_of_tuple(t) == 3);
  CHECK(BlockPartition({{2, 0}, {1}}).blocks() == std::vector<std::vector<std::size_t>>{{0, 2}, {1}});
}

TEST_CASE("symmetrize_input_weights examples") {
  const auto xor_structure = gen::xor_structure();
  const PromiseTemplate promise(xor_structure, xor_structure);
  const auto parity = PromiseFractionalPolymorphism::uniform(
      FiniteMeasure<OperationTable>::point_mass(parity3()));
  const std::vector<std::size_t> sizes{2, 1};
  const auto partition = BlockPartition::from_sizes(sizes);
  CHECK(symmetrize_input_weights(parity, partition) == parity);

  // Weights (1/2, 1/6, 1/3) sum to 2/3 on {0,1} and 1/3 on {2}.
  const PromiseFractionalPolymorphism skewed({Rational(1, 2), Rational(1, 6), Rational(1, 3)},
                                             parity.output());
  CHECK(check_promise_fpol(skewed, promise).holds);
  const auto symmetric = symmetrize_input_weights(skewed, partition);
  CHECK(symmetric.has_uniform_input());
  CHECK(symmetric.output() == skewed.output());
  CHECK(check_promise_fpol(symmetric, promise).holds);

  const PromiseFractionalPolymorphism unbalanced({Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                                                 parity.output());
  CHECK(kind_of([&] { symmetrize_input_weights(unbalanced, partition); }) ==
        ErrorKind::kPreconditionViolated);
  const auto projection = PromiseFractionalPolymorphism::uniform(
      FiniteMeasure<OperationTable>::point_mass(OperationTable::projection(2, 3, 0)));
  CHECK(kind_of([&] { symmetrize_input_weights(projection, partition); }) ==
        ErrorKind::kPreconditionViolated);
}

TEST_CASE("block_multiset_structure examples") {
  const auto f = unary({q("0"), q("1/2"), q("3")});
  const auto multiset = block_multiset_structure(f, BlockPartition::single(2));
  CHECK(multiset.domain() == std::vector<std::string>{"{0,0}", "{0,1}", "{0,2}", "{1,1}", "{1,2}", "{2,2}"});
  CHECK(multiset.table(0) == std::vector<ExtendedRational>{q("0"), q("1/4"), q("3/2"), q("1/2"), q("7/4"), q("3")});

  const auto g = binary({q("1"), q("5"), q("2"), q("3")});
  const auto pairs = block_multiset_structure(g, BlockPartition::single(2));
  // ({0,1},{0,1}) is element (1,1): min(f(0,0)+f(1,1), f(0,1)+f(1,0)) / 2.
  CHECK(pairs.cost(0, Tuple{1, 1}) == q("2"));
  // ({0,0},{0,1}): both arrangements give f(0,0) + f(0,1).
  CHECK(pairs.cost(0, Tuple{0, 1}) == q("3"));

  const auto single = block_multiset_structure(g, BlockPartition::single(1));
  CHECK(single.table(0) == g.table(0));
  CHECK(single.domain() == std::vector<std::string>{"{0}", "{1}"});
}

TEST_CASE("block_multiset_structure matches exhaustive grouping") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 60; ++round) {
    const std::size_t d = 2 + pick(rng, 2);
    const auto delta = testing::random_structure(rng, d, 2, d == 2 ? 3 : 2);
    std::vector<std::size_t> sizes;
    std::size_t m = 0;
    for (std::size_t blocks = 1 + pick(rng, 2); blocks > 0; --blocks) {
      sizes.push_back(1 + pick(rng, 2));
      m += sizes.back();
    }
    if (m * delta.signature()[0].arity > 8) continue;
    bool small = true;
    for (const auto& symbol : delta.signature().symbols()) small = small && symbol.arity * m <= 8;
    if (!small) continue;
    const auto partition = BlockPartition::from_sizes(sizes);
    const auto built = block_multiset_structure(delta, partition);
    CHECK(built == naive_block_multiset(delta, partition));
    CHECK(built == theory::serial::block_multiset_structure(delta, partition));
  }
}

TEST_CASE("lift_fpol_to_frachom examples") {
  const auto xor_structure = gen::xor_structure();
  const PromiseTemplate promise(xor_structure, xor_structure);
  const std::vector<std::size_t> sizes{2, 1};
  const auto partition = BlockPartition::from_sizes(sizes);
  const auto parity = PromiseFractionalPolymorphism::uniform(
      FiniteMeasure<OperationTable>::point_mass(parity3()));
  const auto chi = lift_fpol_to_frachom(parity, partition, promise);
  REQUIRE(chi.size() == 1);
  CHECK(chi.atoms()[0].second == 1);
  CHECK(chi.atoms()[0].first.values() == std::vector<std::uint32_t>{0, 1, 1, 0, 0, 1});
  const auto bimultiset = block_multiset_structure(xor_structure, partition);
  CHECK(check_fractional_homomorphism(chi, bimultiset, xor_structure).holds);

  const auto majority = OperationTable::tabulate(2, 2, 3, [](auto t) { return t[0] + t[1] + t[2] >= 2; });
  const auto two = PromiseFractionalPolymorphism::uniform(FiniteMeasure<OperationTable>(
      {{parity3(), Rational(1, 3)}, {majority, Rational(2, 3)}}));
  const auto lifted = lift_fpol_to_frachom(two, partition, promise);
  CHECK(lifted.size() == 2);

  const auto projection = PromiseFractionalPolymorphism::uniform(
      FiniteMeasure<OperationTable>::point_mass(OperationTable::projection(2, 3, 0)));
  CHECK(kind_of([&] { lift_fpol_to_frachom(projection, partition, promise); }) ==
        ErrorKind::kPreconditionViolated);
}

TEST_CASE("fpol_from_frachom examples") {
  const auto xor_structure = gen::xor_structure();
  const PromiseTemplate promise(xor_structure, xor_structure);
  const std::vector<std::size_t> sizes{2, 1};
  const auto partition = BlockPartition::from_sizes(sizes);
  const auto parity = PromiseFractionalPolymorphism::uniform(
      FiniteMeasure<OperationTable>::point_mass(parity3()));
  CHECK(fpol_from_frachom(lift_fpol_to_frachom(parity, partition, promise), partition, 2) == parity);

  // Single block, m = 2, on {0,1}: the map sends {0,0}, {0,1}, {1,1} to 1, 0, 1.
  const auto chi = FractionalHomomorphism::point_mass(OperationTable(3, 2, 1, {1, 0, 1}));
  const auto omega = fpol_from_frachom(chi, BlockPartition::single(2), 2);
  REQUIRE(omega.output().size() == 1);
  CHECK(omega.output().atoms()[0].first.values() == std::vector<std::uint32_t>{1, 0, 0, 1});
  CHECK(omega.input_weights() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  CHECK(kind_of([&] { fpol_from_frachom(chi, partition, 2); }) == ErrorKind::kDomainMismatch);
}

TEST_CASE("compose_sampling_fpol examples") {
  const auto parity = PromiseFractionalPolymorphism::uniform(
      FiniteMeasure<OperationTable>::point_mass(parity3()));
  CHECK(compose_sampling_fpol(identity_on(2), parity) == parity);

  const auto negate = FractionalHomomorphism::point_mass(map_of({1, 0}, 2));
  const auto composed = compose_sampling_fpol(negate, parity);
  REQUIRE(composed.output().size() == 1);
  CHECK(composed.output().atoms()[0].first.values() ==
        std::vector<std::uint32_t>{1, 0, 0, 1, 0, 1, 1, 0});

  // Equality costs are invariant under swapping labels.
  const auto equality = binary({0L, 1L, 1L, 0L});
  const FractionalHomomorphism both({{OperationTable::identity(2), Rational(1, 2)},
                                     {map_of({1, 0}, 2), Rational(1, 2)}});
  CHECK(check_fractional_homomorphism(both, equality, equality).holds);
  const auto projections = PromiseFractionalPolymorphism::uniform(FiniteMeasure<OperationTable>(
      {{OperationTable::projection(2, 2, 0), Rational(1, 2)},
       {OperationTable::projection(2, 2, 1), Rational(1, 2)}}));
  CHECK(check_promise_fpol(projections, PromiseTemplate(equality, equality)).holds);
  const auto product = compose_sampling_fpol(both, projections);
  CHECK(product.output().size() == 4);
  for (const auto& [table, weight] : product.output().atoms()) CHECK(weight == Rational(1, 4));
  CHECK(check_promise_fpol(product, PromiseTemplate(equality, equality)).holds);

  CHECK(kind_of([&] { compose_sampling_fpol(identity_on(3), parity); }) == ErrorKind::kDomainMismatch);
}

TEST_CASE("find_frachom_lp examples") {
  std::mt19937_64 rng(5);
  const auto delta = testing::random_structure(rng, 3, 2, 2);
  const auto self = find_frachom_lp(delta, delta);
  REQUIRE(self);
  CHECK(check_fractional_homomorphism(*self, delta, delta).holds);

  const auto cheaper = unary({0L, 0L});
  const auto costly = unary({1L, 2L, 3L});
  const auto found = find_frachom_lp(costly, cheaper);
  REQUIRE(found);
  CHECK(check_fractional_homomorphism(*found, costly, cheaper).holds);

  CHECK(!find_frachom_lp(unary({0L, inf()}), unary({inf(), inf()})));
}

TEST_CASE("find_promise_fpol_lp examples") {
  const auto xor_structure = gen::xor_structure();
  const PromiseTemplate promise(xor_structure, xor_structure);
  const std::vector<std::size_t> sizes{2, 1};
  const auto partition = BlockPartition::from_sizes(sizes);
  const auto found = find_promise_fpol_lp(promise, 3, partition);
  REQUIRE(found);
  CHECK(found->has_uniform_input());
  CHECK(check_promise_fpol(*found, promise).holds);
  for (const auto& [table, weight] : found->output().atoms()) CHECK(check_block_symmetry(table, partition));

  CHECK(!find_promise_fpol_lp(PromiseTemplate(unary({0L, 1L}), unary({inf(), inf()})), 2));
}

TEST_CASE("unary polymorphism search agrees with homomorphism search") {
  std::mt19937_64 rng(41);
  int found = 0;
  for (int round = 0; round < 40; ++round) {
    const auto delta = testing::random_structure(rng, 2, 2, 2);
    const auto gamma = round % 2 == 0 ? lowered(rng, delta) : resampled(rng, delta);
    const auto chi = find_frachom_lp(delta, gamma);
    const auto omega = find_promise_fpol_lp(PromiseTemplate(delta, gamma), 1);
    CHECK(chi.has_value() == omega.has_value());
    found += chi ? 1 : 0;
  }
  CHECK(found > 5);
}

TEST_CASE("fractional homomorphisms transfer minima") {
  std::mt19937_64 rng(53);
  int verified = 0;
  for (int round = 0; round < 60; ++round) {
    const std::size_t d = 2 + pick(rng, 2);
    const auto delta = testing::random_structure(rng, d, 2, 2);
    const auto gamma = lowered(rng, delta);
    const auto chi = find_frachom_lp(delta, gamma);
    if (!chi) continue;
    REQUIRE(check_fractional_homomorphism(*chi, delta, gamma).holds);
    ++verified;
    for (int i = 0; i < 5; ++i) {
      const auto instance = random_instance(rng, delta.signature());
      CHECK(brute_force_min(gamma, instance) <= brute_force_min(delta, instance));
    }
  }
  CHECK(verified > 30);
}

TEST_CASE("lifted polymorphisms are homomorphisms from the block-multiset structure") {
  std::mt19937_64 rng(61);
  int lifted = 0;
  for (int round = 0; round < 30; ++round) {
    const auto delta = testing::random_structure(rng, 2, 2, 2);
    const std::vector<std::size_t> sizes{2, 1};
    const auto partition = BlockPartition::from_sizes(sizes);
    const PromiseTemplate promise(delta, lowered(rng, delta));
    const auto omega = find_promise_fpol_lp(promise, 3, partition);
    if (!omega) continue;
    ++lifted;
    const auto chi = lift_fpol_to_frachom(*omega, partition, promise);
    CHECK(check_fractional_homomorphism(chi, block_multiset_structure(delta, partition), promise.gamma).holds);
    const auto back = fpol_from_frachom(chi, partition, 2);
    CHECK(back == *omega);
    CHECK(check_promise_fpol(back, promise).holds);
  }
  CHECK(lifted > 10);
}

TEST_CASE("the tuple-to-element map is a polymorphism into the block-multiset structure") {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 30; ++round) {
    const std::size_t d = 2 + pick(rng, 2);
    const auto delta = testing::random_structure(rng, d, 2, 2);
    const std::vector<std::size_t> sizes{1 + pick(rng, 2), 1};
    const auto partition = BlockPartition::from_sizes(sizes);
    const auto bms = block_multiset_structure(delta, partition);
    const auto omega = fpol_from_frachom(identity_on(bms.domain_size()), partition, d);
    const PromiseTemplate promise(delta, bms);
    CHECK(check_promise_fpol(omega, promise).holds);
    const auto chi = lift_fpol_to_frachom(omega, partition, promise);
    CHECK(chi == identity_on(bms.domain_size()));

    // Input weights that respect the block sums still symmetrize to a valid one.
    const auto m = partition.arity();
    std::vector<Rational> skew(m, Rational(1, static_cast<long>(m)));
    if (sizes[0] == 2) {
      skew[0] = Rational(1, 2);
      skew[1] = Rational(1, 6);
    }
    const PromiseFractionalPolymorphism skewed(skew, omega.output());
    if (check_promise_fpol(skewed, promise).holds) {
      CHECK(check_promise_fpol(symmetrize_input_weights(skewed, partition), promise).holds);
    }

    const auto sampled = compose_sampling_fpol(identity_on(d), omega);
    CHECK(check_promise_fpol(sampled, PromiseTemplate(delta, bms)).holds);
    for (const auto& [table, weight] : sampled.output().atoms()) CHECK(check_block_symmetry(table, partition));
  }
}

TEST_CASE("composition with verified homomorphisms stays a polymorphism") {
  std::mt19937_64 rng(71);
  int composed = 0;
  for (int round = 0; round < 40; ++round) {
    const auto gamma1 = testing::random_structure(rng, 2, 2, 2);
    // Delta_d is gamma1 with costs raised, so frachoms into gamma1 exist often.
    std::vector<std::vector<ExtendedRational>> tables;
    for (std::size_t s = 0; s < gamma1.signature().size(); ++s) {
      auto table = gamma1.table(s);
      for (auto& entry : table) {
        if (pick(rng, 3) == 0) entry = pick(rng, 2) == 0 ? inf() : ExtendedRational(2);
      }
      tables.push_back(std::move(table));
    }
    const ValuedStructure source(gamma1.signature(), labels(2), std::move(tables));
    const auto chi = find_frachom_lp(source, gamma1);
    if (!chi) continue;
    const auto partition = BlockPartition::single(2);
    const auto gamma2 = block_multiset_structure(gamma1, partition);
    const auto omega = fpol_from_frachom(identity_on(gamma2.domain_size()), partition, 2);
    REQUIRE(check_promise_fpol(omega, PromiseTemplate(gamma1, gamma2)).holds);
    const auto product = compose_sampling_fpol(*chi, omega);
    CHECK(check_promise_fpol(product, PromiseTemplate(source, gamma2)).holds);
    for (const auto& [table, weight] : product.output().atoms()) CHECK(check_block_symmetry(table, partition));
    ++composed;
  }
  CHECK(composed > 20);
}

TEST_CASE("parallel checkers match the serial reference") {
  std::mt19937_64 rng(83);
  int violations = 0;
  for (int round = 0; round < 60; ++round) {
    const std::size_t d = 2 + pick(rng, 2);
    const auto delta = testing::random_structure(rng, d, 3, 2);
    const auto gamma = round % 3 == 0 ? lowered(rng, delta) : resampled(rng, delta);
    std::vector<std::uint32_t> values(d);
    for (auto& v : values) v = static_cast<std::uint32_t>(pick(rng, d));
    const auto chi = FractionalHomomorphism::point_mass(OperationTable(d, d, 1, values));
    const auto parallel = check_fractional_homomorphism(chi, delta, gamma);
    check_same(parallel, theory::serial::check_fractional_homomorphism(chi, delta, gamma));
    const auto naive = naive_frachom_violation(chi, delta, gamma);
    CHECK(parallel.holds == !naive.has_value());
    if (naive) {
      ++violations;
      CHECK(parallel.violation->symbol == naive->first);
      CHECK(parallel.violation->tuples == std::vector<Tuple>{naive->second});
    }
  }
  CHECK(violations > 10);
  for (int round = 0; round < 40; ++round) {
    const auto delta = testing::random_structure(rng, 2, 2, 2);
    const PromiseTemplate promise(delta, lowered(rng, delta));
    std::vector<std::pair<OperationTable, Rational>> atoms;
    for (int a = 0; a < 2; ++a) {
      std::vector<std::uint32_t> values(8);
      for (auto& v : values) v = static_cast<std::uint32_t>(pick(rng, 2));
      atoms.emplace_back(OperationTable(2, 2, 3, values), Rational(1, 2));
    }
    const auto omega = PromiseFractionalPolymorphism::uniform(FiniteMeasure<OperationTable>(atoms));
    check_same(check_promise_fpol(omega, promise), theory::serial::check_promise_fpol(omega, promise));
  }
}

TEST_CASE("wma examples") {
  const std::vector<Rational> ones(5, 1);
  CHECK(wma(5, ones) == Rational(7, 15));
  CHECK(wma(5, ones, WmaNormalization::kWeightSum) == 1);
  const std::vector<Rational> last{0, 0, 0, 0, 15};
  CHECK(wma(5, last) == 1);
  CHECK(wma_weights(5) == std::vector<Rational>{1, 2, 2, 1, 1});
  CHECK(wma_partition(5).blocks() == std::vector<std::vector<std::size_t>>{{0, 3, 4}, {1, 2}});
  CHECK(wma_partition(1).blocks() == std::vector<std::vector<std::size_t>>{{0}});
  CHECK(kind_of([&] { wma(4, std::vector<Rational>(4, 1)); }) == ErrorKind::kBadArity);
  CHECK(kind_of([&] { wma(5, std::vector<Rational>(3, 1)); }) == ErrorKind::kBadArity);
}

TEST_CASE("weight-sum wma is an average") {
  std::mt19937_64 rng(97);
  for (int round = 0; round < 300; ++round) {
    const std::size_t k = 2 * pick(rng, 6) + 1;
    std::vector<Rational> inputs;
    for (std::size_t i = 0; i < k; ++i) {
      inputs.push_back(make_rational(testing::uniform_int(rng, -20, 20), testing::uniform_int(rng, 1, 7)));
    }
    const auto value = wma(k, inputs, WmaNormalization::kWeightSum);
    CHECK(*std::min_element(inputs.begin(), inputs.end()) <= value);
    CHECK(value <= *std::max_element(inputs.begin(), inputs.end()));
    const Rational scale = make_rational(testing::uniform_int(rng, 0, 9), testing::uniform_int(rng, 1, 5));
    std::vector<Rational> scaled;
    for (const auto& x : inputs) scaled.push_back(scale * x);
    CHECK(wma(k, scaled, WmaNormalization::kWeightSum) == scale * value);
    CHECK(wma(k, std::vector<Rational>(k, inputs[0]), WmaNormalization::kWeightSum) == inputs[0]);
  }
}

TEST_CASE("symmetrize_input_weights compares reduced block sums") {
  const auto min2 = OperationTable::tabulate(2, 2, 2, [](auto t) { return std::min(t[0], t[1]); });
  const PromiseFractionalPolymorphism skewed({Rational(3, 4), Rational(1, 4)},
                                             FiniteMeasure<OperationTable>::point_mass(min2));
  CHECK(symmetrize_input_weights(skewed, BlockPartition::single(2)).has_uniform_input());
}
