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

#include "pvcsp/theory.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "pvcsp/error.hpp"
#include "pvcsp/exactlp.hpp"
#include "pvcsp/multiset.hpp"

namespace pvcsp::theory {
namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > UINT64_MAX - a ? UINT64_MAX : a + b;
}

// Least i in [0, count) with match(i), or kNone.
template <typename Match>
std::int64_t first_match(std::size_t count, bool parallel, const Match& match) {
  const auto n = static_cast<std::int64_t>(count);
  if (!parallel) {
    for (std::int64_t i = 0; i < n; ++i) {
      if (match(static_cast<std::size_t>(i))) return i;
    }
    return kNone;
  }
  std::int64_t best = kNone;
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t i = 0; i < n; ++i) {
    if (i < best && match(static_cast<std::size_t>(i))) best = i;
  }
  return best;
}

void require_domains(const FiniteMeasure<OperationTable>& measure, std::size_t arity,
                     const ValuedStructure& delta, const ValuedStructure& gamma) {
  if (!(delta.signature() == gamma.signature())) {
    throw Error(ErrorKind::kDomainMismatch, "structures have different signatures");
  }
  for (const auto& [table, weight] : measure.atoms()) {
    if (table.arity() != arity) {
      throw Error(ErrorKind::kDomainMismatch, "support table arity " +
                                                  std::to_string(table.arity()) + ", expected " +
                                                  std::to_string(arity));
    }
    if (table.input_size() != delta.domain_size()) {
      throw Error(ErrorKind::kDomainMismatch,
                  "support table input domain has " + std::to_string(table.input_size()) +
                      " labels, structure has " + std::to_string(delta.domain_size()));
    }
    if (table.output_size() != gamma.domain_size()) {
      throw Error(ErrorKind::kDomainMismatch,
                  "support table output domain has " + std::to_string(table.output_size()) +
                      " labels, structure has " + std::to_string(gamma.domain_size()));
    }
  }
}

struct Sides {
  ExtendedRational lhs;
  ExtendedRational rhs;
};

// Both sides of the inequality at the m-tuple of k-tuples encoded by `flat`
// (a^1 most significant). digits has k*m entries; column has m entries.
Sides evaluate_sides(const std::vector<Rational>& weights,
                     const FiniteMeasure<OperationTable>& measure, const ValuedStructure& delta,
                     const ValuedStructure& gamma, std::size_t symbol, std::size_t flat,
                     std::vector<std::size_t>& digits, std::vector<std::size_t>& column,
                     std::vector<std::size_t>& image) {
  const std::size_t m = weights.size();
  const std::size_t k = delta.signature()[symbol].arity;
  const std::size_t d = delta.domain_size();
  decode_tuple(flat, d, digits);
  Sides sides;
  for (std::size_t i = 0; i < m && sides.rhs.is_finite(); ++i) {
    if (weights[i] == 0) continue;
    std::span<const std::size_t> tuple(digits.data() + i * k, k);
    sides.rhs += delta.cost(symbol, tuple).scaled(weights[i]);
  }
  if (sides.rhs.is_infinite()) return sides;
  std::vector<std::size_t> column_flat(k);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t i = 0; i < m; ++i) column[i] = digits[i * k + l];
    column_flat[l] = encode_tuple(column, d);
  }
  for (const auto& [table, weight] : measure.atoms()) {
    for (std::size_t l = 0; l < k; ++l) image[l] = table.at(column_flat[l]);
    sides.lhs += gamma.cost(symbol, image).scaled(weight);
    if (sides.lhs.is_infinite()) break;
  }
  return sides;
}

CheckResult check_inequalities(const std::vector<Rational>& weights,
                               const FiniteMeasure<OperationTable>& measure,
                               const ValuedStructure& delta, const ValuedStructure& gamma,
                               const ResourceGuard& guard, bool parallel) {
  const std::size_t m = weights.size();
  const std::size_t d = delta.domain_size();
  std::uint64_t total = 0;
  for (const auto& symbol : delta.signature().symbols()) {
    total = saturating_add(total, saturating_pow(d, symbol.arity * m));
  }
  guard.require(total, "inequality enumeration");

  CheckResult result;
  for (std::size_t s = 0; s < delta.signature().size(); ++s) {
    const std::size_t k = delta.signature()[s].arity;
    const std::size_t count = tuple_count(d, k * m);
    const auto violates = [&](std::size_t flat) {
      std::vector<std::size_t> digits(k * m), column(m), image(k);
      const Sides sides =
          evaluate_sides(weights, measure, delta, gamma, s, flat, digits, column, image);
      return sides.lhs > sides.rhs;
    };
    const std::int64_t hit = first_match(count, parallel, violates);
    if (hit == kNone) continue;
    std::vector<std::size_t> digits(k * m), column(m), image(k);
    const Sides sides = evaluate_sides(weights, measure, delta, gamma, s,
                                       static_cast<std::size_t>(hit), digits, column, image);
    Violation violation{s, {}, sides.lhs, sides.rhs};
    for (std::size_t i = 0; i < m; ++i) {
      violation.tuples.emplace_back(digits.begin() + static_cast<std::ptrdiff_t>(i * k),
                                    digits.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
    }
    result.holds = false;
    result.violation = std::move(violation);
    return result;
  }
  return result;
}

CheckResult check_frachom_impl(const FractionalHomomorphism& chi, const ValuedStructure& delta,
                               const ValuedStructure& gamma, const ResourceGuard& guard,
                               bool parallel) {
  require_domains(chi, 1, delta, gamma);
  return check_inequalities({Rational(1)}, chi, delta, gamma, guard, parallel);
}

CheckResult check_fpol_impl(const PromiseFractionalPolymorphism& omega,
                            const PromiseTemplate& promise, const ResourceGuard& guard,
                            bool parallel) {
  require_domains(omega.output(), omega.arity(), promise.delta, promise.gamma);
  return check_inequalities(omega.input_weights(), omega.output(), promise.delta,
                            promise.gamma, guard, parallel);
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t result = 1;
  for (std::size_t i = 2; i <= n; ++i) result = saturating_mul(result, i);
  return result;
}

// Minimum over arrangements of sum_i f(t^1_i, ..., t^k_i) with t^1 fixed to
// sequences[0] and t^l ranging over the distinct permutations of sequences[l].
ExtendedRational block_minimum(const ValuedStructure& delta, std::size_t symbol,
                               std::vector<std::vector<std::size_t>> sequences) {
  const std::size_t k = sequences.size();
  const std::size_t s = sequences[0].size();
  ExtendedRational best = ExtendedRational::infinity();
  std::vector<std::size_t> args(k);
  // sequences[1..k-1] start sorted and cycle through next_permutation as an
  // odometer, last sequence fastest.
  while (true) {
    ExtendedRational sum;
    for (std::size_t i = 0; i < s && sum.is_finite(); ++i) {
      for (std::size_t l = 0; l < k; ++l) args[l] = sequences[l][i];
      sum += delta.cost(symbol, args);
    }
    if (sum < best) best = std::move(sum);
    std::size_t l = k;
    while (l > 1) {
      --l;
      if (std::next_permutation(sequences[l].begin(), sequences[l].end())) break;
      if (l == 1) return best;
    }
    if (k == 1) return best;
  }
}

ValuedStructure block_multiset_impl(const ValuedStructure& delta, const BlockPartition& partition,
                                    const ResourceGuard& guard, bool parallel) {
  const std::size_t d = delta.domain_size();
  const std::size_t m = partition.arity();
  const auto& blocks = partition.blocks();

  std::uint64_t domain_estimate = 1;
  for (const auto& block : blocks) {
    domain_estimate = saturating_mul(domain_estimate, multiset_count(d, block.size()));
  }
  guard.require(domain_estimate, "block-multiset domain size");
  BlockMultisetDomain domain(d, partition);
  const std::size_t n = domain.size();

  std::uint64_t work = 0;
  for (const auto& symbol : delta.signature().symbols()) {
    work = saturating_add(work, saturating_pow(n, symbol.arity));
    for (const auto& block : blocks) {
      const std::uint64_t combos = saturating_pow(multiset_count(d, block.size()), symbol.arity);
      const std::uint64_t arrangements = saturating_pow(factorial(block.size()), symbol.arity - 1);
      const std::uint64_t cost = saturating_mul(saturating_mul(combos, arrangements), block.size());
      work = saturating_add(work, cost);
    }
  }
  guard.require(work, "block-multiset table construction");

  std::vector<std::vector<std::vector<std::size_t>>> multisets;
  for (const auto& block : blocks) multisets.push_back(enumerate_multisets(d, block.size()));

  // Per element, its multiset index within each block.
  std::vector<std::vector<std::size_t>> components(n);
  for (std::size_t e = 0; e < n; ++e) {
    std::size_t rest = e;
    components[e].resize(blocks.size());
    for (std::size_t b = blocks.size(); b-- > 0;) {
      components[e][b] = rest % multisets[b].size();
      rest /= multisets[b].size();
    }
  }

  const Rational scale(1, static_cast<unsigned long>(m));
  std::vector<std::vector<ExtendedRational>> tables;
  for (std::size_t s = 0; s < delta.signature().size(); ++s) {
    const std::size_t k = delta.signature()[s].arity;

    std::vector<std::vector<ExtendedRational>> minima(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::size_t mb = multisets[b].size();
      const auto combos = static_cast<std::int64_t>(tuple_count(mb, k));
      minima[b].resize(static_cast<std::size_t>(combos));
#pragma omp parallel for schedule(dynamic) if (parallel)
      for (std::int64_t c = 0; c < combos; ++c) {
        const Tuple picks = decode_tuple(static_cast<std::size_t>(c), mb, k);
        std::vector<std::vector<std::size_t>> sequences;
        for (std::size_t l = 0; l < k; ++l) sequences.push_back(multisets[b][picks[l]]);
        minima[b][static_cast<std::size_t>(c)] = block_minimum(delta, s, std::move(sequences));
      }
    }

    const auto entries = static_cast<std::int64_t>(tuple_count(n, k));
    std::vector<ExtendedRational> table(static_cast<std::size_t>(entries));
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t flat = 0; flat < entries; ++flat) {
      const Tuple elements = decode_tuple(static_cast<std::size_t>(flat), n, k);
      Tuple picks(k);
      ExtendedRational sum;
      for (std::size_t b = 0; b < blocks.size() && sum.is_finite(); ++b) {
        for (std::size_t l = 0; l < k; ++l) picks[l] = components[elements[l]][b];
        sum += minima[b][encode_tuple(picks, multisets[b].size())];
      }
      table[static_cast<std::size_t>(flat)] = sum.scaled(scale);
    }
    tables.push_back(std::move(table));
  }
  return ValuedStructure(delta.signature(), domain.labels(delta.domain()), std::move(tables));
}

// Solves for a probability vector over candidate m-ary maps satisfying the
// inequalities for the given projection weights. Rows with identical
// coefficient patterns keep only the smallest right-hand side.
std::optional<FiniteMeasure<OperationTable>> search_measure(
    const std::vector<OperationTable>& candidates, const std::vector<Rational>& weights,
    const ValuedStructure& delta, const ValuedStructure& gamma, const ResourceGuard& guard) {
  const std::size_t m = weights.size();
  const std::size_t d = delta.domain_size();
  const std::size_t c = gamma.domain_size();
  if (candidates.empty()) return std::nullopt;

  std::uint64_t work = 0;
  for (const auto& symbol : delta.signature().symbols()) {
    work = saturating_add(work, saturating_mul(saturating_pow(d, symbol.arity * m), candidates.size()));
  }
  guard.require(work, "witness LP construction");

  std::vector<bool> alive(candidates.size(), true);
  std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, Rational> rows;
  for (std::size_t s = 0; s < delta.signature().size(); ++s) {
    const std::size_t k = delta.signature()[s].arity;
    const std::size_t count = tuple_count(d, k * m);
    std::vector<std::size_t> digits(k * m), column(m), column_flat(k), image(k);
    std::vector<std::uint32_t> pattern(candidates.size());
    for (std::size_t flat = 0; flat < count; ++flat) {
      decode_tuple(flat, d, digits);
      ExtendedRational rhs;
      for (std::size_t i = 0; i < m && rhs.is_finite(); ++i) {
        if (weights[i] == 0) continue;
        rhs += delta.cost(s, std::span<const std::size_t>(digits.data() + i * k, k))
                   .scaled(weights[i]);
      }
      if (rhs.is_infinite()) continue;
      for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t i = 0; i < m; ++i) column[i] = digits[i * k + l];
        column_flat[l] = encode_tuple(column, d);
      }
      for (std::size_t g = 0; g < candidates.size(); ++g) {
        for (std::size_t l = 0; l < k; ++l) image[l] = candidates[g].at(column_flat[l]);
        const std::size_t image_flat = encode_tuple(image, c);
        pattern[g] = static_cast<std::uint32_t>(image_flat);
        if (gamma.table(s)[image_flat].is_infinite()) alive[g] = false;
      }
      auto key = std::make_pair(s, pattern);
      auto it = rows.find(key);
      if (it == rows.end()) {
        rows.emplace(std::move(key), rhs.value());
      } else if (rhs.value() < it->second) {
        it->second = rhs.value();
      }
    }
  }

  std::vector<std::size_t> live;
  for (std::size_t g = 0; g < candidates.size(); ++g) {
    if (alive[g]) live.push_back(g);
  }
  if (live.empty()) return std::nullopt;

  // Columns: live candidates, then one slack per inequality row.
  lp::LinearProgram lp;
  lp.num_vars = live.size() + rows.size();
  lp.objective.assign(lp.num_vars, Rational(0));
  std::size_t slack = live.size();
  for (const auto& [key, rhs] : rows) {
    std::vector<Rational> coefficients(lp.num_vars, Rational(0));
    for (std::size_t j = 0; j < live.size(); ++j) {
      coefficients[j] = gamma.table(key.first)[key.second[live[j]]].value();
    }
    coefficients[slack++] = 1;
    lp.add_row(std::move(coefficients), rhs);
  }
  std::vector<Rational> normalization(lp.num_vars, Rational(0));
  for (std::size_t j = 0; j < live.size(); ++j) normalization[j] = 1;
  lp.add_row(std::move(normalization), Rational(1));

  const lp::LpResult solved = lp::solve_lp(lp);
  if (solved.status == lp::LpStatus::kInfeasible) return std::nullopt;
  if (solved.status != lp::LpStatus::kOptimal) {
    throw Error(ErrorKind::kInternalInvariant, "witness LP with zero objective is unbounded");
  }
  std::vector<FiniteMeasure<OperationTable>::Atom> atoms;
  for (std::size_t j = 0; j < live.size(); ++j) {
    if (solved.point[j] > 0) atoms.emplace_back(candidates[live[j]], solved.point[j]);
  }
  return FiniteMeasure<OperationTable>(std::move(atoms));
}

std::vector<Rational> uniform_weights(std::size_t m) {
  return std::vector<Rational>(m, make_rational(1, static_cast<long>(m)));
}

}  // namespace

PromiseFractionalPolymorphism::PromiseFractionalPolymorphism(std::vector<Rational> input_weights,
                                                             FiniteMeasure<OperationTable> output)
    : input_weights_(std::move(input_weights)), output_(std::move(output)) {
  if (input_weights_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "polymorphism arity must be positive");
  }
  if (output_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "polymorphism output measure is empty");
  }
  Rational total = 0;
  for (const auto& w : input_weights_) {
    if (w < 0) {
      throw Error(ErrorKind::kInvalidArgument, "input weight " + to_string(w) + " is negative");
    }
    total += w;
  }
  if (total != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "input weights sum to " + to_string(total) + ", expected 1");
  }
  const auto& first = output_.atoms().front().first;
  for (const auto& [table, weight] : output_.atoms()) {
    if (table.arity() != input_weights_.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "support table arity " + std::to_string(table.arity()) + " differs from " +
                      std::to_string(input_weights_.size()) + " input weights");
    }
    if (table.input_size() != first.input_size() || table.output_size() != first.output_size()) {
      throw Error(ErrorKind::kInvalidArgument, "support tables disagree on their domains");
    }
  }
}

PromiseFractionalPolymorphism PromiseFractionalPolymorphism::uniform(
    FiniteMeasure<OperationTable> output) {
  if (output.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "polymorphism output measure is empty");
  }
  const std::size_t m = output.atoms().front().first.arity();
  return PromiseFractionalPolymorphism(uniform_weights(m), std::move(output));
}

bool PromiseFractionalPolymorphism::has_uniform_input() const {
  return input_weights_ == uniform_weights(arity());
}

BlockPartition::BlockPartition(std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)) {
  for (const auto& block : blocks_) {
    if (block.empty()) throw Error(ErrorKind::kInvalidArgument, "partition has an empty block");
    arity_ += block.size();
  }
  if (arity_ == 0) throw Error(ErrorKind::kInvalidArgument, "partition has no blocks");
  std::vector<bool> seen(arity_, false);
  for (auto& block : blocks_) {
    std::sort(block.begin(), block.end());
    for (std::size_t i : block) {
      if (i >= arity_ || seen[i]) {
        throw Error(ErrorKind::kInvalidArgument,
                    "blocks do not partition {0.." + std::to_string(arity_ - 1) + "}");
      }
      seen[i] = true;
    }
  }
}

BlockPartition BlockPartition::from_sizes(std::span<const std::size_t> sizes) {
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t next = 0;
  for (std::size_t size : sizes) {
    std::vector<std::size_t> block(size);
    std::iota(block.begin(), block.end(), next);
    next += size;
    blocks.push_back(std::move(block));
  }
  return BlockPartition(std::move(blocks));
}

BlockPartition BlockPartition::single(std::size_t arity) {
  const std::size_t sizes[] = {arity};
  return from_sizes(sizes);
}

BlockMultisetDomain::BlockMultisetDomain(std::size_t base_size, BlockPartition partition)
    : base_size_(base_size), partition_(std::move(partition)) {
  const auto& blocks = partition_.blocks();
  std::uint64_t estimate = 1;
  for (const auto& block : blocks) {
    estimate = saturating_mul(estimate, multiset_count(base_size_, block.size()));
  }
  ResourceGuard::from_environment().require(estimate, "block-multiset domain size");
  for (const auto& block : blocks) {
    block_multisets_.push_back(enumerate_multisets(base_size_, block.size()));
  }
  strides_.assign(blocks.size(), 1);
  for (std::size_t b = blocks.size(); b-- > 0;) {
    strides_[b] = size_;
    size_ *= block_multisets_[b].size();
  }
}

std::vector<std::vector<std::size_t>> BlockMultisetDomain::element(std::size_t index) const {
  std::vector<std::vector<std::size_t>> result(block_multisets_.size());
  for (std::size_t b = 0; b < block_multisets_.size(); ++b) {
    result[b] = block_multisets_[b][(index / strides_[b]) % block_multisets_[b].size()];
  }
  return result;
}

std::size_t BlockMultisetDomain::index_of_tuple(std::span<const std::size_t> tuple) const {
  if (tuple.size() != partition_.arity()) {
    throw Error(ErrorKind::kDimensionMismatch, "tuple length differs from partition arity");
  }
  std::size_t index = 0;
  std::vector<std::size_t> values;
  for (std::size_t b = 0; b < partition_.blocks().size(); ++b) {
    values.clear();
    for (std::size_t i : partition_.blocks()[b]) values.push_back(tuple[i]);
    std::sort(values.begin(), values.end());
    const auto& list = block_multisets_[b];
    const auto it = std::lower_bound(list.begin(), list.end(), values);
    index += static_cast<std::size_t>(it - list.begin()) * strides_[b];
  }
  return index;
}

Tuple BlockMultisetDomain::arrangement(std::size_t index) const {
  Tuple tuple(partition_.arity());
  const auto parts = element(index);
  for (std::size_t b = 0; b < parts.size(); ++b) {
    const auto& block = partition_.blocks()[b];
    for (std::size_t j = 0; j < block.size(); ++j) tuple[block[j]] = parts[b][j];
  }
  return tuple;
}

std::vector<std::string> BlockMultisetDomain::labels(
    const std::vector<std::string>& base_labels) const {
  std::vector<std::string> result;
  result.reserve(size_);
  for (std::size_t e = 0; e < size_; ++e) {
    std::string label;
    const auto parts = element(e);
    for (std::size_t b = 0; b < parts.size(); ++b) {
      if (b > 0) label += '|';
      label += '{';
      for (std::size_t j = 0; j < parts[b].size(); ++j) {
        if (j > 0) label += ',';
        label += base_labels[parts[b][j]];
      }
      label += '}';
    }
    result.push_back(std::move(label));
  }
  return result;
}

CheckResult check_fractional_homomorphism(const FractionalHomomorphism& chi,
                                          const ValuedStructure& delta,
                                          const ValuedStructure& gamma,
                                          const ResourceGuard& guard) {
  return check_frachom_impl(chi, delta, gamma, guard, true);
}

CheckResult check_promise_fpol(const PromiseFractionalPolymorphism& omega,
                               const PromiseTemplate& promise, const ResourceGuard& guard) {
  return check_fpol_impl(omega, promise, guard, true);
}

ValuedStructure block_multiset_structure(const ValuedStructure& delta,
                                         const BlockPartition& partition,
                                         const ResourceGuard& guard) {
  return block_multiset_impl(delta, partition, guard, true);
}

namespace serial {

CheckResult check_fractional_homomorphism(const FractionalHomomorphism& chi,
                                          const ValuedStructure& delta,
                                          const ValuedStructure& gamma,
                                          const ResourceGuard& guard) {
  return check_frachom_impl(chi, delta, gamma, guard, false);
}

CheckResult check_promise_fpol(const PromiseFractionalPolymorphism& omega,
                               const PromiseTemplate& promise, const ResourceGuard& guard) {
  return check_fpol_impl(omega, promise, guard, false);
}

ValuedStructure block_multiset_structure(const ValuedStructure& delta,
                                         const BlockPartition& partition,
                                         const ResourceGuard& guard) {
  return block_multiset_impl(delta, partition, guard, false);
}

}  // namespace serial

bool check_block_symmetry(const OperationTable& g, const BlockPartition& partition) {
  if (partition.arity() != g.arity()) return false;
  const std::size_t count = g.values().size();
  Tuple tuple(g.arity());
  for (const auto& block : partition.blocks()) {
    for (std::size_t j = 0; j + 1 < block.size(); ++j) {
      for (std::size_t flat = 0; flat < count; ++flat) {
        decode_tuple(flat, g.input_size(), tuple);
        std::swap(tuple[block[j]], tuple[block[j + 1]]);
        if (g(tuple) != g.at(flat)) return false;
      }
    }
  }
  return true;
}

PromiseFractionalPolymorphism symmetrize_input_weights(const PromiseFractionalPolymorphism& omega,
                                                       const BlockPartition& partition) {
  const std::size_t m = omega.arity();
  if (partition.arity() != m) {
    throw Error(ErrorKind::kPreconditionViolated,
                "partition arity " + std::to_string(partition.arity()) +
                    " differs from polymorphism arity " + std::to_string(m));
  }
  for (const auto& [table, weight] : omega.output().atoms()) {
    if (!check_block_symmetry(table, partition)) {
      throw Error(ErrorKind::kPreconditionViolated, "support table is not block-symmetric");
    }
  }
  for (std::size_t b = 0; b < partition.blocks().size(); ++b) {
    const auto& block = partition.blocks()[b];
    Rational sum = 0;
    for (std::size_t i : block) sum += omega.input_weights()[i];
    const Rational expected = make_rational(static_cast<long>(block.size()), static_cast<long>(m));
    if (sum != expected) {
      throw Error(ErrorKind::kPreconditionViolated,
                  "input weights on block " + std::to_string(b) + " sum to " + to_string(sum) +
                      ", expected " + to_string(expected));
    }
  }
  return PromiseFractionalPolymorphism(uniform_weights(m), omega.output());
}

FractionalHomomorphism lift_fpol_to_frachom(const PromiseFractionalPolymorphism& omega,
                                            const BlockPartition& partition,
                                            const PromiseTemplate& promise) {
  require_domains(omega.output(), omega.arity(), promise.delta, promise.gamma);
  if (partition.arity() != omega.arity()) {
    throw Error(ErrorKind::kPreconditionViolated,
                "partition arity " + std::to_string(partition.arity()) +
                    " differs from polymorphism arity " + std::to_string(omega.arity()));
  }
  const BlockMultisetDomain domain(promise.delta.domain_size(), partition);
  std::vector<FractionalHomomorphism::Atom> atoms;
  for (const auto& [table, weight] : omega.output().atoms()) {
    if (!check_block_symmetry(table, partition)) {
      throw Error(ErrorKind::kPreconditionViolated, "support table is not block-symmetric");
    }
    std::vector<std::uint32_t> values(domain.size());
    for (std::size_t e = 0; e < domain.size(); ++e) {
      values[e] = static_cast<std::uint32_t>(table(domain.arrangement(e)));
    }
    atoms.emplace_back(OperationTable(domain.size(), table.output_size(), 1, std::move(values)),
                       weight);
  }
  return FractionalHomomorphism(std::move(atoms));
}

PromiseFractionalPolymorphism fpol_from_frachom(const FractionalHomomorphism& chi,
                                                const BlockPartition& partition,
                                                std::size_t base_size) {
  const BlockMultisetDomain domain(base_size, partition);
  const std::size_t m = partition.arity();
  const std::size_t count = tuple_count(base_size, m);
  std::vector<std::size_t> element_of(count);
  Tuple tuple(m);
  for (std::size_t flat = 0; flat < count; ++flat) {
    decode_tuple(flat, base_size, tuple);
    element_of[flat] = domain.index_of_tuple(tuple);
  }
  std::vector<FiniteMeasure<OperationTable>::Atom> atoms;
  for (const auto& [table, weight] : chi.atoms()) {
    if (table.arity() != 1 || table.input_size() != domain.size()) {
      throw Error(ErrorKind::kDomainMismatch,
                  "map input domain has " + std::to_string(table.input_size()) +
                      " labels, block-multiset domain has " + std::to_string(domain.size()));
    }
    std::vector<std::uint32_t> values(count);
    for (std::size_t flat = 0; flat < count; ++flat) {
      values[flat] = static_cast<std::uint32_t>(table.at(element_of[flat]));
    }
    atoms.emplace_back(OperationTable(base_size, table.output_size(), m, std::move(values)),
                       weight);
  }
  return PromiseFractionalPolymorphism(uniform_weights(m),
                                       FiniteMeasure<OperationTable>(std::move(atoms)));
}

PromiseFractionalPolymorphism compose_sampling_fpol(const FractionalHomomorphism& chi,
                                                    const PromiseFractionalPolymorphism& omega) {
  const std::size_t m = omega.arity();
  const std::size_t middle = omega.input_size();
  const std::size_t source = chi.atoms().front().first.input_size();
  for (const auto& [h, weight] : chi.atoms()) {
    if (h.arity() != 1) {
      throw Error(ErrorKind::kDomainMismatch, "homomorphism support map is not unary");
    }
    if (h.input_size() != source || h.output_size() != middle) {
      throw Error(ErrorKind::kDomainMismatch,
                  "homomorphism maps into " + std::to_string(h.output_size()) +
                      " labels, polymorphism reads " + std::to_string(middle));
    }
  }
  const std::size_t count = tuple_count(source, m);
  std::vector<FiniteMeasure<OperationTable>::Atom> atoms;
  Tuple tuple(m);
  for (const auto& [h, h_weight] : chi.atoms()) {
    std::vector<std::size_t> middle_flat(count);
    for (std::size_t flat = 0; flat < count; ++flat) {
      decode_tuple(flat, source, tuple);
      for (auto& a : tuple) a = h.at(a);
      middle_flat[flat] = encode_tuple(tuple, middle);
    }
    for (const auto& [g, g_weight] : omega.output().atoms()) {
      std::vector<std::uint32_t> values(count);
      for (std::size_t flat = 0; flat < count; ++flat) {
        values[flat] = static_cast<std::uint32_t>(g.at(middle_flat[flat]));
      }
      atoms.emplace_back(OperationTable(source, g.output_size(), m, std::move(values)),
                         Rational(h_weight * g_weight));
    }
  }
  return PromiseFractionalPolymorphism(omega.input_weights(),
                                       FiniteMeasure<OperationTable>(std::move(atoms)));
}

std::optional<FractionalHomomorphism> find_frachom_lp(const ValuedStructure& delta,
                                                      const ValuedStructure& gamma,
                                                      const ResourceGuard& guard) {
  if (!(delta.signature() == gamma.signature())) {
    throw Error(ErrorKind::kDomainMismatch, "structures have different signatures");
  }
  const std::size_t d = delta.domain_size();
  const std::size_t c = gamma.domain_size();
  const std::uint64_t maps = saturating_pow(c, d);
  guard.require(maps, "map enumeration");
  std::vector<OperationTable> candidates;
  candidates.reserve(maps);
  for (std::size_t index = 0; index < maps; ++index) {
    const Tuple images = decode_tuple(index, c, d);
    candidates.emplace_back(d, c, 1, std::vector<std::uint32_t>(images.begin(), images.end()));
  }
  auto found = search_measure(candidates, {Rational(1)}, delta, gamma, guard);
  if (!found) return std::nullopt;
  if (!check_fractional_homomorphism(*found, delta, gamma, guard).holds) {
    throw Error(ErrorKind::kInternalInvariant, "LP witness fails the homomorphism check");
  }
  return found;
}

std::optional<PromiseFractionalPolymorphism> find_promise_fpol_lp(
    const PromiseTemplate& promise, std::size_t arity,
    const std::optional<BlockPartition>& partition, const ResourceGuard& guard) {
  if (arity == 0) throw Error(ErrorKind::kInvalidArgument, "arity must be positive");
  if (partition && partition->arity() != arity) {
    throw Error(ErrorKind::kInvalidArgument, "partition arity differs from the requested arity");
  }
  const ValuedStructure& delta = promise.delta;
  const ValuedStructure& gamma = promise.gamma;
  const std::size_t d = delta.domain_size();
  const std::size_t c = gamma.domain_size();
  const std::size_t inputs = tuple_count(d, arity);

  // Each candidate is a map from `sources` points to C, composed with
  // source_of to give a table on D^m.
  std::vector<std::size_t> source_of(inputs);
  std::size_t sources = inputs;
  if (partition) {
    const BlockMultisetDomain domain(d, *partition);
    Tuple tuple(arity);
    for (std::size_t flat = 0; flat < inputs; ++flat) {
      decode_tuple(flat, d, tuple);
      source_of[flat] = domain.index_of_tuple(tuple);
    }
    sources = domain.size();
  } else {
    std::iota(source_of.begin(), source_of.end(), 0);
  }
  const std::uint64_t count = saturating_pow(c, sources);
  guard.require(saturating_mul(count, inputs), "operation enumeration");

  std::vector<OperationTable> candidates;
  candidates.reserve(count);
  for (std::size_t index = 0; index < count; ++index) {
    const Tuple images = decode_tuple(index, c, sources);
    std::vector<std::uint32_t> values(inputs);
    for (std::size_t flat = 0; flat < inputs; ++flat) {
      values[flat] = static_cast<std::uint32_t>(images[source_of[flat]]);
    }
    candidates.emplace_back(d, c, arity, std::move(values));
  }
  auto found = search_measure(candidates, uniform_weights(arity), delta, gamma, guard);
  if (!found) return std::nullopt;
  PromiseFractionalPolymorphism omega(uniform_weights(arity), std::move(*found));
  if (!check_promise_fpol(omega, promise, guard).holds) {
    throw Error(ErrorKind::kInternalInvariant, "LP witness fails the polymorphism check");
  }
  return omega;
}

std::vector<Rational> wma_weights(std::size_t k) {
  if (k == 0 || k % 2 == 0) {
    throw Error(ErrorKind::kBadArity, "wma arity " + std::to_string(k) + " is not odd");
  }
  std::vector<Rational> weights(k);
  for (std::size_t i = 1; i <= k; ++i) {
    weights[i - 1] = (i <= k / 4 || i > 3 * k / 4) ? 1 : 2;
  }
  return weights;
}

Rational wma(std::size_t k, std::span<const Rational> inputs, WmaNormalization normalization) {
  const std::vector<Rational> weights = wma_weights(k);
  if (inputs.size() != k) {
    throw Error(ErrorKind::kBadArity, "wma of arity " + std::to_string(k) + " given " +
                                          std::to_string(inputs.size()) + " inputs");
  }
  Rational sum = 0;
  Rational total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += weights[i] * inputs[i];
    total += weights[i];
  }
  const Rational divisor =
      normalization == WmaNormalization::kThirdK ? Rational(3 * static_cast<long>(k)) : total;
  return Rational(sum / divisor);
}

BlockPartition wma_partition(std::size_t k) {
  wma_weights(k);
  std::vector<std::size_t> outer;
  std::vector<std::size_t> middle;
  for (std::size_t i = 1; i <= k; ++i) {
    (i <= k / 4 || i > 3 * k / 4 ? outer : middle).push_back(i - 1);
  }
  std::vector<std::vector<std::size_t>> blocks;
  if (!outer.empty()) blocks.push_back(std::move(outer));
  if (!middle.empty()) blocks.push_back(std::move(middle));
  return BlockPartition(std::move(blocks));
}

}  // namespace pvcsp::theory
