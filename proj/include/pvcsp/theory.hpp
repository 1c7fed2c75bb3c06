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
#include <vector>

#include "pvcsp/guard.hpp"
#include "pvcsp/measure.hpp"
#include "pvcsp/rational.hpp"
#include "pvcsp/structure.hpp"

namespace pvcsp::theory {

// Measure over unary maps D -> C.
using FractionalHomomorphism = FiniteMeasure<OperationTable>;

// Projection weights plus a measure over m-ary maps D^m -> C.
class PromiseFractionalPolymorphism {
 public:
  // Throws Error(kInvalidArgument) unless the weights are nonnegative, sum
  // to 1, and every table has arity input_weights.size() and shared domains.
  PromiseFractionalPolymorphism(std::vector<Rational> input_weights,
                                FiniteMeasure<OperationTable> output);
  static PromiseFractionalPolymorphism uniform(FiniteMeasure<OperationTable> output);

  std::size_t arity() const { return input_weights_.size(); }
  std::size_t input_size() const { return output_.atoms().front().first.input_size(); }
  std::size_t output_size() const { return output_.atoms().front().first.output_size(); }
  const std::vector<Rational>& input_weights() const { return input_weights_; }
  const FiniteMeasure<OperationTable>& output() const { return output_; }
  bool has_uniform_input() const;

  bool operator==(const PromiseFractionalPolymorphism&) const = default;

 private:
  std::vector<Rational> input_weights_;
  FiniteMeasure<OperationTable> output_;
};

// Disjoint nonempty coordinate blocks covering {0, ..., m-1}.
class BlockPartition {
 public:
  // Throws Error(kInvalidArgument) unless the blocks partition [0, m).
  explicit BlockPartition(std::vector<std::vector<std::size_t>> blocks);
  // Contiguous blocks: sizes {2, 1} gives {0,1} and {2}.
  static BlockPartition from_sizes(std::span<const std::size_t> sizes);
  static BlockPartition single(std::size_t arity);

  std::size_t arity() const { return arity_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

  bool operator==(const BlockPartition&) const = default;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::size_t arity_ = 0;
};

// The domain of the block-multiset structure: one multiset per block, of the
// block's size. Elements are indexed in mixed radix, first block most
// significant, multisets of each block in lexicographic order.
class BlockMultisetDomain {
 public:
  BlockMultisetDomain(std::size_t base_size, BlockPartition partition);

  std::size_t size() const { return size_; }
  std::size_t base_size() const { return base_size_; }
  const BlockPartition& partition() const { return partition_; }

  // Per block, the sorted element sequence of the multiset.
  std::vector<std::vector<std::size_t>> element(std::size_t index) const;
  // The element {t}_{B_1}, ..., {t}_{B_k} of a tuple t in D^m.
  std::size_t index_of_tuple(std::span<const std::size_t> tuple) const;
  // A tuple in D^m realizing the element, sorted within each block.
  Tuple arrangement(std::size_t index) const;
  // Labels such as "{0,0}|{1}".
  std::vector<std::string> labels(const std::vector<std::string>& base_labels) const;

 private:
  std::size_t base_size_;
  BlockPartition partition_;
  std::vector<std::vector<std::vector<std::size_t>>> block_multisets_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

struct Violation {
  std::size_t symbol = 0;
  std::vector<Tuple> tuples;  // one tuple for homomorphisms, m for polymorphisms
  ExtendedRational lhs;
  ExtendedRational rhs;
};

struct CheckResult {
  bool holds = true;
  std::optional<Violation> violation;  // lexicographically least
};

// sum_h chi(h) f^gamma(h(a)) <= f^delta(a) for every symbol and tuple.
// Throws kDomainMismatch on inconsistent domains or signatures.
CheckResult check_fractional_homomorphism(const FractionalHomomorphism& chi,
                                          const ValuedStructure& delta,
                                          const ValuedStructure& gamma,
                                          const ResourceGuard& guard = ResourceGuard::from_environment());

// E_{g ~ omega_O} f^gamma(g(a^1..a^m)) <= sum_i omega_I(i) f^delta(a^i) for
// every symbol and every m-tuple of tuples. Projections of weight 0 do not
// contribute to the right-hand side.
CheckResult check_promise_fpol(const PromiseFractionalPolymorphism& omega,
                               const PromiseTemplate& promise,
                               const ResourceGuard& guard = ResourceGuard::from_environment());

bool check_block_symmetry(const OperationTable& g, const BlockPartition& partition);

// Replaces block-balanced input weights with uniform ones. Throws
// kPreconditionViolated naming the failing condition.
PromiseFractionalPolymorphism symmetrize_input_weights(const PromiseFractionalPolymorphism& omega,
                                                       const BlockPartition& partition);

// Costs are (1/m) * min over block-wise arrangements of the summed delta
// costs. One block of size m gives the multiset structure; blocks of sizes
// L+1 and L give the bimultiset structure.
ValuedStructure block_multiset_structure(const ValuedStructure& delta,
                                         const BlockPartition& partition,
                                         const ResourceGuard& guard = ResourceGuard::from_environment());

// g -> g~ with g~(element) = g(any arrangement of element).
FractionalHomomorphism lift_fpol_to_frachom(const PromiseFractionalPolymorphism& omega,
                                            const BlockPartition& partition,
                                            const PromiseTemplate& promise);

// chi over maps (block-multiset domain) -> C becomes omega_O(g o h) with h
// sending a tuple to its block multisets; omega_I is uniform.
PromiseFractionalPolymorphism fpol_from_frachom(const FractionalHomomorphism& chi,
                                                const BlockPartition& partition,
                                                std::size_t base_size);

// Measure over g o h with weight chi(h) * omega(g), where
// (g o h)(a^1..a^m) = g(h(a^1), ..., h(a^m)). omega's input weights carry
// over unchanged.
PromiseFractionalPolymorphism compose_sampling_fpol(const FractionalHomomorphism& chi,
                                                    const PromiseFractionalPolymorphism& omega);

// LP over all maps D -> C. Empty optional iff no fractional homomorphism exists.
std::optional<FractionalHomomorphism> find_frachom_lp(
    const ValuedStructure& delta, const ValuedStructure& gamma,
    const ResourceGuard& guard = ResourceGuard::from_environment());

// LP over omega_O with uniform omega_I, ranging over all m-ary maps D^m -> C
// or, given a partition, over the block-symmetric ones.
std::optional<PromiseFractionalPolymorphism> find_promise_fpol_lp(
    const PromiseTemplate& promise, std::size_t arity,
    const std::optional<BlockPartition>& partition = std::nullopt,
    const ResourceGuard& guard = ResourceGuard::from_environment());

namespace serial {
CheckResult check_fractional_homomorphism(const FractionalHomomorphism& chi,
                                          const ValuedStructure& delta,
                                          const ValuedStructure& gamma,
                                          const ResourceGuard& guard = ResourceGuard::from_environment());
CheckResult check_promise_fpol(const PromiseFractionalPolymorphism& omega,
                               const PromiseTemplate& promise,
                               const ResourceGuard& guard = ResourceGuard::from_environment());
ValuedStructure block_multiset_structure(const ValuedStructure& delta,
                                         const BlockPartition& partition,
                                         const ResourceGuard& guard = ResourceGuard::from_environment());
}  // namespace serial

// 2-period weighted centred moving average. Weights are 1 on positions
// 1..floor(k/4), 2 on floor(k/4)+1..floor(3k/4), 1 on the rest.
enum class WmaNormalization {
  kThirdK,  // divide by 3k
  kWeightSum,    // divide by the weight total (idempotent)
};

// Throws Error(kBadArity) unless k is odd and inputs.size() == k.
Rational wma(std::size_t k, std::span<const Rational> inputs,
             WmaNormalization normalization = WmaNormalization::kThirdK);
std::vector<Rational> wma_weights(std::size_t k);
// Outer positions and middle positions, by the index ranges above.
BlockPartition wma_partition(std::size_t k);

}  // namespace pvcsp::theory
