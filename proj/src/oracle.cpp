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

#include "pvcsp/oracle.hpp"

#include <cstdint>

#include <omp.h>

#include "pvcsp/error.hpp"
#include "pvcsp/guard.hpp"

namespace pvcsp {

ExtendedRational evaluate_cost(const ValuedStructure& structure,
                               std::span<const ResolvedTerm> terms,
                               std::span<const std::size_t> assignment) {
  ExtendedRational total;
  Tuple tuple;
  for (const ResolvedTerm& term : terms) {
    tuple.resize(term.vars.size());
    for (std::size_t l = 0; l < term.vars.size(); ++l) tuple[l] = assignment[term.vars[l]];
    const ExtendedRational& c = structure.cost(term.symbol, tuple);
    if (c.is_infinite()) return ExtendedRational::infinity();
    total += c;
  }
  return total;
}

ExtendedRational evaluate_cost(const ValuedStructure& structure, const Instance& instance,
                               const std::map<std::string, std::string>& assignment) {
  const auto terms = resolve_terms(structure.signature(), instance);
  std::vector<std::size_t> positions(instance.variables().size());
  for (std::size_t v = 0; v < positions.size(); ++v) {
    const auto& name = instance.variables()[v];
    const auto it = assignment.find(name);
    if (it == assignment.end()) {
      throw Error(ErrorKind::kUnassignedVariable, "variable '" + name + "' has no value");
    }
    const auto label = structure.label_index(it->second);
    if (!label) throw Error(ErrorKind::kUnknownLabel, "label '" + it->second + "' not in domain");
    positions[v] = *label;
  }
  return evaluate_cost(structure, terms, positions);
}

namespace {

struct Candidate {
  ExtendedRational value = ExtendedRational::infinity();
  std::uint64_t index = UINT64_MAX;

  void offer(const ExtendedRational& v, std::uint64_t i) {
    if (v.is_infinite()) return;
    if (index == UINT64_MAX || v < value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
};

std::uint64_t assignment_count(const ValuedStructure& structure, const Instance& instance) {
  const std::uint64_t count =
      saturating_pow(structure.domain_size(), instance.variables().size());
  ResourceGuard::from_environment().require(count, "brute-force enumeration");
  return count;
}

MinimumResult finish(const Candidate& best, const ValuedStructure& structure,
                     const Instance& instance) {
  MinimumResult result;
  if (best.index == UINT64_MAX) return result;
  result.value = best.value;
  result.argmin =
      decode_tuple(static_cast<std::size_t>(best.index), structure.domain_size(),
                   instance.variables().size());
  return result;
}

}  // namespace

namespace serial {

MinimumResult brute_force_minimize(const ValuedStructure& structure, const Instance& instance) {
  const auto terms = resolve_terms(structure.signature(), instance);
  const std::uint64_t count = assignment_count(structure, instance);
  Candidate best;
  std::vector<std::size_t> assignment(instance.variables().size());
  for (std::uint64_t i = 0; i < count; ++i) {
    decode_tuple(static_cast<std::size_t>(i), structure.domain_size(), assignment);
    best.offer(evaluate_cost(structure, terms, assignment), i);
  }
  return finish(best, structure, instance);
}

}  // namespace serial

MinimumResult brute_force_minimize(const ValuedStructure& structure, const Instance& instance) {
  const auto terms = resolve_terms(structure.signature(), instance);
  const std::uint64_t count = assignment_count(structure, instance);
  const auto n = static_cast<std::int64_t>(count);
  Candidate best;
#pragma omp parallel if (n > 256)
  {
    Candidate local;
    std::vector<std::size_t> assignment(instance.variables().size());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      decode_tuple(static_cast<std::size_t>(i), structure.domain_size(), assignment);
      local.offer(evaluate_cost(structure, terms, assignment), static_cast<std::uint64_t>(i));
    }
#pragma omp critical(pvcsp_brute_force_merge)
    if (local.index != UINT64_MAX) best.offer(local.value, local.index);
  }
  return finish(best, structure, instance);
}

ExtendedRational brute_force_min(const ValuedStructure& structure, const Instance& instance) {
  return brute_force_minimize(structure, instance).value;
}

const char* to_string(OracleClass cls) {
  switch (cls) {
    case OracleClass::kYes: return "YES";
    case OracleClass::kNo: return "NO";
    case OracleClass::kGap: return "GAP";
  }
  return "?";
}

OracleClass pvcsp_oracle(const PromiseTemplate& promise, const Instance& instance) {
  const ExtendedRational u(instance.threshold());
  if (brute_force_min(promise.delta, instance) <= u) return OracleClass::kYes;
  if (brute_force_min(promise.gamma, instance) > u) return OracleClass::kNo;
  return OracleClass::kGap;
}

}  // namespace pvcsp
