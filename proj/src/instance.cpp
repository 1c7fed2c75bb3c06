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

#include "pvcsp/instance.hpp"

#include <set>

namespace pvcsp {

Instance::Instance(std::vector<std::string> variables, std::vector<Term> terms, Rational threshold)
    : variables_(std::move(variables)), terms_(std::move(terms)), threshold_(std::move(threshold)) {
  std::set<std::string_view> seen;
  for (const auto& v : variables_) {
    if (v.empty()) throw Error(ErrorKind::kInvalidArgument, "empty variable name");
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate variable '" + v + "'");
    }
  }
}

std::optional<std::size_t> Instance::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

Instance Instance::with_threshold(Rational threshold) const {
  Instance copy = *this;
  copy.threshold_ = std::move(threshold);
  return copy;
}

std::vector<Issue> validate_instance(const Signature& signature, const Instance& instance) {
  std::vector<Issue> issues;
  for (std::size_t j = 0; j < instance.terms().size(); ++j) {
    const Term& term = instance.terms()[j];
    const std::string where = "term " + std::to_string(j) + " (" + term.symbol + ")";
    const auto symbol = signature.find(term.symbol);
    if (!symbol) {
      issues.push_back({ErrorKind::kUnknownSymbol, where + ": symbol not in signature"});
    } else if (signature[*symbol].arity != term.args.size()) {
      issues.push_back({ErrorKind::kArityMismatch,
                        where + ": " + std::to_string(term.args.size()) +
                            " arguments for arity " + std::to_string(signature[*symbol].arity)});
    }
    for (const auto& arg : term.args) {
      if (!instance.variable_index(arg)) {
        issues.push_back({ErrorKind::kUnknownVariable, where + ": undeclared variable '" + arg + "'"});
      }
    }
  }
  return issues;
}

std::vector<Issue> validate_instance(const ValuedStructure& structure, const Instance& instance) {
  return validate_instance(structure.signature(), instance);
}

std::vector<ResolvedTerm> resolve_terms(const Signature& signature, const Instance& instance) {
  const auto issues = validate_instance(signature, instance);
  if (!issues.empty()) throw Error(issues.front().kind, issues.front().message);
  std::vector<ResolvedTerm> resolved;
  resolved.reserve(instance.terms().size());
  for (const Term& term : instance.terms()) {
    ResolvedTerm r{*signature.find(term.symbol), {}};
    for (const auto& arg : term.args) r.vars.push_back(*instance.variable_index(arg));
    resolved.push_back(std::move(r));
  }
  return resolved;
}

}  // namespace pvcsp
