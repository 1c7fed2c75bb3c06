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
#include <string>
#include <string_view>
#include <vector>

#include "pvcsp/error.hpp"
#include "pvcsp/rational.hpp"
#include "pvcsp/structure.hpp"

namespace pvcsp {

struct Term {
  std::string symbol;
  std::vector<std::string> args;

  bool operator==(const Term&) const = default;
};

// A sum of terms over named variables together with a threshold.
class Instance {
 public:
  Instance() = default;
  // Throws Error(kInvalidArgument) on duplicate variable names.
  Instance(std::vector<std::string> variables, std::vector<Term> terms, Rational threshold);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Rational& threshold() const { return threshold_; }
  std::optional<std::size_t> variable_index(std::string_view name) const;

  Instance with_threshold(Rational threshold) const;

  bool operator==(const Instance& other) const {
    return variables_ == other.variables_ && terms_ == other.terms_ &&
           threshold_ == other.threshold_;
  }

 private:
  std::vector<std::string> variables_;
  std::vector<Term> terms_;
  Rational threshold_ = 0;
};

struct Issue {
  ErrorKind kind;
  std::string message;
};

// Every violation, in term order. Empty means well-formed.
std::vector<Issue> validate_instance(const Signature& signature, const Instance& instance);
std::vector<Issue> validate_instance(const ValuedStructure& structure, const Instance& instance);

// A term with its symbol and variables replaced by positions.
struct ResolvedTerm {
  std::size_t symbol;
  std::vector<std::size_t> vars;
};

// Throws the first validation issue as an Error.
std::vector<ResolvedTerm> resolve_terms(const Signature& signature, const Instance& instance);

}  // namespace pvcsp
