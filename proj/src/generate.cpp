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

#include "pvcsp/generate.hpp"

#include <algorithm>

#include "pvcsp/error.hpp"
#include "pvcsp/oracle.hpp"

namespace pvcsp::gen {
namespace {

struct Shape {
  std::size_t max_variables;
  std::size_t max_terms;
};

Shape default_shape(Family family) {
  switch (family) {
    case Family::kXor:
    case Family::kHorn:
      return {6, 8};
    case Family::kSubmodular:
      return {5, 7};
    case Family::kRandom:
      return {4, 5};
  }
  return {4, 5};
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

ExtendedRational crisp(bool allowed) {
  return allowed ? ExtendedRational(0) : ExtendedRational::infinity();
}

std::vector<ExtendedRational> crisp_table(std::size_t arity,
                                          bool (*allowed)(const Tuple&)) {
  const std::size_t count = tuple_count(2, arity);
  std::vector<ExtendedRational> table(count);
  for (std::size_t flat = 0; flat < count; ++flat) {
    table[flat] = crisp(allowed(decode_tuple(flat, 2, arity)));
  }
  return table;
}

class CostDraw {
 public:
  explicit CostDraw(const std::array<unsigned, 5>& weights)
      : distribution_(weights.begin(), weights.end()) {
    for (const char* text : kCostValues) values_.push_back(parse_extended_rational(text));
  }
  ExtendedRational operator()(std::mt19937_64& rng) { return values_[distribution_(rng)]; }
  const std::vector<ExtendedRational>& values() const { return values_; }

 private:
  std::discrete_distribution<std::size_t> distribution_;
  std::vector<ExtendedRational> values_;
};

Instance random_instance(std::mt19937_64& rng, const Signature& signature, Shape shape) {
  std::size_t min_arity = signature[0].arity;
  for (const auto& symbol : signature.symbols()) min_arity = std::min(min_arity, symbol.arity);
  const std::size_t n = std::max(min_arity, uniform(rng, 1, shape.max_variables));
  std::vector<std::string> variables;
  for (std::size_t i = 0; i < n; ++i) variables.push_back("x" + std::to_string(i));
  std::vector<std::size_t> usable;
  for (std::size_t s = 0; s < signature.size(); ++s) {
    if (signature[s].arity <= n) usable.push_back(s);
  }
  const std::size_t term_count = uniform(rng, 1, shape.max_terms);
  std::vector<Term> terms;
  for (std::size_t t = 0; t < term_count; ++t) {
    const Symbol& symbol = signature[usable[uniform(rng, 0, usable.size() - 1)]];
    Term term{symbol.name, {}};
    for (std::size_t a = 0; a < symbol.arity; ++a) {
      term.args.push_back(variables[uniform(rng, 0, n - 1)]);
    }
    terms.push_back(std::move(term));
  }
  return Instance(std::move(variables), std::move(terms), Rational(0));
}

Rational crisp_threshold(std::mt19937_64& rng) {
  static const char* const kChoices[] = {"0", "0", "0", "0", "0", "0", "0", "-1", "1/2", "1"};
  return parse_rational(kChoices[uniform(rng, 0, 9)]);
}

Rational valued_threshold(std::mt19937_64& rng, const ExtendedRational& minimum) {
  if (minimum.is_infinite()) return Rational(static_cast<long>(uniform(rng, 0, 1)));
  static const char* const kOffsets[] = {"-1", "-1/2", "0", "0", "0", "1/2"};
  return Rational(minimum.value() + parse_rational(kOffsets[uniform(rng, 0, 5)]));
}

GeneratedCase submodular_case(const GeneratorConfig& config, Shape shape, std::mt19937_64& rng,
                              std::size_t index) {
  CostDraw draw(config.cost_weights);
  std::vector<Symbol> symbols = {{"u0", 1}, {"u1", 1}, {"b0", 2}, {"b1", 2}, {"b2", 2}};
  std::vector<std::vector<ExtendedRational>> tables;
  for (const auto& symbol : symbols) {
    std::vector<ExtendedRational> table(tuple_count(2, symbol.arity));
    do {
      for (auto& entry : table) entry = draw(rng);
    } while (symbol.arity == 2 && !is_submodular(table));
    tables.push_back(std::move(table));
  }
  ValuedStructure delta(Signature(std::move(symbols)), {"0", "1"}, std::move(tables));
  Instance instance = random_instance(rng, delta.signature(), shape);
  const ExtendedRational minimum = serial::brute_force_minimize(delta, instance).value;
  instance = instance.with_threshold(valued_threshold(rng, minimum));
  return {index, PromiseTemplate(delta, delta), std::move(instance)};
}

GeneratedCase random_case(const GeneratorConfig& config, Shape shape, std::mt19937_64& rng,
                          std::size_t index) {
  CostDraw draw(config.cost_weights);
  const std::size_t d = config.domain_size != 0 ? config.domain_size : uniform(rng, 2, 3);
  std::vector<std::string> domain;
  for (std::size_t i = 0; i < d; ++i) domain.push_back(std::string(1, static_cast<char>('a' + i)));
  const std::size_t symbol_count = uniform(rng, 1, 3);
  std::vector<Symbol> symbols;
  std::vector<std::vector<ExtendedRational>> delta_tables;
  std::vector<std::vector<ExtendedRational>> gamma_tables;
  for (std::size_t s = 0; s < symbol_count; ++s) {
    const std::size_t arity = uniform(rng, 1, config.max_arity);
    symbols.push_back({"f" + std::to_string(s), arity});
    std::vector<ExtendedRational> table(tuple_count(d, arity));
    for (auto& entry : table) entry = draw(rng);
    std::vector<ExtendedRational> lowered = table;
    for (auto& entry : lowered) {
      if (uniform(rng, 0, 3) != 0) continue;
      std::vector<ExtendedRational> below;
      for (const auto& value : draw.values()) {
        if (value < entry) below.push_back(value);
      }
      if (!below.empty()) entry = below[uniform(rng, 0, below.size() - 1)];
    }
    delta_tables.push_back(std::move(table));
    gamma_tables.push_back(std::move(lowered));
  }
  Signature signature(std::move(symbols));
  ValuedStructure delta(signature, domain, std::move(delta_tables));
  ValuedStructure gamma(signature, domain, std::move(gamma_tables));
  Instance instance = random_instance(rng, signature, shape);
  const ExtendedRational minimum = serial::brute_force_minimize(delta, instance).value;
  instance = instance.with_threshold(valued_threshold(rng, minimum));
  return {index, PromiseTemplate(std::move(delta), std::move(gamma)), std::move(instance)};
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::kXor:
      return "xor";
    case Family::kHorn:
      return "horn";
    case Family::kSubmodular:
      return "submodular";
    case Family::kRandom:
      return "random";
  }
  return "random";
}

Family parse_family(std::string_view name) {
  for (Family family : {Family::kXor, Family::kHorn, Family::kSubmodular, Family::kRandom}) {
    if (name == to_string(family)) return family;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown family '" + std::string(name) + "' (xor, horn, submodular, random)");
}

void GeneratorConfig::validate() const {
  if (count == 0) throw Error(ErrorKind::kInvalidArgument, "count must be positive");
  if (max_variables > 10) {
    throw Error(ErrorKind::kInvalidArgument, "at most 10 variables per generated instance");
  }
  if (max_terms > 64) throw Error(ErrorKind::kInvalidArgument, "at most 64 terms per instance");
  if (domain_size == 1 || domain_size > 4) {
    throw Error(ErrorKind::kInvalidArgument, "random domain size must be 2, 3 or 4");
  }
  if (max_arity == 0 || max_arity > 3) {
    throw Error(ErrorKind::kInvalidArgument, "random arity must be 1, 2 or 3");
  }
  unsigned total = 0;
  for (unsigned w : cost_weights) total += w;
  if (total == 0) throw Error(ErrorKind::kInvalidArgument, "cost weights are all zero");
}

std::mt19937_64 case_engine(std::uint64_t seed, std::size_t index) {
  const auto wide_index = static_cast<std::uint64_t>(index);
  std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(wide_index),
                         static_cast<std::uint32_t>(wide_index >> 32)};
  return std::mt19937_64(sequence);
}

ValuedStructure xor_structure() {
  std::vector<Symbol> symbols;
  std::vector<std::vector<ExtendedRational>> tables;
  for (std::size_t arity = 1; arity <= 3; ++arity) {
    for (std::size_t parity = 0; parity <= 1; ++parity) {
      symbols.push_back({"lin" + std::to_string(arity) + "_" + std::to_string(parity), arity});
      std::vector<ExtendedRational> table(tuple_count(2, arity));
      for (std::size_t flat = 0; flat < table.size(); ++flat) {
        std::size_t sum = 0;
        for (std::size_t v : decode_tuple(flat, 2, arity)) sum += v;
        table[flat] = crisp(sum % 2 == parity);
      }
      tables.push_back(std::move(table));
    }
  }
  return ValuedStructure(Signature(std::move(symbols)), {"0", "1"}, std::move(tables));
}

ValuedStructure horn_structure() {
  std::vector<Symbol> symbols = {{"is0", 1}, {"is1", 1}, {"imp", 2}, {"nand2", 2}, {"horn3", 3}};
  std::vector<std::vector<ExtendedRational>> tables;
  tables.push_back(crisp_table(1, [](const Tuple& t) { return t[0] == 0; }));
  tables.push_back(crisp_table(1, [](const Tuple& t) { return t[0] == 1; }));
  tables.push_back(crisp_table(2, [](const Tuple& t) { return t[0] == 0 || t[1] == 1; }));
  tables.push_back(crisp_table(2, [](const Tuple& t) { return t[0] == 0 || t[1] == 0; }));
  tables.push_back(
      crisp_table(3, [](const Tuple& t) { return t[0] == 0 || t[1] == 0 || t[2] == 1; }));
  return ValuedStructure(Signature(std::move(symbols)), {"0", "1"}, std::move(tables));
}

bool is_submodular(const std::vector<ExtendedRational>& table) {
  // f(0,0) + f(1,1) <= f(0,1) + f(1,0); the other pairs are comparable.
  return table[0] + table[3] <= table[1] + table[2];
}

GeneratedCase generate_case(const GeneratorConfig& config, std::size_t index) {
  Shape shape = default_shape(config.family);
  if (config.max_variables != 0) shape.max_variables = config.max_variables;
  if (config.max_terms != 0) shape.max_terms = config.max_terms;
  std::mt19937_64 rng = case_engine(config.seed, index);
  switch (config.family) {
    case Family::kXor:
    case Family::kHorn: {
      ValuedStructure delta =
          config.family == Family::kXor ? xor_structure() : horn_structure();
      Instance instance = random_instance(rng, delta.signature(), shape);
      instance = instance.with_threshold(crisp_threshold(rng));
      return {index, PromiseTemplate(delta, delta), std::move(instance)};
    }
    case Family::kSubmodular:
      return submodular_case(config, shape, rng, index);
    case Family::kRandom:
      return random_case(config, shape, rng, index);
  }
  throw Error(ErrorKind::kInternalInvariant, "unhandled family");
}

std::vector<GeneratedCase> generate_batch(const GeneratorConfig& config) {
  config.validate();
  std::vector<GeneratedCase> batch;
  batch.reserve(config.count);
  for (std::size_t i = 0; i < config.count; ++i) batch.push_back(generate_case(config, i));
  return batch;
}

}  // namespace pvcsp::gen
