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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pvcsp/instance.hpp"
#include "pvcsp/measure.hpp"
#include "pvcsp/structure.hpp"
#include "pvcsp/theory.hpp"

// Line-based text formats. Tokens are separated by whitespace and '#' starts
// a comment. Rationals are written "p/q" and +inf as "inf".
//
//   pvcsp-structure 1            pvcsp-instance 1
//   domain 0 1                   variables x y z
//   function f 2 default inf     term f x y
//   0 1 : 0                      threshold 0
//   1 0 : 0
//   end
//
//   pvcsp-measure 1
//   kind fpol                    (or frachom, which requires arity 1)
//   arity 3
//   input-domain 0 1
//   output-domain 0 1
//   input-weights 1/3 1/3 1/3    (fpol only; uniform when absent)
//   op 1
//   values 0 1 1 0 1 0 0 1       (output labels in flat input order)
//   end
namespace pvcsp::io {

enum class MeasureKind { kFractionalHomomorphism, kPromisePolymorphism };

struct MeasureFile {
  MeasureKind kind = MeasureKind::kPromisePolymorphism;
  std::vector<std::string> input_domain;
  std::vector<std::string> output_domain;
  std::vector<Rational> input_weights;
  FiniteMeasure<OperationTable> measure;

  theory::FractionalHomomorphism as_homomorphism() const;
  theory::PromiseFractionalPolymorphism as_polymorphism() const;

  bool operator==(const MeasureFile&) const = default;
};

MeasureFile homomorphism_file(const theory::FractionalHomomorphism& chi,
                              std::vector<std::string> input_domain,
                              std::vector<std::string> output_domain);
MeasureFile polymorphism_file(const theory::PromiseFractionalPolymorphism& omega,
                              std::vector<std::string> input_domain,
                              std::vector<std::string> output_domain);

// Parsers throw Error(kParse) with "<source>:<line>: " prefixes for syntax
// problems; semantic checks of the constructed objects keep their own kinds.
ValuedStructure parse_structure(std::string_view text, std::string_view source = "<structure>");
Instance parse_instance(std::string_view text, std::string_view source = "<instance>");
MeasureFile parse_measure(std::string_view text, std::string_view source = "<measure>");

// Canonical text. Each table's default is its most frequent value, the
// smallest one on ties.
std::string print_structure(const ValuedStructure& structure);
std::string print_instance(const Instance& instance);
std::string print_measure(const MeasureFile& measure);

// Throws Error(kInvalidArgument) when the file cannot be read.
std::string read_file(const std::string& path);
ValuedStructure load_structure(const std::string& path);
Instance load_instance(const std::string& path);
MeasureFile load_measure(const std::string& path);
// Throws Error(kInvalidArgument) when the file cannot be written.
void write_file(const std::string& path, std::string_view content);

}  // namespace pvcsp::io
