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

#include "pvcsp/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "pvcsp/error.hpp"

namespace pvcsp::io {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream stream{std::string(raw)};
    Line line{number, {}};
    for (std::string token; stream >> token;) line.tokens.push_back(std::move(token));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

class Reader {
 public:
  Reader(std::string_view text, std::string_view source)
      : lines_(tokenize(text)), source_(source) {}

  bool done() const { return next_ >= lines_.size(); }
  const Line& peek() const { return lines_[next_]; }
  const Line& take() { return lines_[next_++]; }

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw Error(ErrorKind::kParse, source_ + ":" + std::to_string(line) + ": " + message);
  }
  [[noreturn]] void fail_at_end(const std::string& message) const {
    throw Error(ErrorKind::kParse, source_ + ": " + message);
  }

  void expect_header(std::string_view magic) {
    if (done()) fail_at_end("empty input, expected '" + std::string(magic) + " 1'");
    const Line& line = take();
    if (line.tokens.size() != 2 || line.tokens[0] != magic) {
      fail(line.number, "expected header '" + std::string(magic) + " 1'");
    }
    if (line.tokens[1] != "1") fail(line.number, "unsupported format version " + line.tokens[1]);
  }

  Rational rational(const Line& line, const std::string& token) const {
    try {
      return parse_rational(token);
    } catch (const Error& error) {
      fail(line.number, error.detail());
    }
  }

  ExtendedRational extended(const Line& line, const std::string& token) const {
    try {
      return parse_extended_rational(token);
    } catch (const Error& error) {
      fail(line.number, error.detail());
    }
  }

  std::size_t count(const Line& line, const std::string& token) const {
    std::size_t value = 0;
    if (token.empty() || token.size() > 9) fail(line.number, "expected a count, got '" + token + "'");
    for (char ch : token) {
      if (ch < '0' || ch > '9') fail(line.number, "expected a count, got '" + token + "'");
      value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    return value;
  }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::string source_;
};

std::unordered_map<std::string, std::size_t> index_labels(const Reader& reader, const Line& line,
                                                          const std::vector<std::string>& labels) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == ":" || !index.emplace(labels[i], i).second) {
      reader.fail(line.number, "invalid or duplicate label '" + labels[i] + "'");
    }
  }
  return index;
}

std::size_t lookup(const Reader& reader, const Line& line,
                   const std::unordered_map<std::string, std::size_t>& index,
                   const std::string& label) {
  const auto it = index.find(label);
  if (it == index.end()) reader.fail(line.number, "unknown label '" + label + "'");
  return it->second;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    out += ' ';
    out += token;
  }
  return out;
}

}  // namespace

ValuedStructure parse_structure(std::string_view text, std::string_view source) {
  Reader reader(text, source);
  reader.expect_header("pvcsp-structure");
  std::optional<std::vector<std::string>> domain;
  std::unordered_map<std::string, std::size_t> label_index;
  std::vector<Symbol> symbols;
  std::vector<std::vector<ExtendedRational>> tables;
  std::set<std::string> names;

  while (!reader.done()) {
    const Line& line = reader.take();
    const auto& tokens = line.tokens;
    if (tokens[0] == "domain") {
      if (domain) reader.fail(line.number, "duplicate domain line");
      domain.emplace(tokens.begin() + 1, tokens.end());
      if (domain->empty()) reader.fail(line.number, "domain is empty");
      label_index = index_labels(reader, line, *domain);
    } else if (tokens[0] == "function") {
      if (!domain) reader.fail(line.number, "function before domain line");
      if (tokens.size() != 5 || tokens[3] != "default") {
        reader.fail(line.number, "expected 'function <name> <arity> default <value>'");
      }
      const std::size_t arity = reader.count(line, tokens[2]);
      if (arity == 0) reader.fail(line.number, "arity must be positive");
      if (!names.insert(tokens[1]).second) {
        reader.fail(line.number, "duplicate function '" + tokens[1] + "'");
      }
      std::size_t entries = 0;
      try {
        entries = tuple_count(domain->size(), arity);
        ResourceGuard::from_environment().require(entries, "structure table size");
      } catch (const Error& error) {
        reader.fail(line.number, error.detail());
      }
      std::vector<ExtendedRational> table(entries, reader.extended(line, tokens[4]));
      std::vector<bool> assigned(entries, false);
      bool closed = false;
      Tuple tuple(arity);
      while (!reader.done()) {
        const Line& entry = reader.take();
        if (entry.tokens.size() == 1 && entry.tokens[0] == "end") {
          closed = true;
          break;
        }
        if (entry.tokens.size() != arity + 2 || entry.tokens[arity] != ":") {
          reader.fail(entry.number, "expected " + std::to_string(arity) + " labels, ':' and a value");
        }
        for (std::size_t i = 0; i < arity; ++i) {
          tuple[i] = lookup(reader, entry, label_index, entry.tokens[i]);
        }
        const std::size_t flat = encode_tuple(tuple, domain->size());
        if (assigned[flat]) reader.fail(entry.number, "duplicate entry for this tuple");
        assigned[flat] = true;
        table[flat] = reader.extended(entry, entry.tokens[arity + 1]);
      }
      if (!closed) reader.fail(line.number, "function '" + tokens[1] + "' is missing 'end'");
      symbols.push_back({tokens[1], arity});
      tables.push_back(std::move(table));
    } else {
      reader.fail(line.number, "unexpected '" + tokens[0] + "'");
    }
  }
  if (!domain) reader.fail_at_end("missing domain line");
  return ValuedStructure(Signature(std::move(symbols)), std::move(*domain), std::move(tables));
}

Instance parse_instance(std::string_view text, std::string_view source) {
  Reader reader(text, source);
  reader.expect_header("pvcsp-instance");
  std::optional<std::vector<std::string>> variables;
  std::vector<Term> terms;
  std::optional<Rational> threshold;
  while (!reader.done()) {
    const Line& line = reader.take();
    const auto& tokens = line.tokens;
    if (tokens[0] == "variables") {
      if (variables) reader.fail(line.number, "duplicate variables line");
      variables.emplace(tokens.begin() + 1, tokens.end());
    } else if (tokens[0] == "term") {
      if (tokens.size() < 3) reader.fail(line.number, "expected 'term <symbol> <variables...>'");
      terms.push_back({tokens[1], std::vector<std::string>(tokens.begin() + 2, tokens.end())});
    } else if (tokens[0] == "threshold") {
      if (threshold) reader.fail(line.number, "duplicate threshold line");
      if (tokens.size() != 2) reader.fail(line.number, "expected 'threshold <rational>'");
      threshold = reader.rational(line, tokens[1]);
    } else {
      reader.fail(line.number, "unexpected '" + tokens[0] + "'");
    }
  }
  if (!variables) reader.fail_at_end("missing variables line");
  if (!threshold) reader.fail_at_end("missing threshold line");
  return Instance(std::move(*variables), std::move(terms), std::move(*threshold));
}

MeasureFile parse_measure(std::string_view text, std::string_view source) {
  Reader reader(text, source);
  reader.expect_header("pvcsp-measure");
  std::optional<MeasureKind> kind;
  std::optional<std::size_t> arity;
  std::optional<std::vector<std::string>> inputs;
  std::optional<std::vector<std::string>> outputs;
  std::unordered_map<std::string, std::size_t> output_index;
  std::optional<std::vector<Rational>> weights;
  std::vector<FiniteMeasure<OperationTable>::Atom> atoms;

  const auto once = [&](const Line& line, bool present) {
    if (present) reader.fail(line.number, "duplicate '" + line.tokens[0] + "' line");
  };
  while (!reader.done()) {
    const Line& line = reader.take();
    const auto& tokens = line.tokens;
    if (tokens[0] == "kind") {
      once(line, kind.has_value());
      if (tokens.size() != 2) reader.fail(line.number, "expected 'kind frachom|fpol'");
      if (tokens[1] == "frachom") {
        kind = MeasureKind::kFractionalHomomorphism;
      } else if (tokens[1] == "fpol") {
        kind = MeasureKind::kPromisePolymorphism;
      } else {
        reader.fail(line.number, "unknown kind '" + tokens[1] + "'");
      }
    } else if (tokens[0] == "arity") {
      once(line, arity.has_value());
      if (tokens.size() != 2) reader.fail(line.number, "expected 'arity <m>'");
      arity = reader.count(line, tokens[1]);
      if (*arity == 0) reader.fail(line.number, "arity must be positive");
    } else if (tokens[0] == "input-domain") {
      once(line, inputs.has_value());
      inputs.emplace(tokens.begin() + 1, tokens.end());
      if (inputs->empty()) reader.fail(line.number, "input domain is empty");
      index_labels(reader, line, *inputs);
    } else if (tokens[0] == "output-domain") {
      once(line, outputs.has_value());
      outputs.emplace(tokens.begin() + 1, tokens.end());
      if (outputs->empty()) reader.fail(line.number, "output domain is empty");
      output_index = index_labels(reader, line, *outputs);
    } else if (tokens[0] == "input-weights") {
      once(line, weights.has_value());
      weights.emplace();
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        weights->push_back(reader.rational(line, tokens[i]));
      }
    } else if (tokens[0] == "op") {
      if (!kind || !arity || !inputs || !outputs) {
        reader.fail(line.number, "'op' before kind, arity and both domains");
      }
      if (tokens.size() != 2) reader.fail(line.number, "expected 'op <weight>'");
      const Rational weight = reader.rational(line, tokens[1]);
      std::size_t entries = 0;
      try {
        entries = tuple_count(inputs->size(), *arity);
        ResourceGuard::from_environment().require(entries, "operation table size");
      } catch (const Error& error) {
        reader.fail(line.number, error.detail());
      }
      std::vector<std::uint32_t> values;
      bool closed = false;
      while (!reader.done()) {
        const Line& row = reader.take();
        if (row.tokens.size() == 1 && row.tokens[0] == "end") {
          closed = true;
          break;
        }
        if (row.tokens[0] != "values") reader.fail(row.number, "expected 'values' or 'end'");
        for (std::size_t i = 1; i < row.tokens.size(); ++i) {
          values.push_back(
              static_cast<std::uint32_t>(lookup(reader, row, output_index, row.tokens[i])));
        }
      }
      if (!closed) reader.fail(line.number, "op is missing 'end'");
      if (values.size() != entries) {
        reader.fail(line.number, "op has " + std::to_string(values.size()) + " values, expected " +
                                     std::to_string(entries));
      }
      atoms.emplace_back(OperationTable(inputs->size(), outputs->size(), *arity, std::move(values)),
                         weight);
    } else {
      reader.fail(line.number, "unexpected '" + tokens[0] + "'");
    }
  }
  if (!kind || !arity || !inputs || !outputs) {
    reader.fail_at_end("missing kind, arity or domain lines");
  }
  if (atoms.empty()) reader.fail_at_end("measure has no 'op' entries");
  MeasureFile file;
  file.kind = *kind;
  file.input_domain = std::move(*inputs);
  file.output_domain = std::move(*outputs);
  if (*kind == MeasureKind::kFractionalHomomorphism) {
    if (*arity != 1) reader.fail_at_end("frachom measures have arity 1");
    if (weights) reader.fail_at_end("frachom measures take no input weights");
    file.input_weights = {Rational(1)};
  } else if (weights) {
    if (weights->size() != *arity) {
      reader.fail_at_end("input-weights has " + std::to_string(weights->size()) +
                         " entries, expected " + std::to_string(*arity));
    }
    file.input_weights = std::move(*weights);
  } else {
    file.input_weights.assign(*arity, make_rational(1, static_cast<long>(*arity)));
  }
  file.measure = FiniteMeasure<OperationTable>(std::move(atoms));
  if (*kind == MeasureKind::kPromisePolymorphism) file.as_polymorphism();
  return file;
}

theory::FractionalHomomorphism MeasureFile::as_homomorphism() const {
  if (kind != MeasureKind::kFractionalHomomorphism) {
    throw Error(ErrorKind::kInvalidArgument, "measure file is not a frachom");
  }
  return measure;
}

theory::PromiseFractionalPolymorphism MeasureFile::as_polymorphism() const {
  return theory::PromiseFractionalPolymorphism(input_weights, measure);
}

MeasureFile homomorphism_file(const theory::FractionalHomomorphism& chi,
                              std::vector<std::string> input_domain,
                              std::vector<std::string> output_domain) {
  return {MeasureKind::kFractionalHomomorphism, std::move(input_domain), std::move(output_domain),
          {Rational(1)}, chi};
}

MeasureFile polymorphism_file(const theory::PromiseFractionalPolymorphism& omega,
                              std::vector<std::string> input_domain,
                              std::vector<std::string> output_domain) {
  return {MeasureKind::kPromisePolymorphism, std::move(input_domain), std::move(output_domain),
          omega.input_weights(), omega.output()};
}

std::string print_structure(const ValuedStructure& structure) {
  std::ostringstream out;
  out << "pvcsp-structure 1\n";
  out << "domain" << join(structure.domain()) << '\n';
  const std::size_t d = structure.domain_size();
  for (std::size_t s = 0; s < structure.signature().size(); ++s) {
    const Symbol& symbol = structure.signature()[s];
    const auto& table = structure.table(s);
    std::map<ExtendedRational, std::size_t> frequency;
    for (const auto& value : table) ++frequency[value];
    auto best = frequency.begin();
    for (auto it = frequency.begin(); it != frequency.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const ExtendedRational fallback = best->first;
    out << "function " << symbol.name << ' ' << symbol.arity << " default " << to_string(fallback)
        << '\n';
    Tuple tuple(symbol.arity);
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
      if (table[flat] == fallback) continue;
      decode_tuple(flat, d, tuple);
      for (std::size_t i : tuple) out << structure.domain()[i] << ' ';
      out << ": " << to_string(table[flat]) << '\n';
    }
    out << "end\n";
  }
  return out.str();
}

std::string print_instance(const Instance& instance) {
  std::ostringstream out;
  out << "pvcsp-instance 1\n";
  out << "variables" << join(instance.variables()) << '\n';
  for (const auto& term : instance.terms()) out << "term " << term.symbol << join(term.args) << '\n';
  out << "threshold " << to_string(instance.threshold()) << '\n';
  return out.str();
}

std::string print_measure(const MeasureFile& file) {
  std::ostringstream out;
  const std::size_t arity = file.measure.atoms().front().first.arity();
  out << "pvcsp-measure 1\n";
  out << "kind "
      << (file.kind == MeasureKind::kFractionalHomomorphism ? "frachom" : "fpol") << '\n';
  out << "arity " << arity << '\n';
  out << "input-domain" << join(file.input_domain) << '\n';
  out << "output-domain" << join(file.output_domain) << '\n';
  if (file.kind == MeasureKind::kPromisePolymorphism) {
    out << "input-weights";
    for (const auto& w : file.input_weights) out << ' ' << to_string(w);
    out << '\n';
  }
  for (const auto& [table, weight] : file.measure.atoms()) {
    out << "op " << to_string(weight) << '\n';
    out << "values";
    for (auto value : table.values()) out << ' ' << file.output_domain[value];
    out << "\nend\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ValuedStructure load_structure(const std::string& path) {
  return parse_structure(read_file(path), path);
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path), path); }

MeasureFile load_measure(const std::string& path) { return parse_measure(read_file(path), path); }

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
}

}  // namespace pvcsp::io
