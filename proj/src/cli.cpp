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

#include "pvcsp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvcsp/compare.hpp"
#include "pvcsp/error.hpp"
#include "pvcsp/generate.hpp"
#include "pvcsp/io.hpp"
#include "pvcsp/oracle.hpp"
#include "pvcsp/relax.hpp"

namespace pvcsp::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string structure;
  std::string gamma;
  std::string instance;
  std::vector<std::string> measures;
  std::string algorithm = "combined";
  std::string partition;
  std::string out;
  std::string family = "random";
  std::string engines = "combined";
  std::string cost_weights;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t arity = 0;
  std::size_t half = 0;
  std::size_t variables = 0;
  std::size_t terms = 0;
  std::size_t domain_size = 0;
  std::size_t max_arity = 2;
  std::uint64_t cap = 0;
  bool json = false;
  bool expect_weak = false;
};

// Sets PVCSP_CAP for the lifetime of one run and restores the previous value.
class ScopedCap {
 public:
  explicit ScopedCap(std::uint64_t cap) {
    if (const char* previous = std::getenv("PVCSP_CAP")) previous_ = previous;
    ::setenv("PVCSP_CAP", std::to_string(cap).c_str(), 1);
  }
  ~ScopedCap() {
    if (previous_) {
      ::setenv("PVCSP_CAP", previous_->c_str(), 1);
    } else {
      ::unsetenv("PVCSP_CAP");
    }
  }
  ScopedCap(const ScopedCap&) = delete;
  ScopedCap& operator=(const ScopedCap&) = delete;

 private:
  std::optional<std::string> previous_;
};

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream stream(text);
  while (std::getline(stream, part, separator)) parts.push_back(part);
  if (!text.empty() && text.back() == separator) parts.emplace_back();
  return parts;
}

std::size_t parse_index(const std::string& token, const std::string& context) {
  if (token.empty() || token.size() > 6 ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "bad number '" + token + "' in " + context);
  }
  return static_cast<std::size_t>(std::stoul(token));
}

std::string tuple_text(const Tuple& tuple, const std::vector<std::string>& labels) {
  std::string text = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) text += ',';
    text += labels[tuple[i]];
  }
  return text + ")";
}

void emit(const Options& options, std::ostream& out, const std::string& content) {
  if (options.out.empty()) {
    out << content;
  } else {
    io::write_file(options.out, content);
  }
}

const ValuedStructure& require_loaded(const std::optional<ValuedStructure>& structure,
                                      const char* flag) {
  if (!structure) throw Error(ErrorKind::kInvalidArgument, std::string("missing ") + flag);
  return *structure;
}

void require_labels(const std::vector<std::string>& actual,
                    const std::vector<std::string>& expected, const std::string& what) {
  if (actual != expected) {
    throw Error(ErrorKind::kDomainMismatch, what + " labels differ from the structure's domain");
  }
}

std::string extended_value_text(const ExtendedValue& value) { return to_string(value); }

int cmd_solve(const Options& options, std::ostream& out) {
  const ValuedStructure delta = io::load_structure(options.structure);
  const Instance instance = io::load_instance(options.instance);
  ordered_json report;
  report["algorithm"] = options.algorithm;

  if (options.algorithm == "oracle") {
    const ValuedStructure gamma =
        options.gamma.empty() ? delta : io::load_structure(options.gamma);
    const PromiseTemplate promise(delta, gamma);
    resolve_terms(delta.signature(), instance);
    const ExtendedRational delta_min = brute_force_min(promise.delta, instance);
    const ExtendedRational gamma_min = brute_force_min(promise.gamma, instance);
    const OracleClass cls = pvcsp_oracle(promise, instance);
    report["delta_min"] = to_string(delta_min);
    report["gamma_min"] = to_string(gamma_min);
    report["threshold"] = to_string(instance.threshold());
    report["verdict"] = to_string(cls);
    if (options.json) {
      out << report.dump(2) << '\n';
    } else {
      out << "algorithm oracle\n"
          << "delta-min " << to_string(delta_min) << '\n'
          << "gamma-min " << to_string(gamma_min) << '\n'
          << "threshold " << to_string(instance.threshold()) << '\n'
          << "verdict " << to_string(cls) << '\n';
    }
    return cls == OracleClass::kNo ? kExitNo : kExitYes;
  }

  relax::SolveAnswer answer;
  if (options.algorithm == "combined") {
    answer = relax::combined_solve(delta, instance);
  } else if (options.algorithm == "blp") {
    answer = relax::blp_only_solve(delta, instance);
  } else if (options.algorithm == "aip") {
    answer = relax::aip_only_solve(delta, instance);
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown algorithm '" + options.algorithm + "'");
  }
  const relax::SolveTrace& trace = answer.trace;
  std::vector<std::string> eliminated;
  for (const auto& key : trace.refinement_eliminated) {
    eliminated.push_back(relax::describe_column(key, delta, instance));
  }
  report["threshold"] = to_string(instance.threshold());
  report["blp_columns"] = trace.blp_columns;
  report["blp_rows"] = trace.blp_rows;
  report["domain_eliminated"] = trace.domain_eliminated;
  if (trace.blp_value) report["blp_value"] = extended_value_text(*trace.blp_value);
  if (trace.star_provenance) report["star_point"] = relax::to_string(*trace.star_provenance);
  if (trace.star_provenance) {
    report["refinement_eliminated"] = eliminated;
    report["refined_columns"] = *trace.refined_columns;
  } else if (trace.refined_columns) {
    report["aip_columns"] = *trace.refined_columns;
  }
  if (trace.aff_value) report["aff_value"] = extended_value_text(*trace.aff_value);
  report["verdict"] = relax::to_string(answer.verdict);

  if (options.json) {
    out << report.dump(2) << '\n';
  } else {
    out << "algorithm " << options.algorithm << '\n';
    out << "threshold " << to_string(instance.threshold()) << '\n';
    out << "columns " << trace.blp_columns << " rows " << trace.blp_rows
        << " outside-domain " << trace.domain_eliminated << '\n';
    if (trace.blp_value) out << "blp-value " << extended_value_text(*trace.blp_value) << '\n';
    if (trace.star_provenance) {
      out << "star-point " << relax::to_string(*trace.star_provenance) << '\n';
    }
    if (trace.star_provenance) {
      out << "refinement-eliminated " << eliminated.size();
      for (const auto& name : eliminated) out << ' ' << name;
      out << '\n';
      out << "refined-columns " << *trace.refined_columns << '\n';
    } else if (trace.refined_columns) {
      out << "aip-columns " << *trace.refined_columns << '\n';
    }
    if (trace.aff_value) out << "aff-value " << extended_value_text(*trace.aff_value) << '\n';
    out << "verdict " << relax::to_string(answer.verdict) << '\n';
  }
  return answer.verdict == relax::Verdict::kYes ? kExitYes : kExitNo;
}

int cmd_check(const Options& options, std::ostream& out) {
  if (options.measures.size() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "check takes exactly one --measure");
  }
  const ValuedStructure delta = io::load_structure(options.structure);
  const ValuedStructure gamma = options.gamma.empty() ? delta : io::load_structure(options.gamma);
  const io::MeasureFile file = io::load_measure(options.measures.front());
  require_labels(file.input_domain, delta.domain(), "measure input");
  require_labels(file.output_domain, gamma.domain(), "measure output");
  theory::CheckResult result;
  if (file.kind == io::MeasureKind::kFractionalHomomorphism) {
    result = theory::check_fractional_homomorphism(file.as_homomorphism(), delta, gamma);
  } else {
    result = theory::check_promise_fpol(file.as_polymorphism(), PromiseTemplate(delta, gamma));
  }
  ordered_json report;
  report["holds"] = result.holds;
  std::string tuples;
  if (result.violation) {
    const auto& violation = *result.violation;
    for (const auto& tuple : violation.tuples) tuples += tuple_text(tuple, delta.domain());
    report["symbol"] = delta.signature()[violation.symbol].name;
    report["tuples"] = tuples;
    report["lhs"] = to_string(violation.lhs);
    report["rhs"] = to_string(violation.rhs);
  }
  if (options.json) {
    out << report.dump(2) << '\n';
  } else if (result.holds) {
    out << "holds\n";
  } else {
    const auto& violation = *result.violation;
    out << "violated " << delta.signature()[violation.symbol].name << ' ' << tuples << " lhs "
        << to_string(violation.lhs) << " rhs " << to_string(violation.rhs) << '\n';
  }
  return result.holds ? kExitYes : kExitNo;
}

theory::BlockPartition partition_or(const Options& options, const char* what) {
  if (options.partition.empty()) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + " needs --partition");
  }
  return parse_partition(options.partition);
}

int cmd_construct(const std::string& what, const Options& options, std::ostream& out) {
  std::optional<ValuedStructure> delta;
  std::optional<ValuedStructure> gamma;
  if (!options.structure.empty()) delta = io::load_structure(options.structure);
  if (!options.gamma.empty()) gamma = io::load_structure(options.gamma);
  if (!gamma && delta) gamma = delta;
  std::vector<io::MeasureFile> measures;
  for (const auto& path : options.measures) measures.push_back(io::load_measure(path));
  const auto measure_count = [&](std::size_t expected) {
    if (measures.size() != expected) {
      throw Error(ErrorKind::kInvalidArgument,
                  what + " takes " + std::to_string(expected) + " --measure file(s)");
    }
  };

  if (what == "multiset" || what == "bimultiset" || what == "blocks") {
    const ValuedStructure& base = require_loaded(delta, "--structure");
    std::optional<theory::BlockPartition> partition;
    if (what == "multiset") {
      if (options.arity == 0) throw Error(ErrorKind::kInvalidArgument, "multiset needs --arity");
      partition = theory::BlockPartition::single(options.arity);
    } else if (what == "bimultiset") {
      if (options.half == 0) throw Error(ErrorKind::kInvalidArgument, "bimultiset needs --half");
      const std::size_t sizes[] = {options.half + 1, options.half};
      partition = theory::BlockPartition::from_sizes(sizes);
    } else {
      partition = partition_or(options, "blocks");
    }
    emit(options, out, io::print_structure(theory::block_multiset_structure(base, *partition)));
    return kExitYes;
  }
  if (what == "lift") {
    measure_count(1);
    const PromiseTemplate promise(require_loaded(delta, "--structure"), *gamma);
    require_labels(measures[0].input_domain, promise.delta.domain(), "measure input");
    require_labels(measures[0].output_domain, promise.gamma.domain(), "measure output");
    const theory::BlockPartition partition = partition_or(options, "lift");
    const auto chi =
        theory::lift_fpol_to_frachom(measures[0].as_polymorphism(), partition, promise);
    const theory::BlockMultisetDomain domain(promise.delta.domain_size(), partition);
    emit(options, out,
         io::print_measure(io::homomorphism_file(chi, domain.labels(promise.delta.domain()),
                                                 promise.gamma.domain())));
    return kExitYes;
  }
  if (what == "from-frachom") {
    measure_count(1);
    const ValuedStructure& base = require_loaded(delta, "--structure");
    const theory::BlockPartition partition = partition_or(options, "from-frachom");
    const theory::BlockMultisetDomain domain(base.domain_size(), partition);
    require_labels(measures[0].input_domain, domain.labels(base.domain()), "measure input");
    const auto omega = theory::fpol_from_frachom(measures[0].as_homomorphism(), partition,
                                                 base.domain_size());
    emit(options, out,
         io::print_measure(
             io::polymorphism_file(omega, base.domain(), measures[0].output_domain)));
    return kExitYes;
  }
  if (what == "compose") {
    measure_count(2);
    if (measures[0].output_domain != measures[1].input_domain) {
      throw Error(ErrorKind::kDomainMismatch,
                  "first measure's output labels differ from the second's input labels");
    }
    const auto omega = theory::compose_sampling_fpol(measures[0].as_homomorphism(),
                                                     measures[1].as_polymorphism());
    emit(options, out,
         io::print_measure(io::polymorphism_file(omega, measures[0].input_domain,
                                                 measures[1].output_domain)));
    return kExitYes;
  }
  if (what == "symmetrize") {
    measure_count(1);
    const auto omega = theory::symmetrize_input_weights(measures[0].as_polymorphism(),
                                                        partition_or(options, "symmetrize"));
    emit(options, out,
         io::print_measure(io::polymorphism_file(omega, measures[0].input_domain,
                                                 measures[0].output_domain)));
    return kExitYes;
  }
  if (what == "find-frachom") {
    const ValuedStructure& source = require_loaded(delta, "--structure");
    const auto chi = theory::find_frachom_lp(source, *gamma);
    if (!chi) {
      out << "none\n";
      return kExitNo;
    }
    emit(options, out,
         io::print_measure(io::homomorphism_file(*chi, source.domain(), gamma->domain())));
    return kExitYes;
  }
  if (what == "find-fpol") {
    if (options.arity == 0) throw Error(ErrorKind::kInvalidArgument, "find-fpol needs --arity");
    const PromiseTemplate promise(require_loaded(delta, "--structure"), *gamma);
    std::optional<theory::BlockPartition> partition;
    if (!options.partition.empty()) partition = parse_partition(options.partition);
    const auto omega = theory::find_promise_fpol_lp(promise, options.arity, partition);
    if (!omega) {
      out << "none\n";
      return kExitNo;
    }
    emit(options, out,
         io::print_measure(
             io::polymorphism_file(*omega, promise.delta.domain(), promise.gamma.domain())));
    return kExitYes;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown construction '" + what + "'");
}

gen::GeneratorConfig generator_config(const Options& options) {
  gen::GeneratorConfig config;
  config.family = gen::parse_family(options.family);
  config.seed = options.seed;
  config.count = options.count;
  config.max_variables = options.variables;
  config.max_terms = options.terms;
  config.domain_size = options.domain_size;
  config.max_arity = options.max_arity;
  if (!options.cost_weights.empty()) {
    const auto parts = split(options.cost_weights, ',');
    if (parts.size() != config.cost_weights.size()) {
      throw Error(ErrorKind::kInvalidArgument, "--cost-weights needs 5 comma-separated values");
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      config.cost_weights[i] = static_cast<unsigned>(parse_index(parts[i], "--cost-weights"));
    }
  }
  config.validate();
  return config;
}

int cmd_compare(const Options& options, std::ostream& out) {
  const gen::GeneratorConfig config = generator_config(options);
  std::vector<compare::Engine> engines;
  for (const auto& name : split(options.engines, ',')) engines.push_back(compare::parse_engine(name));
  const compare::ComparisonReport report = compare::run_comparison(config, engines);
  emit(options, out, options.json ? compare::format_json(report) : compare::format_text(report));
  std::size_t errors = 0;
  for (const auto& summary : report.summaries) errors += summary.errors;
  if (errors > 0) return kExitNo;
  if (report.flagged() > 0 && !options.expect_weak) return kExitNo;
  return kExitYes;
}

int cmd_gen(const Options& options, std::ostream& out) {
  if (options.out.empty()) throw Error(ErrorKind::kInvalidArgument, "gen needs --out <directory>");
  const gen::GeneratorConfig config = generator_config(options);
  std::filesystem::create_directories(options.out);
  const auto batch = gen::generate_batch(config);
  for (const auto& generated : batch) {
    std::ostringstream stem;
    stem << "case" << std::setw(4) << std::setfill('0') << generated.index;
    const std::filesystem::path base = std::filesystem::path(options.out) / stem.str();
    io::write_file(base.string() + ".delta", io::print_structure(generated.promise.delta));
    io::write_file(base.string() + ".gamma", io::print_structure(generated.promise.gamma));
    io::write_file(base.string() + ".instance", io::print_instance(generated.instance));
  }
  out << "wrote " << batch.size() << " cases to " << options.out << '\n';
  return kExitYes;
}

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::kInternalInvariant ? kExitInternal : kExitInputError;
}

}  // namespace

theory::BlockPartition parse_partition(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument,
                "partition must look like 'sizes:2,1' or 'blocks:0,2|1'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (kind == "sizes") {
    std::vector<std::size_t> sizes;
    for (const auto& part : split(body, ',')) sizes.push_back(parse_index(part, "partition"));
    return theory::BlockPartition::from_sizes(sizes);
  }
  if (kind == "blocks") {
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& block : split(body, '|')) {
      std::vector<std::size_t> indices;
      for (const auto& part : split(block, ',')) indices.push_back(parse_index(part, "partition"));
      blocks.push_back(std::move(indices));
    }
    return theory::BlockPartition(std::move(blocks));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown partition kind '" + kind + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options options;
  CLI::App app{"Promise valued CSP solver and toolkit"};
  app.require_subcommand(1);
  app.add_option("--cap", options.cap, "Work cap for exhaustive enumerations");

  auto* solve = app.add_subcommand("solve", "Decide an instance");
  solve->add_option("--structure", options.structure, "Delta structure file")->required();
  solve->add_option("--gamma", options.gamma, "Gamma structure file (oracle)");
  solve->add_option("--instance", options.instance, "Instance file")->required();
  solve->add_option("--algorithm", options.algorithm, "combined | blp | aip | oracle")
      ->check(CLI::IsMember({"combined", "blp", "aip", "oracle"}));
  solve->add_flag("--json", options.json, "Structured output");

  auto* check = app.add_subcommand("check", "Check a measure against structures");
  check->add_option("--structure", options.structure, "Delta structure file")->required();
  check->add_option("--gamma", options.gamma, "Gamma structure file (default: delta)");
  check->add_option("--measure", options.measures, "Measure file")->required();
  check->add_flag("--json", options.json, "Structured output");

  std::string construction;
  auto* construct = app.add_subcommand("construct", "Build structures and measures");
  construct
      ->add_option("what", construction,
                   "multiset | bimultiset | blocks | lift | from-frachom | compose | "
                   "symmetrize | find-frachom | find-fpol")
      ->required();
  construct->add_option("--structure", options.structure, "Delta structure file");
  construct->add_option("--gamma", options.gamma, "Gamma structure file (default: delta)");
  construct->add_option("--measure", options.measures, "Measure file (repeatable)");
  construct->add_option("--partition", options.partition, "sizes:a,b or blocks:0,2|1");
  construct->add_option("--arity", options.arity, "Arity m");
  construct->add_option("--half", options.half, "L for the bimultiset structure of arity 2L+1");
  construct->add_option("--out", options.out, "Output file (default: stdout)");

  const auto add_generator = [&](CLI::App* sub) {
    sub->add_option("--family", options.family, "xor | horn | submodular | random");
    sub->add_option("--seed", options.seed, "Seed");
    sub->add_option("--count", options.count, "Number of cases");
    sub->add_option("--variables", options.variables, "Maximum variables per instance");
    sub->add_option("--terms", options.terms, "Maximum terms per instance");
    sub->add_option("--domain-size", options.domain_size, "Random family domain size");
    sub->add_option("--max-arity", options.max_arity, "Random family maximum arity");
    sub->add_option("--cost-weights", options.cost_weights,
                    "Weights of the costs 0,1,1/2,2,inf");
  };
  auto* compare_cmd = app.add_subcommand("compare", "Differential test against the oracle");
  add_generator(compare_cmd);
  compare_cmd->add_option("--engines", options.engines, "Comma list of combined, blp, aip");
  compare_cmd->add_flag("--expect-weak", options.expect_weak,
                        "Disagreements are recorded but do not fail the run");
  compare_cmd->add_flag("--json", options.json, "Structured output");
  compare_cmd->add_option("--out", options.out, "Report file (default: stdout)");

  auto* gen_cmd = app.add_subcommand("gen", "Write generated cases to a directory");
  add_generator(gen_cmd);
  gen_cmd->add_option("--out", options.out, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kExitYes : kExitInputError;
  }

  try {
    std::optional<ScopedCap> cap;
    if (options.cap != 0) cap.emplace(options.cap);
    if (solve->parsed()) return cmd_solve(options, out);
    if (check->parsed()) return cmd_check(options, out);
    if (construct->parsed()) return cmd_construct(construction, options, out);
    if (compare_cmd->parsed()) return cmd_compare(options, out);
    if (gen_cmd->parsed()) return cmd_gen(options, out);
  } catch (const Error& error) {
    err << "error: " << error.what() << '\n';
    return exit_code_for(error.kind());
  } catch (const std::filesystem::filesystem_error& error) {
    err << "error: " << error.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace pvcsp::cli
