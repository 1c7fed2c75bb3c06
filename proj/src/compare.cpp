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

#include "pvcsp/compare.hpp"

#include <omp.h>

#include <sstream>

#include <json.hpp>

#include "pvcsp/error.hpp"

namespace pvcsp::compare {
namespace {

relax::SolveAnswer run_engine(Engine engine, const ValuedStructure& delta,
                              const Instance& instance) {
  switch (engine) {
    case Engine::kCombined:
      return relax::combined_solve(delta, instance);
    case Engine::kBlp:
      return relax::blp_only_solve(delta, instance);
    case Engine::kAip:
      return relax::aip_only_solve(delta, instance);
  }
  throw Error(ErrorKind::kInternalInvariant, "unhandled engine");
}

ComparisonReport summarize(const gen::GeneratorConfig& config, const std::vector<Engine>& engines,
                           std::vector<CaseRecord> records) {
  ComparisonReport report;
  report.config = config;
  report.engines = engines;
  for (Engine engine : engines) report.summaries.push_back({engine});
  for (const auto& record : records) {
    switch (record.oracle) {
      case OracleClass::kYes:
        ++report.oracle_yes;
        break;
      case OracleClass::kNo:
        ++report.oracle_no;
        break;
      case OracleClass::kGap:
        ++report.oracle_gap;
        break;
    }
    if (!record.transfer_holds) ++report.transfer_violations;
    for (std::size_t e = 0; e < engines.size(); ++e) {
      const EngineOutcome& outcome = record.outcomes[e];
      EngineSummary& summary = report.summaries[e];
      if (!outcome.verdict) {
        ++summary.errors;
        continue;
      }
      ++(*outcome.verdict == relax::Verdict::kYes ? summary.yes : summary.no);
      ++(outcome.agrees ? summary.agree : summary.disagree);
    }
  }
  report.records = std::move(records);
  return report;
}

ComparisonReport run(const gen::GeneratorConfig& config, const std::vector<Engine>& engines,
                     bool parallel) {
  config.validate();
  if (engines.empty()) throw Error(ErrorKind::kInvalidArgument, "no engines selected");
  std::vector<CaseRecord> records(config.count);
  const auto count = static_cast<std::int64_t>(config.count);
  // Worker exceptions are rethrown after the loop, lowest index first.
  std::vector<std::string> failures(config.count);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto index = static_cast<std::size_t>(i);
    try {
      records[index] = run_case(gen::generate_case(config, index), engines);
    } catch (const std::exception& error) {
      failures[index] = error.what();
    }
  }
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i].empty()) {
      throw Error(ErrorKind::kInternalInvariant,
                  "case " + std::to_string(i) + " failed outside the engines: " + failures[i]);
    }
  }
  return summarize(config, engines, std::move(records));
}

}  // namespace

const char* to_string(Engine engine) {
  switch (engine) {
    case Engine::kCombined:
      return "combined";
    case Engine::kBlp:
      return "blp";
    case Engine::kAip:
      return "aip";
  }
  return "combined";
}

Engine parse_engine(std::string_view name) {
  for (Engine engine : {Engine::kCombined, Engine::kBlp, Engine::kAip}) {
    if (name == to_string(engine)) return engine;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown engine '" + std::string(name) + "' (combined, blp, aip)");
}

std::size_t ComparisonReport::flagged() const {
  std::size_t total = 0;
  for (const auto& summary : summaries) total += summary.disagree + summary.errors;
  return total;
}

bool verdict_agrees(OracleClass oracle, relax::Verdict verdict) {
  switch (oracle) {
    case OracleClass::kYes:
      return verdict == relax::Verdict::kYes;
    case OracleClass::kNo:
      return verdict == relax::Verdict::kNo;
    case OracleClass::kGap:
      return true;
  }
  return false;
}

CaseRecord run_case(const gen::GeneratedCase& generated, const std::vector<Engine>& engines) {
  const PromiseTemplate& promise = generated.promise;
  const Instance& instance = generated.instance;
  CaseRecord record;
  record.index = generated.index;
  record.threshold = instance.threshold();
  record.delta_min = pvcsp::serial::brute_force_minimize(promise.delta, instance).value;
  record.gamma_min = pvcsp::serial::brute_force_minimize(promise.gamma, instance).value;
  record.transfer_holds = record.gamma_min <= record.delta_min;
  const ExtendedRational u(instance.threshold());
  if (record.delta_min <= u) {
    record.oracle = OracleClass::kYes;
  } else if (record.gamma_min > u) {
    record.oracle = OracleClass::kNo;
  } else {
    record.oracle = OracleClass::kGap;
  }
  for (Engine engine : engines) {
    EngineOutcome outcome{engine, std::nullopt, {}, false};
    try {
      outcome.verdict = run_engine(engine, promise.delta, instance).verdict;
      outcome.agrees = verdict_agrees(record.oracle, *outcome.verdict);
    } catch (const Error& error) {
      outcome.error = error.what();
    }
    record.outcomes.push_back(std::move(outcome));
  }
  return record;
}

ComparisonReport run_comparison(const gen::GeneratorConfig& config,
                                const std::vector<Engine>& engines) {
  return run(config, engines, true);
}

namespace serial {
ComparisonReport run_comparison(const gen::GeneratorConfig& config,
                                const std::vector<Engine>& engines) {
  return run(config, engines, false);
}
}  // namespace serial

std::string format_text(const ComparisonReport& report) {
  std::ostringstream out;
  out << "compare family=" << gen::to_string(report.config.family)
      << " seed=" << report.config.seed << " count=" << report.config.count << " engines=";
  for (std::size_t e = 0; e < report.engines.size(); ++e) {
    out << (e > 0 ? "," : "") << to_string(report.engines[e]);
  }
  out << '\n';
  for (const auto& record : report.records) {
    out << "case " << record.index << " u=" << pvcsp::to_string(record.threshold)
        << " delta_min=" << pvcsp::to_string(record.delta_min)
        << " gamma_min=" << pvcsp::to_string(record.gamma_min)
        << " oracle=" << pvcsp::to_string(record.oracle);
    for (const auto& outcome : record.outcomes) {
      out << ' ' << to_string(outcome.engine) << '=';
      if (!outcome.verdict) {
        out << "ERROR";
      } else {
        out << relax::to_string(*outcome.verdict) << (outcome.agrees ? "" : "!");
      }
    }
    out << '\n';
    for (const auto& outcome : record.outcomes) {
      if (!outcome.verdict) {
        out << "  " << to_string(outcome.engine) << " error: " << outcome.error << '\n';
      }
    }
  }
  out << "oracle yes=" << report.oracle_yes << " no=" << report.oracle_no
      << " gap=" << report.oracle_gap << '\n';
  for (const auto& summary : report.summaries) {
    out << "engine " << to_string(summary.engine) << " yes=" << summary.yes
        << " no=" << summary.no << " agree=" << summary.agree
        << " disagree=" << summary.disagree << " errors=" << summary.errors << '\n';
  }
  out << "transfer-violations " << report.transfer_violations << '\n';
  out << "flagged " << report.flagged() << '\n';
  return out.str();
}

std::string format_json(const ComparisonReport& report) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["family"] = gen::to_string(report.config.family);
  root["seed"] = report.config.seed;
  root["count"] = report.config.count;
  ordered_json engines = ordered_json::array();
  for (Engine engine : report.engines) engines.push_back(to_string(engine));
  root["engines"] = engines;
  ordered_json cases = ordered_json::array();
  for (const auto& record : report.records) {
    ordered_json item;
    item["index"] = record.index;
    item["threshold"] = pvcsp::to_string(record.threshold);
    item["delta_min"] = pvcsp::to_string(record.delta_min);
    item["gamma_min"] = pvcsp::to_string(record.gamma_min);
    item["oracle"] = pvcsp::to_string(record.oracle);
    ordered_json outcomes = ordered_json::object();
    for (const auto& outcome : record.outcomes) {
      ordered_json entry;
      entry["verdict"] = outcome.verdict ? relax::to_string(*outcome.verdict) : "ERROR";
      entry["agrees"] = outcome.agrees;
      if (!outcome.verdict) entry["error"] = outcome.error;
      outcomes[to_string(outcome.engine)] = entry;
    }
    item["engines"] = outcomes;
    cases.push_back(item);
  }
  root["cases"] = cases;
  ordered_json summaries = ordered_json::object();
  for (const auto& summary : report.summaries) {
    summaries[to_string(summary.engine)] = {{"yes", summary.yes},
                                            {"no", summary.no},
                                            {"agree", summary.agree},
                                            {"disagree", summary.disagree},
                                            {"errors", summary.errors}};
  }
  root["summary"] = {{"oracle_yes", report.oracle_yes},
                     {"oracle_no", report.oracle_no},
                     {"oracle_gap", report.oracle_gap},
                     {"engines", summaries},
                     {"transfer_violations", report.transfer_violations},
                     {"flagged", report.flagged()}};
  return root.dump(2) + "\n";
}

}  // namespace pvcsp::compare
