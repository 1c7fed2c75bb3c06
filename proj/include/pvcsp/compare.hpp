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
#include <vector>

#include "pvcsp/generate.hpp"
#include "pvcsp/oracle.hpp"
#include "pvcsp/relax.hpp"

namespace pvcsp::compare {

enum class Engine { kCombined, kBlp, kAip };

const char* to_string(Engine engine);
// Throws Error(kInvalidArgument) on an unknown name.
Engine parse_engine(std::string_view name);

struct EngineOutcome {
  Engine engine;
  std::optional<relax::Verdict> verdict;  // empty when the engine threw
  std::string error;
  bool agrees = false;
};

struct CaseRecord {
  std::size_t index = 0;
  Rational threshold;
  ExtendedRational delta_min;
  ExtendedRational gamma_min;
  OracleClass oracle = OracleClass::kGap;
  std::vector<EngineOutcome> outcomes;
  bool transfer_holds = true;  // gamma_min <= delta_min
};

struct EngineSummary {
  Engine engine;
  std::size_t yes = 0;
  std::size_t no = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t errors = 0;
};

struct ComparisonReport {
  gen::GeneratorConfig config;
  std::vector<Engine> engines;
  std::vector<CaseRecord> records;
  std::vector<EngineSummary> summaries;
  std::size_t oracle_yes = 0;
  std::size_t oracle_no = 0;
  std::size_t oracle_gap = 0;
  std::size_t transfer_violations = 0;

  std::size_t flagged() const;  // disagreements plus engine errors
};

// A verdict disagrees only when the oracle class is YES or NO.
bool verdict_agrees(OracleClass oracle, relax::Verdict verdict);

CaseRecord run_case(const gen::GeneratedCase& generated, const std::vector<Engine>& engines);

// Cases run concurrently; records stay in index order.
ComparisonReport run_comparison(const gen::GeneratorConfig& config,
                                const std::vector<Engine>& engines);

namespace serial {
ComparisonReport run_comparison(const gen::GeneratorConfig& config,
                                const std::vector<Engine>& engines);
}  // namespace serial

std::string format_text(const ComparisonReport& report);
std::string format_json(const ComparisonReport& report);

}  // namespace pvcsp::compare
