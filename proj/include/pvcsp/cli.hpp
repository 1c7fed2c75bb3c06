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

#include <iosfwd>
#include <string>
#include <vector>

#include "pvcsp/theory.hpp"

namespace pvcsp::cli {

// Exit statuses of the command-line tool.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternal = 3;

// "sizes:2,1" for contiguous blocks or "blocks:0,2|1" for explicit index
// sets. Throws Error(kInvalidArgument) on malformed text.
theory::BlockPartition parse_partition(const std::string& text);

// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvcsp::cli
