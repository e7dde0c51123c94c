// Copyright 2026 The ctxprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ctxprob/model_io.hpp"
#include "ctxprob/report.hpp"

namespace ctxprob {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

/// Every applicable verification suite for a loaded model.
Report check_model(const LoadedModel &loaded, std::size_t depth);

/// Lattice checks, per-state generalized-measure checks and the property
/// preorder of a loaded model.
Report lattice_report(const LoadedModel &loaded);

/// Runs the command line (without the program name). Returns the exit code:
/// 0 pass, 1 check failure, 2 usage, IO or schema error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ctxprob
