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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace ctxprob {

enum class Verdict { Pass, Fail, Skipped };

/// One verified clause. Checks with required == false are informational
/// (e.g. distributivity of a lattice) and never fail the enclosing report.
struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::string detail;
    std::vector<std::string> witnesses;
    std::optional<double> gap;
    std::optional<double> tolerance;
    bool required = true;

    bool passed() const {
        return verdict != Verdict::Fail || !required;
    }
};

struct Report {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    /// Returns the check with that name; throws std::out_of_range otherwise.
    const CheckResult &at(const std::string &name) const;
    CheckResult &add(CheckResult check);
    void append(const Report &other);
};

const char *to_string(Verdict v);

nlohmann::json to_json(const CheckResult &check);
nlohmann::json to_json(const Report &report);
void write_text(std::ostream &out, const Report &report);

}  // namespace ctxprob
