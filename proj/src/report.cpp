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

#include "ctxprob/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctxprob {

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed(); });
}

const CheckResult &Report::at(const std::string &name) const {
    for (const auto &c : checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::out_of_range("no check named '" + name + "' in report '" + suite + "'");
}

CheckResult &Report::add(CheckResult check) {
    checks.push_back(std::move(check));
    return checks.back();
}

void Report::append(const Report &other) {
    for (const auto &c : other.checks) {
        CheckResult copy = c;
        copy.name = other.suite + "." + c.name;
        checks.push_back(std::move(copy));
    }
}

const char *to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "pass";
        case Verdict::Fail:
            return "fail";
        case Verdict::Skipped:
            return "skipped";
    }
    return "?";
}

nlohmann::json to_json(const CheckResult &check) {
    nlohmann::json j;
    j["name"] = check.name;
    j["verdict"] = to_string(check.verdict);
    j["required"] = check.required;
    if (!check.detail.empty()) {
        j["detail"] = check.detail;
    }
    if (!check.witnesses.empty()) {
        j["witnesses"] = check.witnesses;
    }
    if (check.gap) {
        j["gap"] = *check.gap;
    }
    if (check.tolerance) {
        j["tolerance"] = *check.tolerance;
    }
    return j;
}

nlohmann::json to_json(const Report &report) {
    nlohmann::json j;
    j["suite"] = report.suite;
    j["passed"] = report.passed();
    j["checks"] = nlohmann::json::array();
    for (const auto &c : report.checks) {
        j["checks"].push_back(to_json(c));
    }
    return j;
}

void write_text(std::ostream &out, const Report &report) {
    out << "== " << report.suite << ": " << (report.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto &c : report.checks) {
        std::string tag = c.verdict == Verdict::Pass ? "ok  " : c.verdict == Verdict::Skipped ? "skip" : "FAIL";
        if (c.verdict == Verdict::Fail && !c.required) {
            tag = "no  ";
        }
        out << "  [" << tag << "] " << c.name;
        if (!c.detail.empty()) {
            out << ": " << c.detail;
        }
        if (c.gap) {
            out << " (gap " << *c.gap;
            if (c.tolerance) {
                out << ", tolerance " << *c.tolerance;
            }
            out << ")";
        }
        out << "\n";
        for (const auto &w : c.witnesses) {
            out << "         " << w << "\n";
        }
    }
}

}  // namespace ctxprob
