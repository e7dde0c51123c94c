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
#include <stdexcept>
#include <string>

namespace ctxprob {

/// Conditioning on a proposition whose extension has zero weight.
struct ConditionNull : std::domain_error {
    explicit ConditionNull(const std::string &what, std::optional<std::string> context = std::nullopt)
        : std::domain_error(what), context(std::move(context)) {
    }
    /// Name of the micro-context at which the condition vanished, if any.
    std::optional<std::string> context;
};

/// The pair (A, B) fits none of the four mean-conditional cases for the
/// requested measurement procedure.
struct CaseMismatch : std::domain_error {
    using std::domain_error::domain_error;
};

/// No first-kind transform is registered for the conditioning property.
struct NoFirstKind : std::domain_error {
    using std::domain_error::domain_error;
};

/// The state gives the conditioning property probability zero.
struct StateExcluded : std::domain_error {
    using std::domain_error::domain_error;
};

/// A quantum outcome with (numerically) zero probability.
struct NullOutcome : std::domain_error {
    using std::domain_error::domain_error;
};

/// A model violating a structural invariant (referential integrity, weights,
/// catalog coverage). `location` is a JSON pointer when loading from a file.
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string &what, std::string location = {})
        : std::runtime_error(location.empty() ? what : location + ": " + what), location(std::move(location)) {
    }
    std::string location;
};

}  // namespace ctxprob
