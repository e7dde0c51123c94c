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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ctxprob/model.hpp"
#include "ctxprob/quantum.hpp"

namespace ctxprob {

enum class Backend { Generic, Classical, Quantum, Band };

const char *to_string(Backend b);

/// The contents of a model file. `model` is absent for files that only
/// describe a Hilbert-space model.
struct LoadedModel {
    Backend backend = Backend::Generic;
    std::optional<ContextualModel> model;
    std::optional<HilbertModel> hilbert;
    std::vector<double> band_thetas;
    std::size_t band_segments = 0;
};

/// Reads a format-1 model document. Every error is a ModelError whose
/// location is a JSON pointer into the document.
///
/// Top-level keys:
///   format       1
///   entity       {properties, states, contexts}: arrays of identifiers
///   universe     [{true: [atom, ...], weight: w}], atoms as `state(S)` or `prop(E,c)`
///   procedures   [{id, measures: [E, ...], contexts: {c: w, ...}}]
///   lattice      {elements, order: [[a, b], ...], meet, join, ortho, bottom, top}
///   first_kind   [{property: F, map: {S: T, ...}}]
///   tolerance    comparison tolerance for derived probabilities
///   backend      {kind: "classical", possession: {S: [E, ...]}, weights: {S: w}}
///                {kind: "quantum", dimension, states: [...], properties: [...]}
///                {kind: "band", segments, states: [{id, theta}]}
/// A weight w is a number or an exact [numerator, denominator] pair. Quantum
/// operators are given as `matrix` (rows of entries) or `ket`, each entry a
/// real number or [re, im]. Angles accept forms such as "pi/3" and "2*pi/3".
LoadedModel load_model(const nlohmann::json &doc);
/// Parses and loads; a JSON syntax error is reported at "byte N".
LoadedModel load_model_text(std::string_view text);
LoadedModel load_model_file(const std::string &path);

}  // namespace ctxprob
