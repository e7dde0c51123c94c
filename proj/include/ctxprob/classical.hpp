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

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ctxprob/model.hpp"
#include "ctxprob/ortholattice.hpp"
#include "ctxprob/report.hpp"

namespace ctxprob {

/// The properties possessed in each state, indexed by StateId.
struct PossessionMap {
    std::vector<std::set<PropertyId>> possessed;
};

/// A classical model: one truth assignment per state, property atoms true at
/// every micro-context iff the state possesses the property, one procedure
/// `M_all` measuring everything over the first micro-context, and identity
/// first-kind transforms. A property lattice is attached when the property
/// extensions are distinct and closed under the set operations.
///
/// Throws std::invalid_argument on shape errors, a non-positive weight,
/// weights not summing to one, or two states with the same possession set.
ContextualModel build_cm_model(std::shared_ptr<const Entity> entity, const PossessionMap &possession,
                               std::vector<Number> state_weights);

/// The lattice of property extensions ordered by inclusion, when those
/// extensions are pairwise distinct and form a Boolean algebra of subsets of
/// the states.
std::optional<OrthoLattice> cm_property_lattice(const Entity &entity, const PossessionMap &possession);

/// Checks that the general notions reduce to classical ones on the model:
/// context-invariant atoms, one assignment per state, sharp q-probabilities,
/// the property order equal to extension inclusion, a classical measure on
/// a Boolean quotient (skipped otherwise), and P_S(E ‖ F) = P_S(E) = P_S(E | F)
/// wherever P_S(F) != 0.
Report verify_cm_collapse(const ContextualModel &model);

}  // namespace ctxprob
