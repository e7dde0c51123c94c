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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctxprob/language.hpp"
#include "ctxprob/muprob.hpp"
#include "ctxprob/numeric.hpp"
#include "ctxprob/ortholattice.hpp"

namespace ctxprob {

/// A measurement procedure M: the properties it measures, its macroscopic
/// context C_M (a set of micro-contexts) and the weight of each micro-context.
struct MeasurementProcedure {
    std::string id;
    std::vector<PropertyId> measures;
    std::vector<ContextId> contexts;
    std::vector<Number> context_weights;  // parallel to contexts

    bool measures_all(const std::set<PropertyId> &props) const;
    bool has_context(ContextId c) const;
};

/// The procedures of a theory, indexed by id and by measured property.
/// Every property has at least one procedure; procedure context weights sum
/// to one.
class MeasurementCatalog {
   public:
    MeasurementCatalog(const Entity &entity, std::vector<MeasurementProcedure> procedures);

    /// Sorted by id.
    std::span<const MeasurementProcedure> procedures() const {
        return procedures_;
    }
    const MeasurementProcedure *find(std::string_view id) const;
    /// Procedures measuring e, as indices into procedures().
    const std::vector<std::size_t> &by_property(PropertyId e) const;
    /// Procedures measuring every property in props (all procedures if empty).
    std::vector<std::size_t> common(const std::set<PropertyId> &props) const;

   private:
    std::vector<MeasurementProcedure> procedures_;
    std::vector<std::vector<std::size_t>> by_property_;
};

/// State transform t_F of a first-kind procedure for property F, defined on
/// the states that give F non-zero probability.
struct FirstKindTransform {
    PropertyId property;
    std::map<StateId, StateId> map;
};

/// A finite theory: entity, weighted universe, measurement catalog, and
/// optionally a declared property lattice and first-kind transforms.
/// Construction checks referential integrity and that every state atom has
/// positive probability.
class ContextualModel {
   public:
    ContextualModel(std::shared_ptr<const Entity> entity, ProbabilitySpace space, MeasurementCatalog catalog,
                    std::optional<OrthoLattice> lattice = std::nullopt,
                    std::vector<FirstKindTransform> first_kind = {},
                    double comparison_tolerance = kCompareTolerance);

    const Entity &entity() const {
        return *entity_;
    }
    const std::shared_ptr<const Entity> &entity_ptr() const {
        return entity_;
    }
    const ProbabilitySpace &space() const {
        return space_;
    }
    const MeasurementCatalog &catalog() const {
        return catalog_;
    }
    /// Lattice over the properties: element i is property i.
    const std::optional<OrthoLattice> &lattice() const {
        return lattice_;
    }
    std::span<const FirstKindTransform> first_kind() const {
        return first_kind_;
    }
    const FirstKindTransform *first_kind_for(PropertyId f) const;
    /// Tolerance for comparing derived probabilities (ε_cmp for exact
    /// backends, a statistical tolerance for discretized ones).
    double comparison_tolerance() const {
        return tolerance_;
    }

   private:
    std::shared_ptr<const Entity> entity_;
    ProbabilitySpace space_;
    MeasurementCatalog catalog_;
    std::optional<OrthoLattice> lattice_;
    std::vector<FirstKindTransform> first_kind_;
    double tolerance_;
};

}  // namespace ctxprob
