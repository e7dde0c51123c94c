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

#include "ctxprob/model.hpp"

#include <algorithm>

#include "ctxprob/errors.hpp"

namespace ctxprob {

bool MeasurementProcedure::measures_all(const std::set<PropertyId> &props) const {
    return std::all_of(props.begin(), props.end(), [&](PropertyId e) {
        return std::binary_search(measures.begin(), measures.end(), e);
    });
}

bool MeasurementProcedure::has_context(ContextId c) const {
    return std::find(contexts.begin(), contexts.end(), c) != contexts.end();
}

MeasurementCatalog::MeasurementCatalog(const Entity &entity, std::vector<MeasurementProcedure> procedures)
    : procedures_(std::move(procedures)), by_property_(entity.property_count()) {
    std::sort(procedures_.begin(), procedures_.end(),
              [](const auto &a, const auto &b) { return a.id < b.id; });
    for (std::size_t i = 0; i < procedures_.size(); ++i) {
        auto &m = procedures_[i];
        if (m.id.empty()) {
            throw ModelError("measurement procedure with empty id");
        }
        if (i > 0 && procedures_[i - 1].id == m.id) {
            throw ModelError("measurement procedure '" + m.id + "' declared twice");
        }
        std::sort(m.measures.begin(), m.measures.end());
        m.measures.erase(std::unique(m.measures.begin(), m.measures.end()), m.measures.end());
        if (m.measures.empty()) {
            throw ModelError("procedure '" + m.id + "' measures no property");
        }
        for (PropertyId e : m.measures) {
            if (e.value >= entity.property_count()) {
                throw ModelError("procedure '" + m.id + "' measures an undeclared property");
            }
            by_property_[e.value].push_back(i);
        }
        if (m.contexts.empty()) {
            throw ModelError("procedure '" + m.id + "' has no micro-contexts");
        }
        if (m.contexts.size() != m.context_weights.size()) {
            throw ModelError("procedure '" + m.id + "' needs one weight per micro-context");
        }
        std::set<ContextId> seen;
        Number total = Number::integer(0);
        for (std::size_t k = 0; k < m.contexts.size(); ++k) {
            if (m.contexts[k].value >= entity.context_count()) {
                throw ModelError("procedure '" + m.id + "' uses an undeclared context");
            }
            if (!seen.insert(m.contexts[k]).second) {
                throw ModelError("procedure '" + m.id + "' lists context '" + entity.name(m.contexts[k]) + "' twice");
            }
            if (m.context_weights[k] < Number::integer(0)) {
                throw ModelError("procedure '" + m.id + "' has a negative context weight");
            }
            total += m.context_weights[k];
        }
        if (!approx_equal(total, Number::integer(1), kMassTolerance)) {
            throw ModelError("context weights of procedure '" + m.id + "' sum to " + total.str() + ", not 1");
        }
    }
    for (std::uint32_t e = 0; e < by_property_.size(); ++e) {
        if (by_property_[e].empty()) {
            throw ModelError("property '" + entity.name(PropertyId{e}) + "' has no measurement procedure");
        }
    }
}

const MeasurementProcedure *MeasurementCatalog::find(std::string_view id) const {
    auto it = std::lower_bound(procedures_.begin(), procedures_.end(), id,
                               [](const MeasurementProcedure &m, std::string_view key) { return m.id < key; });
    if (it == procedures_.end() || it->id != id) {
        return nullptr;
    }
    return &*it;
}

const std::vector<std::size_t> &MeasurementCatalog::by_property(PropertyId e) const {
    return by_property_.at(e.value);
}

std::vector<std::size_t> MeasurementCatalog::common(const std::set<PropertyId> &props) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < procedures_.size(); ++i) {
        if (procedures_[i].measures_all(props)) {
            out.push_back(i);
        }
    }
    return out;
}

ContextualModel::ContextualModel(std::shared_ptr<const Entity> entity, ProbabilitySpace space,
                                 MeasurementCatalog catalog, std::optional<OrthoLattice> lattice,
                                 std::vector<FirstKindTransform> first_kind, double comparison_tolerance)
    : entity_(std::move(entity)),
      space_(std::move(space)),
      catalog_(std::move(catalog)),
      lattice_(std::move(lattice)),
      first_kind_(std::move(first_kind)),
      tolerance_(comparison_tolerance) {
    if (!entity_) {
        throw ModelError("model needs an entity");
    }
    for (const auto &w : space_.universe()) {
        if (w.bits().size() != entity_->atom_count()) {
            throw ModelError("truth assignment does not match the entity's atoms");
        }
    }
    for (std::uint32_t s = 0; s < entity_->state_count(); ++s) {
        if (!(probability(space_, Proposition::state(StateId{s})) > Number::integer(0))) {
            throw ModelError("state '" + entity_->name(StateId{s}) + "' has zero probability");
        }
    }
    if (lattice_) {
        try {
            lattice_->validate_shape();
        } catch (const std::invalid_argument &e) {
            throw ModelError(std::string("lattice: ") + e.what());
        }
        if (lattice_->size() != entity_->property_count()) {
            throw ModelError("lattice must have exactly one element per property");
        }
        for (std::uint32_t e = 0; e < entity_->property_count(); ++e) {
            if (lattice_->elements[e] != entity_->name(PropertyId{e})) {
                throw ModelError("lattice element " + std::to_string(e) + " must be property '" +
                                 entity_->name(PropertyId{e}) + "'");
            }
        }
    }
    std::set<PropertyId> seen;
    for (const auto &t : first_kind_) {
        if (t.property.value >= entity_->property_count()) {
            throw ModelError("first-kind transform for an undeclared property");
        }
        if (!seen.insert(t.property).second) {
            throw ModelError("two first-kind transforms for property '" + entity_->name(t.property) + "'");
        }
        for (const auto &[from, to] : t.map) {
            if (from.value >= entity_->state_count() || to.value >= entity_->state_count()) {
                throw ModelError("first-kind transform refers to an undeclared state");
            }
        }
    }
}

const FirstKindTransform *ContextualModel::first_kind_for(PropertyId f) const {
    for (const auto &t : first_kind_) {
        if (t.property == f) {
            return &t;
        }
    }
    return nullptr;
}

}  // namespace ctxprob
