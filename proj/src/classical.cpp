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

#include "ctxprob/classical.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ctxprob/lattice.hpp"
#include "ctxprob/measurement.hpp"

namespace ctxprob {

namespace {

using StateSet = boost::dynamic_bitset<>;

// Subsets of the states, distinct, closed under complement, meet and join.
std::optional<OrthoLattice> set_algebra(const std::vector<std::string> &names, const std::vector<StateSet> &sets) {
    const std::size_t n = sets.size();
    if (n == 0) {
        return std::nullopt;
    }
    std::map<StateSet, std::size_t> index;
    for (std::size_t k = 0; k < n; ++k) {
        if (!index.emplace(sets[k], k).second) {
            return std::nullopt;
        }
    }
    auto lookup = [&](const StateSet &s) -> std::optional<std::size_t> {
        auto it = index.find(s);
        if (it == index.end()) {
            return std::nullopt;
        }
        return it->second;
    };
    OrthoLattice l;
    l.elements = names;
    l.order.assign(n, std::vector<bool>(n));
    l.meet.assign(n, std::vector<std::size_t>(n));
    l.join.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        auto complement = lookup(~sets[a]);
        if (!complement) {
            return std::nullopt;
        }
        l.ortho.push_back(*complement);
        for (std::size_t b = 0; b < n; ++b) {
            auto meet = lookup(sets[a] & sets[b]);
            auto join = lookup(sets[a] | sets[b]);
            if (!meet || !join) {
                return std::nullopt;
            }
            l.order[a][b] = sets[a].is_subset_of(sets[b]);
            l.meet[a][b] = *meet;
            l.join[a][b] = *join;
        }
    }
    const std::size_t states = sets.front().size();
    auto bottom = lookup(StateSet(states));
    auto top = lookup(~StateSet(states));
    if (!bottom || !top) {
        return std::nullopt;
    }
    l.bottom = *bottom;
    l.top = *top;
    return l;
}

std::vector<StateSet> possession_columns(const Entity &entity, const PossessionMap &possession) {
    std::vector<StateSet> columns(entity.property_count(), StateSet(entity.state_count()));
    for (std::size_t s = 0; s < possession.possessed.size(); ++s) {
        for (PropertyId e : possession.possessed[s]) {
            columns.at(e.value).set(s);
        }
    }
    return columns;
}

std::vector<std::string> property_names(const Entity &entity) {
    std::vector<std::string> names;
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        names.push_back(entity.name(PropertyId{e}));
    }
    return names;
}

void finish(CheckResult &c, const std::string &ok) {
    c.verdict = c.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
    if (c.detail.empty()) {
        c.detail = c.witnesses.empty() ? ok : std::to_string(c.witnesses.size()) + " violation(s)";
    }
    if (c.witnesses.size() > 5) {
        c.witnesses.resize(5);
    }
}

}  // namespace

ContextualModel build_cm_model(std::shared_ptr<const Entity> entity, const PossessionMap &possession,
                               std::vector<Number> state_weights) {
    if (!entity) {
        throw std::invalid_argument("no entity");
    }
    const std::size_t n = entity->state_count();
    if (possession.possessed.size() != n || state_weights.size() != n) {
        throw std::invalid_argument("one possession set and one weight per state are required");
    }
    Number total;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (!(state_weights[s] > Number::integer(0))) {
            throw std::invalid_argument("state " + entity->name(StateId{s}) + " has non-positive weight");
        }
        total += state_weights[s];
        for (PropertyId e : possession.possessed[s]) {
            if (e.value >= entity->property_count()) {
                throw std::invalid_argument("unknown property in the possession set of " +
                                            entity->name(StateId{s}));
            }
        }
        for (std::uint32_t t = 0; t < s; ++t) {
            if (possession.possessed[s] == possession.possessed[t]) {
                throw std::invalid_argument("states " + entity->name(StateId{t}) + " and " +
                                            entity->name(StateId{s}) + " possess the same properties");
            }
        }
    }
    if (!approx_equal(total, Number::integer(1), kMassTolerance)) {
        throw std::invalid_argument("state weights sum to " + total.str() + ", not 1");
    }

    std::vector<TruthAssignment> universe;
    for (std::uint32_t s = 0; s < n; ++s) {
        boost::dynamic_bitset<> bits(entity->atom_count());
        bits.set(entity->atom_index(AtomId::state(StateId{s})));
        for (PropertyId e : possession.possessed[s]) {
            for (std::uint32_t c = 0; c < entity->context_count(); ++c) {
                bits.set(entity->atom_index(AtomId::property(e, ContextId{c})));
            }
        }
        universe.emplace_back(*entity, std::move(bits));
    }

    MeasurementProcedure all{"M_all", {}, {ContextId{0}}, {Number::integer(1)}};
    for (std::uint32_t e = 0; e < entity->property_count(); ++e) {
        all.measures.push_back(PropertyId{e});
    }
    MeasurementCatalog catalog(*entity, {std::move(all)});

    std::vector<FirstKindTransform> identity;
    for (std::uint32_t e = 0; e < entity->property_count(); ++e) {
        FirstKindTransform t{PropertyId{e}, {}};
        for (std::uint32_t s = 0; s < n; ++s) {
            if (possession.possessed[s].contains(PropertyId{e})) {
                t.map[StateId{s}] = StateId{s};
            }
        }
        identity.push_back(std::move(t));
    }

    auto lattice = cm_property_lattice(*entity, possession);
    ProbabilitySpace space(std::move(universe), std::move(state_weights));
    return ContextualModel(std::move(entity), std::move(space), std::move(catalog), std::move(lattice),
                           std::move(identity));
}

std::optional<OrthoLattice> cm_property_lattice(const Entity &entity, const PossessionMap &possession) {
    return set_algebra(property_names(entity), possession_columns(entity, possession));
}

Report verify_cm_collapse(const ContextualModel &model) {
    const Entity &entity = model.entity();
    const auto universe = model.space().universe();
    const double eps = model.comparison_tolerance();
    Report report{"cm_collapse", {}};

    CheckResult invariance{"context_invariance"};
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        Event first = extension(universe, Proposition::property(PropertyId{e}, ContextId{0}));
        for (std::uint32_t c = 1; c < entity.context_count(); ++c) {
            if (extension(universe, Proposition::property(PropertyId{e}, ContextId{c})) != first) {
                invariance.witnesses.push_back("(" + entity.name(PropertyId{e}) + ", " +
                                               entity.name(ContextId{0}) + ", " + entity.name(ContextId{c}) + ")");
            }
        }
    }
    finish(invariance, "every property atom has the same extension at every micro-context");
    report.add(std::move(invariance));

    // Extension of each state proposition, as a set of assignments, and the
    // state of each assignment.
    CheckResult singletons{"state_singletons"};
    std::vector<std::size_t> covered(universe.size(), 0);
    for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
        Event ext = extension(universe, Proposition::state(StateId{s}));
        if (ext.count() != 1) {
            singletons.witnesses.push_back(entity.name(StateId{s}) + " holds in " + std::to_string(ext.count()) +
                                           " assignments");
        }
        for (auto w = ext.find_first(); w != Event::npos; w = ext.find_next(w)) {
            ++covered[w];
        }
    }
    for (std::size_t w = 0; w < universe.size(); ++w) {
        if (covered[w] == 0) {
            singletons.witnesses.push_back("assignment " + std::to_string(w) + " has no state");
        }
    }
    finish(singletons, "states and truth assignments are in bijection");
    report.add(std::move(singletons));

    // Exact q-probabilities, kept as Numbers for the sharpness check.
    std::vector<std::vector<Number>> q(entity.state_count());
    CheckResult sharp{"sharp_values"};
    for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
        for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
            Number v = q_probability(model, StateId{s}, PropertyId{e});
            if (!approx_equal(v, Number::integer(0), eps) && !approx_equal(v, Number::integer(1), eps)) {
                sharp.witnesses.push_back("P_" + entity.name(StateId{s}) + "(" + entity.name(PropertyId{e}) +
                                          ") = " + v.str());
            }
            q[s].push_back(v);
        }
    }
    finish(sharp, "every P_S(E) is 0 or 1");
    report.add(std::move(sharp));

    const auto family = q_probability_table(model);
    const auto pre = build_preorder(family, eps);
    std::vector<StateSet> columns(entity.property_count(), StateSet(entity.state_count()));
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
            columns[e][s] = entails(universe, Proposition::state(StateId{s}),
                                    Proposition::property(PropertyId{e}, ContextId{0}));
        }
    }
    CheckResult order{"order_is_inclusion"};
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        for (std::uint32_t f = 0; f < entity.property_count(); ++f) {
            bool included = entails(universe, Proposition::property(PropertyId{e}, ContextId{0}),
                                    Proposition::property(PropertyId{f}, ContextId{0}));
            if (pre.relation[e][f] != included) {
                order.witnesses.push_back(entity.name(PropertyId{e}) + " vs " + entity.name(PropertyId{f}) +
                                          (included ? ": extensions nested but not ordered"
                                                    : ": ordered without nested extensions"));
            }
            if (e < f && pre.relation[e][f] && pre.relation[f][e]) {
                order.witnesses.push_back(entity.name(PropertyId{e}) + " and " + entity.name(PropertyId{f}) +
                                          " precede each other");
            }
        }
    }
    finish(order, "the property order is extension inclusion and is antisymmetric");
    report.add(std::move(order));

    // Quotient by the preorder; each class carries its common state set.
    std::vector<std::string> class_names;
    std::vector<StateSet> class_sets;
    for (const auto &cls : pre.classes) {
        std::string name;
        for (std::size_t e : cls) {
            name += (name.empty() ? "" : "=") + entity.name(PropertyId{std::uint32_t(e)});
        }
        class_names.push_back(name);
        class_sets.push_back(columns[cls.front()]);
    }
    auto quotient = set_algebra(class_names, class_sets);
    if (!quotient) {
        report.add({"boolean_measure", Verdict::Skipped,
                    "the property classes do not form a Boolean algebra of state sets"});
    } else {
        Report lattice_checks = check_ortholattice(*quotient);
        lattice_checks.suite = "quotient";
        report.append(lattice_checks);
        CheckResult measure{"boolean_measure"};
        const std::size_t k = quotient->size();
        for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
            std::vector<double> row;
            for (const auto &cls : pre.classes) {
                row.push_back(family.at(StateId{s}, PropertyId{std::uint32_t(cls.front())}));
            }
            Report gpm = check_gpm(row, *quotient, eps);
            gpm.suite = "gpm[" + entity.name(StateId{s}) + "]";
            report.append(gpm);
            for (std::size_t a = 0; a < k; ++a) {
                double point = class_sets[a][s] ? 1.0 : 0.0;
                if (std::abs(row[a] - point) > eps) {
                    measure.witnesses.push_back("P_" + entity.name(StateId{s}) + "(" + class_names[a] +
                                                ") differs from the point measure");
                }
                for (std::size_t b = 0; b < k; ++b) {
                    double lhs = row[quotient->join[a][b]] + row[quotient->meet[a][b]];
                    if (std::abs(lhs - row[a] - row[b]) > eps) {
                        measure.witnesses.push_back("P_" + entity.name(StateId{s}) + " not modular on " +
                                                    class_names[a] + ", " + class_names[b]);
                    }
                }
            }
        }
        finish(measure, "each P_S is the point measure at S on a Boolean algebra");
        report.add(std::move(measure));
    }

    CheckResult conditioning{"conditioning"};
    std::size_t defined = 0;
    for (std::uint32_t f = 0; f < entity.property_count(); ++f) {
        const PropertyId pf{f};
        for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
            if (approx_equal(q[s][f], Number::integer(0), eps)) {
                continue;
            }
            if (!model.first_kind_for(pf)) {
                conditioning.witnesses.push_back("no first-kind transform for " + entity.name(pf));
                break;
            }
            for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
                const PropertyId pe{e};
                double sequential = conditional_q_probability(family, model.first_kind(), StateId{s}, pe, pf, eps);
                auto both = model.catalog().common({pe, pf});
                if (both.empty()) {
                    conditioning.witnesses.push_back(entity.name(pe) + " and " + entity.name(pf) +
                                                     " have no common procedure");
                    continue;
                }
                const auto &m = model.catalog().procedures()[both.front()];
                const ContextId c = m.contexts.front();
                auto given = Proposition::state(StateId{s});
                Number joint = mean_conditional(model, Proposition::property(pe, c) & Proposition::property(pf, c),
                                                given, m);
                Number cond = mean_conditional(model, Proposition::property(pf, c), given, m);
                Number ratio = joint / cond;
                ++defined;
                if (std::abs(sequential - q[s][e].to_double()) > eps || !approx_equal(ratio, q[s][e], eps)) {
                    std::ostringstream out;
                    out << entity.name(StateId{s}) << ", " << entity.name(pe) << " given " << entity.name(pf)
                        << ": sequential " << sequential << ", plain " << q[s][e].str() << ", ratio " << ratio.str();
                    conditioning.witnesses.push_back(out.str());
                }
            }
        }
    }
    finish(conditioning, std::to_string(defined) + " defined triples agree");
    report.add(std::move(conditioning));
    return report;
}

}  // namespace ctxprob
