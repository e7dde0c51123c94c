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

#include "ctxprob/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctxprob/errors.hpp"
#include "ctxprob/measurement.hpp"

namespace ctxprob {

Number q_probability(const ContextualModel &model, StateId s, PropertyId e) {
    const auto &catalog = model.catalog();
    const auto &m = catalog.procedures()[catalog.by_property(e).front()];
    return mean_conditional(model, Proposition::property(e, m.contexts.front()), Proposition::state(s), m);
}

StateProbabilityFamily q_probability_table(const ContextualModel &model) {
    const auto &entity = model.entity();
    StateProbabilityFamily family;
    for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
        family.states.push_back(entity.name(StateId{s}));
    }
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        family.properties.push_back(entity.name(PropertyId{e}));
    }
    for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
        for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
            family.values.push_back(q_probability(model, StateId{s}, PropertyId{e}).to_double());
        }
    }
    return family;
}

PropertyPreorder build_preorder(const StateProbabilityFamily &family, double eps) {
    const std::size_t n = family.property_count();
    PropertyPreorder pre;
    pre.tolerance = eps;
    pre.relation.assign(n, std::vector<bool>(n, true));
    for (std::uint32_t e = 0; e < n; ++e) {
        for (std::uint32_t f = 0; f < n; ++f) {
            for (std::uint32_t s = 0; s < family.state_count(); ++s) {
                if (family.at(StateId{s}, PropertyId{e}) > family.at(StateId{s}, PropertyId{f}) + eps) {
                    pre.relation[e][f] = false;
                    break;
                }
            }
        }
    }
    pre.class_of.assign(n, n);
    for (std::size_t e = 0; e < n; ++e) {
        if (pre.class_of[e] != n) {
            continue;
        }
        pre.class_of[e] = pre.classes.size();
        pre.classes.push_back({e});
        for (std::size_t f = e + 1; f < n; ++f) {
            if (pre.class_of[f] == n && pre.relation[e][f] && pre.relation[f][e]) {
                pre.class_of[f] = pre.class_of[e];
                pre.classes.back().push_back(f);
            }
        }
    }
    const std::size_t k = pre.classes.size();
    pre.quotient.assign(k, std::vector<bool>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            pre.quotient[i][j] = pre.relation[pre.classes[i].front()][pre.classes[j].front()];
        }
    }
    return pre;
}

PropertyPreorder build_preorder(const ContextualModel &model) {
    return build_preorder(q_probability_table(model), model.comparison_tolerance());
}

std::pair<double, double> classical_conditioning_failure(std::span<const double> p, const OrthoLattice &l,
                                                         std::size_t e1, std::size_t e2, std::size_t f,
                                                         double eps) {
    l.validate_shape();
    if (p.size() != l.size() || e1 >= l.size() || e2 >= l.size() || f >= l.size()) {
        throw std::invalid_argument("element outside the lattice");
    }
    if (!l.orthogonal(e1, e2)) {
        throw std::invalid_argument(l.elements[e1] + " and " + l.elements[e2] + " are not orthogonal");
    }
    if (p[f] <= eps) {
        throw StateExcluded("the conditioning element " + l.elements[f] + " has probability zero");
    }
    double lhs = p[l.meet[l.join[e1][e2]][f]] / p[f];
    double rhs = p[l.meet[e1][f]] / p[f] + p[l.meet[e2][f]] / p[f];
    return {lhs, rhs};
}

std::pair<double, double> classical_conditioning_failure(const StateProbabilityFamily &family,
                                                         const OrthoLattice &lattice, StateId s, PropertyId e1,
                                                         PropertyId e2, PropertyId f) {
    return classical_conditioning_failure(family.row(s), lattice, e1.value, e2.value, f.value);
}

Report validate_first_kind(const StateProbabilityFamily &family, const FirstKindTransform &t, double eps) {
    Report report{"first_kind", {}};
    CheckResult domain{"domain"};
    CheckResult repeatable{"repeatable"};
    for (std::uint32_t s = 0; s < family.state_count(); ++s) {
        bool in_sf = family.at(StateId{s}, t.property) > eps;
        auto it = t.map.find(StateId{s});
        if (in_sf && it == t.map.end()) {
            domain.witnesses.push_back("missing image for " + family.states[s]);
        } else if (!in_sf && it != t.map.end()) {
            domain.witnesses.push_back(family.states[s] + " gives probability zero but has an image");
        }
        if (it == t.map.end()) {
            continue;
        }
        double value = family.at(it->second, t.property);
        if (std::abs(value - 1.0) > eps) {
            std::ostringstream out;
            out << family.states[s] << " -> " << family.states[it->second.value] << " gives "
                << family.properties[t.property.value] << " probability " << value;
            repeatable.witnesses.push_back(out.str());
        }
    }
    domain.verdict = domain.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
    repeatable.verdict = repeatable.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
    report.add(domain);
    report.add(repeatable);
    return report;
}

double conditional_q_probability(const StateProbabilityFamily &family, std::span<const FirstKindTransform> transforms,
                                 StateId s, PropertyId e, PropertyId f, double eps) {
    auto t = std::find_if(transforms.begin(), transforms.end(),
                          [&](const FirstKindTransform &x) { return x.property == f; });
    if (t == transforms.end()) {
        throw NoFirstKind("no first-kind procedure registered for " + family.properties.at(f.value));
    }
    if (family.at(s, f) <= eps) {
        throw StateExcluded(family.states.at(s.value) + " gives " + family.properties.at(f.value) +
                            " probability zero");
    }
    auto image = t->map.find(s);
    if (image == t->map.end()) {
        throw StateExcluded("first-kind transform for " + family.properties.at(f.value) + " is undefined on " +
                            family.states.at(s.value));
    }
    return family.at(image->second, e);
}

double conditional_q_probability(const ContextualModel &model, StateId s, PropertyId e, PropertyId f) {
    return conditional_q_probability(q_probability_table(model), model.first_kind(), s, e, f,
                                     model.comparison_tolerance());
}

Report check_model_gpm(const ContextualModel &model, const StateProbabilityFamily &family) {
    Report report{"gpm", {}};
    if (!model.lattice()) {
        report.add({"lattice", Verdict::Skipped, "no property lattice declared"});
        return report;
    }
    for (std::uint32_t s = 0; s < family.state_count(); ++s) {
        Report one = check_gpm(family.row(StateId{s}), *model.lattice(), model.comparison_tolerance());
        one.suite = family.states[s];
        report.append(one);
    }
    return report;
}

}  // namespace ctxprob
