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

#include "ctxprob/measurement.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ctxprob {

bool compatible(const MeasurementCatalog &catalog, const std::set<PropertyId> &props) {
    if (props.empty()) {
        throw std::invalid_argument("compatibility needs a non-empty set of properties");
    }
    for (PropertyId e : props) {
        try {
            catalog.by_property(e);
        } catch (const std::out_of_range &) {
            throw std::invalid_argument("unknown property index " + std::to_string(e.value));
        }
    }
    return !catalog.common(props).empty();
}

namespace {

// The single context shared by all property atoms, nullopt when there are
// none; throws when they disagree.
std::optional<ContextId> uniform_context(const Proposition &a) {
    auto contexts = contexts_of(a);
    if (contexts.empty()) {
        return std::nullopt;
    }
    if (contexts.size() > 1) {
        throw std::invalid_argument("property atoms use more than one micro-context");
    }
    return *contexts.begin();
}

Proposition substitute(const Proposition &a, ContextId c) {
    switch (a.op()) {
        case Proposition::Op::Atom:
            if (a.atom().is_state()) {
                return a;
            }
            return Proposition::property(a.atom().property_id(), c);
        case Proposition::Op::Not:
            return !substitute(a.lhs(), c);
        case Proposition::Op::And:
            return substitute(a.lhs(), c) & substitute(a.rhs(), c);
        case Proposition::Op::Or:
            return substitute(a.lhs(), c) | substitute(a.rhs(), c);
    }
    return a;
}

}  // namespace

std::optional<TestabilityWitness> testable(const MeasurementCatalog &catalog, const Proposition &a) {
    if (has_state_atoms(a)) {
        return std::nullopt;
    }
    auto props = properties_of(a);
    if (props.empty()) {
        return std::nullopt;
    }
    auto contexts = contexts_of(a);
    if (contexts.size() != 1) {
        return std::nullopt;
    }
    ContextId c = *contexts.begin();
    for (std::size_t i : catalog.common(props)) {
        const auto &m = catalog.procedures()[i];
        if (m.has_context(c)) {
            return TestabilityWitness{m.id, c};
        }
    }
    return std::nullopt;
}

Proposition substitute_context(const Proposition &a, ContextId c) {
    uniform_context(a);
    return substitute(a, c);
}

const char *to_string(MeanCase c) {
    switch (c) {
        case MeanCase::BothTestable:
            return "i";
        case MeanCase::TestableGivenState:
            return "ii";
        case MeanCase::StateGivenTestable:
            return "iii";
        case MeanCase::BothState:
            return "iv";
    }
    return "?";
}

MeanCase classify_mean(const Proposition &a, const Proposition &b, const MeasurementProcedure &m) {
    auto props_a = properties_of(a);
    auto props_b = properties_of(b);
    bool state_a = props_a.empty();
    bool state_b = props_b.empty();
    if (state_a && state_b) {
        return MeanCase::BothState;
    }
    auto require_testable = [&](const Proposition &x, const char *which) {
        if (has_state_atoms(x)) {
            throw CaseMismatch(std::string(which) +
                               " mixes state and property atoms: it is neither testable nor a state proposition");
        }
    };
    if (!state_a) {
        require_testable(a, "A");
    }
    if (!state_b) {
        require_testable(b, "B");
    }
    std::set<PropertyId> props = props_a;
    props.insert(props_b.begin(), props_b.end());
    std::set<ContextId> contexts = contexts_of(a);
    auto cb = contexts_of(b);
    contexts.insert(cb.begin(), cb.end());
    if (contexts.size() != 1) {
        throw CaseMismatch("property atoms of A and B do not share a single micro-context");
    }
    if (!m.measures_all(props)) {
        throw CaseMismatch("procedure '" + m.id + "' does not measure every property of A and B");
    }
    if (!m.has_context(*contexts.begin())) {
        throw CaseMismatch("the shared micro-context is not in the context of procedure '" + m.id + "'");
    }
    if (!state_a && !state_b) {
        return MeanCase::BothTestable;
    }
    return state_b ? MeanCase::TestableGivenState : MeanCase::StateGivenTestable;
}

Number mean_conditional(const ContextualModel &model, const Proposition &a, const Proposition &b,
                        const MeasurementProcedure &m) {
    const auto &space = model.space();
    const auto universe = space.universe();
    MeanCase which = classify_mean(a, b, m);
    if (which == MeanCase::BothState) {
        try {
            return mu_conditional(space, a, b);
        } catch (const ConditionNull &) {
            throw ConditionNull("condition has zero probability");
        }
    }
    Event fixed_a = which == MeanCase::StateGivenTestable ? extension(universe, a) : Event();
    Event fixed_b = which == MeanCase::TestableGivenState ? extension(universe, b) : Event();
    Number total = Number::integer(0);
    for (std::size_t k = 0; k < m.contexts.size(); ++k) {
        ContextId c = m.contexts[k];
        Event ea = which == MeanCase::StateGivenTestable ? fixed_a : extension_at(universe, a, c);
        Event eb = which == MeanCase::TestableGivenState ? fixed_b : extension_at(universe, b, c);
        Number denom = xi(space, eb);
        if (denom.is_zero()) {
            const std::string &name = model.entity().name(c);
            throw ConditionNull("condition has zero probability at micro-context '" + name + "'", name);
        }
        total += m.context_weights[k] * (xi(space, ea & eb) / denom);
    }
    return total;
}

MeanConditional mean_conditional(const ContextualModel &model, const Proposition &a, const Proposition &b) {
    auto props = properties_of(a);
    auto pb = properties_of(b);
    props.insert(pb.begin(), pb.end());
    if (props.empty()) {
        return {mean_conditional(model, a, b, model.catalog().procedures().front()), MeanCase::BothState, ""};
    }
    std::string last_reason = "no procedure measures every property of A and B";
    for (std::size_t i : model.catalog().common(props)) {
        const auto &m = model.catalog().procedures()[i];
        try {
            MeanCase which = classify_mean(a, b, m);
            return {mean_conditional(model, a, b, m), which, m.id};
        } catch (const CaseMismatch &e) {
            last_reason = e.what();
        }
    }
    // Re-classify against an arbitrary procedure so structural problems
    // (mixed atoms, split contexts) are reported in preference.
    classify_mean(a, b, model.catalog().procedures().front());
    throw CaseMismatch(last_reason);
}

// ---------------------------------------------------------------------------
// Procedure independence

CheckResult TmumpResult::check() const {
    CheckResult r{"tmump"};
    r.tolerance = kCompareTolerance;
    if (skipped) {
        r.verdict = Verdict::Skipped;
        r.detail = *skipped;
        return r;
    }
    std::ostringstream detail;
    detail << "depth " << depth << ": " << templates << " templates, " << pairs_checked << " pairs, "
           << violations.size() << " violations";
    r.detail = detail.str();
    double worst = 0.0;
    for (const auto &v : violations) {
        worst = std::max(worst, v.gap);
        if (r.witnesses.size() < 20) {
            std::ostringstream out;
            out << "<p(" << v.a << " given " << v.b << ")>: " << v.procedure_m << " = "
                << (v.mean_m ? std::to_string(*v.mean_m) : "undefined") << ", " << v.procedure_n << " = "
                << (v.mean_n ? std::to_string(*v.mean_n) : "undefined");
            r.witnesses.push_back(out.str());
        }
    }
    r.gap = worst;
    if (!violations.empty()) {
        r.verdict = Verdict::Fail;
    }
    return r;
}

namespace {

struct Template {
    Proposition formula;
    bool is_property;
    std::set<PropertyId> props;
    std::vector<Event> ext;  // per relevant context; a single entry for state templates
};

std::string key_of(const Template &t) {
    std::string key(1, t.is_property ? 'p' : 's');
    for (PropertyId e : t.props) {
        key += std::to_string(e.value) + ",";
    }
    key += '|';
    for (const auto &ev : t.ext) {
        std::vector<Event::block_type> blocks;
        boost::to_block_range(ev, std::back_inserter(blocks));
        key.append(reinterpret_cast<const char *>(blocks.data()), blocks.size() * sizeof(Event::block_type));
    }
    return key;
}

}  // namespace

TmumpResult verify_tmump(const ContextualModel &model, std::size_t depth, std::size_t max_templates) {
    TmumpResult result;
    result.depth = depth;
    const auto &catalog = model.catalog();
    const auto &entity = model.entity();
    const auto universe = model.space().universe();

    // Only properties with at least two procedures can take part in a pair
    // with competing procedures.
    std::vector<PropertyId> contested;
    std::set<ContextId> relevant_set;
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        const auto &procs = catalog.by_property(PropertyId{e});
        if (procs.size() >= 2) {
            contested.push_back(PropertyId{e});
            for (std::size_t i : procs) {
                const auto &m = catalog.procedures()[i];
                relevant_set.insert(m.contexts.begin(), m.contexts.end());
            }
        }
    }
    if (contested.empty()) {
        result.pairs_checked = 0;
        return result;
    }
    std::vector<ContextId> relevant(relevant_set.begin(), relevant_set.end());
    std::map<ContextId, std::size_t> slot;
    for (std::size_t k = 0; k < relevant.size(); ++k) {
        slot[relevant[k]] = k;
    }
    const ContextId placeholder = relevant.front();

    std::vector<Template> all;
    std::unordered_map<std::string, std::size_t> seen;
    auto add = [&](Template t) -> bool {
        auto key = key_of(t);
        if (seen.contains(key)) {
            return false;
        }
        seen.emplace(std::move(key), all.size());
        all.push_back(std::move(t));
        return true;
    };

    for (std::uint32_t s = 0; s < entity.state_count(); ++s) {
        auto f = Proposition::state(StateId{s});
        add({f, false, {}, {extension(universe, f)}});
    }
    for (PropertyId e : contested) {
        auto f = Proposition::property(e, placeholder);
        Template t{f, true, {e}, {}};
        for (ContextId c : relevant) {
            t.ext.push_back(extension_at(universe, f, c));
        }
        add(std::move(t));
    }

    std::size_t frontier_begin = 0;
    for (std::size_t level = 1; level <= depth; ++level) {
        std::size_t frontier_end = all.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            Template neg{!all[i].formula, all[i].is_property, all[i].props, {}};
            for (const auto &ev : all[i].ext) {
                neg.ext.push_back(~ev);
            }
            add(std::move(neg));
            for (std::size_t j = 0; j < frontier_end; ++j) {
                if (all[j].is_property != all[i].is_property || (j >= frontier_begin && j < i)) {
                    continue;
                }
                std::set<PropertyId> props = all[i].props;
                props.insert(all[j].props.begin(), all[j].props.end());
                Template conj{all[i].formula & all[j].formula, all[i].is_property, props, {}};
                Template disj{all[i].formula | all[j].formula, all[i].is_property, props, {}};
                for (std::size_t k = 0; k < all[i].ext.size(); ++k) {
                    conj.ext.push_back(all[i].ext[k] & all[j].ext[k]);
                    disj.ext.push_back(all[i].ext[k] | all[j].ext[k]);
                }
                add(std::move(conj));
                add(std::move(disj));
                if (all.size() > max_templates) {
                    result.templates = all.size();
                    result.skipped = "more than " + std::to_string(max_templates) +
                                     " distinct propositions at depth " + std::to_string(level) +
                                     "; lower the depth";
                    return result;
                }
            }
        }
        frontier_begin = frontier_end;
    }
    result.templates = all.size();

    // xi per template per slot is reused across pairs.
    const auto &space = model.space();
    auto ext_at = [&](const Template &t, std::size_t k) -> const Event & {
        return t.is_property ? t.ext[k] : t.ext.front();
    };

    std::map<std::set<PropertyId>, std::vector<std::size_t>> common_cache;
    for (const auto &ta : all) {
        for (const auto &tb : all) {
            if (!ta.is_property && !tb.is_property) {
                continue;
            }
            std::set<PropertyId> props = ta.props;
            props.insert(tb.props.begin(), tb.props.end());
            auto it = common_cache.find(props);
            if (it == common_cache.end()) {
                it = common_cache.emplace(props, catalog.common(props)).first;
            }
            const auto &procs = it->second;
            if (procs.size() < 2) {
                continue;
            }
            ++result.pairs_checked;
            std::vector<std::optional<Number>> means;
            for (std::size_t i : procs) {
                const auto &m = catalog.procedures()[i];
                Number total = Number::integer(0);
                bool defined = true;
                for (std::size_t k = 0; k < m.contexts.size(); ++k) {
                    std::size_t s = slot.at(m.contexts[k]);
                    const Event &eb = ext_at(tb, s);
                    Number denom = xi(space, eb);
                    if (denom.is_zero()) {
                        defined = false;
                        break;
                    }
                    total += m.context_weights[k] * (xi(space, ext_at(ta, s) & eb) / denom);
                }
                means.push_back(defined ? std::optional<Number>(total) : std::nullopt);
            }
            for (std::size_t x = 0; x < procs.size(); ++x) {
                for (std::size_t y = x + 1; y < procs.size(); ++y) {
                    const auto &mx = means[x];
                    const auto &my = means[y];
                    if (!mx && !my) {
                        continue;
                    }
                    bool bad = !mx || !my || !approx_equal(*mx, *my, model.comparison_tolerance());
                    if (!bad) {
                        continue;
                    }
                    const auto &pm = catalog.procedures()[procs[x]];
                    const auto &pn = catalog.procedures()[procs[y]];
                    ContextId shown = pm.contexts.front();
                    TmumpViolation v;
                    v.a = print(ta.is_property ? substitute(ta.formula, shown) : ta.formula, entity);
                    v.b = print(tb.is_property ? substitute(tb.formula, shown) : tb.formula, entity);
                    v.procedure_m = pm.id;
                    v.procedure_n = pn.id;
                    if (mx) {
                        v.mean_m = mx->to_double();
                    }
                    if (my) {
                        v.mean_n = my->to_double();
                    }
                    v.gap = mx && my ? std::abs(mx->to_double() - my->to_double()) : 1.0;
                    result.violations.push_back(std::move(v));
                }
            }
        }
    }
    return result;
}

}  // namespace ctxprob
