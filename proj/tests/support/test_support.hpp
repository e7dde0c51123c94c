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

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ctxprob/classical.hpp"
#include "ctxprob/language.hpp"
#include "ctxprob/measurement.hpp"
#include "ctxprob/model.hpp"
#include "ctxprob/muprob.hpp"
#include "ctxprob/quantum.hpp"

namespace ctxprob::test {

using Rng = std::mt19937_64;

inline std::string fixture(const std::string &name) {
    return std::string(CTXPROB_FIXTURE_DIR) + "/" + name;
}

inline std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::shared_ptr<const Entity> make_entity(std::size_t properties, std::size_t states, std::size_t contexts) {
    std::vector<std::string> e, s, c;
    for (std::size_t k = 0; k < properties; ++k) {
        e.push_back("E" + std::to_string(k));
    }
    for (std::size_t k = 0; k < states; ++k) {
        s.push_back("S" + std::to_string(k));
    }
    for (std::size_t k = 0; k < contexts; ++k) {
        c.push_back("c" + std::to_string(k));
    }
    return std::make_shared<const Entity>(e, s, c);
}

inline std::vector<AtomId> all_atoms(const Entity &entity) {
    std::vector<AtomId> out;
    for (std::size_t k = 0; k < entity.atom_count(); ++k) {
        out.push_back(entity.atom_at(k));
    }
    return out;
}

inline Proposition random_formula(Rng &rng, const std::vector<AtomId> &atoms, std::size_t depth) {
    std::size_t pick = depth == 0 ? 0 : uniform(rng, 0, 3);
    switch (pick) {
        case 1:
            return !random_formula(rng, atoms, depth - 1);
        case 2:
            return random_formula(rng, atoms, depth - 1) & random_formula(rng, atoms, depth - 1);
        case 3:
            return random_formula(rng, atoms, depth - 1) | random_formula(rng, atoms, depth - 1);
        default:
            return Proposition::atom(atoms[uniform(rng, 0, atoms.size() - 1)]);
    }
}

/// Every formula over the atoms with connective depth at most `depth`.
inline std::vector<Proposition> all_formulas(const std::vector<AtomId> &atoms, std::size_t depth) {
    std::vector<Proposition> level;
    for (const auto &a : atoms) {
        level.push_back(Proposition::atom(a));
    }
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<Proposition> next = level;
        for (const auto &a : level) {
            next.push_back(!a);
        }
        for (const auto &a : level) {
            for (const auto &b : level) {
                next.push_back(a & b);
                next.push_back(a | b);
            }
        }
        level = std::move(next);
    }
    return level;
}

/// Truth value by direct recursion on the tree, reading atoms one by one.
inline bool oracle_eval(const TruthAssignment &w, const Proposition &a) {
    switch (a.op()) {
        case Proposition::Op::Atom:
            return w.value(a.atom());
        case Proposition::Op::Not:
            return !oracle_eval(w, a.lhs());
        case Proposition::Op::And:
            return oracle_eval(w, a.lhs()) && oracle_eval(w, a.rhs());
        case Proposition::Op::Or:
            return oracle_eval(w, a.lhs()) || oracle_eval(w, a.rhs());
    }
    return false;
}

inline void collect_atoms(const Proposition &a, std::vector<AtomId> &out) {
    if (a.op() == Proposition::Op::Atom) {
        out.push_back(a.atom());
        return;
    }
    collect_atoms(a.lhs(), out);
    if (a.op() != Proposition::Op::Not) {
        collect_atoms(a.rhs(), out);
    }
}

/// A random assignment: at most one true state atom, property atoms i.i.d.
inline TruthAssignment random_assignment(Rng &rng, const Entity &entity, std::optional<StateId> state) {
    std::vector<AtomId> truths;
    if (state) {
        truths.push_back(AtomId::state(*state));
    }
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        for (std::uint32_t c = 0; c < entity.context_count(); ++c) {
            if (uniform(rng, 0, 1)) {
                truths.push_back(AtomId::property(PropertyId{e}, ContextId{c}));
            }
        }
    }
    return TruthAssignment(entity, truths);
}

/// A space whose assignments cycle through the states so that each state
/// has positive weight; exact weights are random integers normalized.
inline ProbabilitySpace random_space(Rng &rng, const Entity &entity, std::size_t size, bool exact) {
    std::vector<TruthAssignment> universe;
    std::vector<std::int64_t> raw;
    std::int64_t total = 0;
    for (std::size_t k = 0; k < size; ++k) {
        universe.push_back(random_assignment(rng, entity, StateId{std::uint32_t(k % entity.state_count())}));
        raw.push_back(std::int64_t(uniform(rng, 1, 20)));
        total += raw.back();
    }
    std::vector<Number> weights;
    for (auto r : raw) {
        weights.push_back(exact ? Number::exact(r, total) : Number(double(r) / double(total)));
    }
    return ProbabilitySpace(std::move(universe), std::move(weights));
}

/// Random catalog; each property gets at least one procedure.
inline std::vector<MeasurementProcedure> random_procedures(Rng &rng, const Entity &entity, std::size_t count) {
    std::vector<MeasurementProcedure> out;
    for (std::size_t k = 0; k < count; ++k) {
        MeasurementProcedure m;
        m.id = "M" + std::to_string(k);
        for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
            if (uniform(rng, 0, 1) || e == k % entity.property_count()) {
                m.measures.push_back(PropertyId{e});
            }
        }
        std::vector<std::uint32_t> contexts;
        for (std::uint32_t c = 0; c < entity.context_count(); ++c) {
            if (uniform(rng, 0, 2) == 0) {
                contexts.push_back(c);
            }
        }
        if (contexts.empty()) {
            contexts.push_back(std::uint32_t(uniform(rng, 0, entity.context_count() - 1)));
        }
        for (auto c : contexts) {
            m.contexts.push_back(ContextId{c});
            m.context_weights.push_back(Number::exact(1, std::int64_t(contexts.size())));
        }
        out.push_back(std::move(m));
    }
    for (std::uint32_t e = 0; e < entity.property_count(); ++e) {
        bool covered = std::any_of(out.begin(), out.end(), [&](const MeasurementProcedure &m) {
            return std::find(m.measures.begin(), m.measures.end(), PropertyId{e}) != m.measures.end();
        });
        if (!covered) {
            out.front().measures.push_back(PropertyId{e});
        }
    }
    return out;
}

/// Testability by exhaustive search over procedures (in id order) and
/// micro-contexts, straight from the definition.
inline std::optional<TestabilityWitness> testable_oracle(const Entity &entity,
                                                         const std::vector<MeasurementProcedure> &procs,
                                                         const Proposition &a) {
    std::vector<AtomId> atoms;
    collect_atoms(a, atoms);
    std::set<std::uint32_t> props;
    for (const auto &x : atoms) {
        if (x.is_state()) {
            return std::nullopt;
        }
        props.insert(x.subject);
    }
    std::vector<const MeasurementProcedure *> sorted;
    for (const auto &m : procs) {
        sorted.push_back(&m);
    }
    std::sort(sorted.begin(), sorted.end(), [](auto *x, auto *y) { return x->id < y->id; });
    for (const auto *m : sorted) {
        for (std::uint32_t c = 0; c < entity.context_count(); ++c) {
            bool in_context = std::find(m->contexts.begin(), m->contexts.end(), ContextId{c}) != m->contexts.end();
            bool all_here = std::all_of(atoms.begin(), atoms.end(), [&](const AtomId &x) { return x.context == c; });
            bool measures = std::all_of(props.begin(), props.end(), [&](std::uint32_t e) {
                return std::find(m->measures.begin(), m->measures.end(), PropertyId{e}) != m->measures.end();
            });
            if (in_context && all_here && measures) {
                return TestabilityWitness{m->id, ContextId{c}};
            }
        }
    }
    return std::nullopt;
}

/// Random density matrix: a pure state mixed with the identity.
inline ComplexMatrix random_density(Rng &rng, int dim) {
    std::normal_distribution<double> g;
    ComplexVector psi(dim);
    for (int k = 0; k < dim; ++k) {
        psi[k] = {g(rng), g(rng)};
    }
    double mix = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return mix * ket_projector(psi) + (1.0 - mix) * ComplexMatrix::Identity(dim, dim) / double(dim);
}

inline ComplexMatrix random_rank1(Rng &rng, int dim) {
    std::normal_distribution<double> g;
    ComplexVector psi(dim);
    for (int k = 0; k < dim; ++k) {
        psi[k] = {g(rng), g(rng)};
    }
    return ket_projector(psi);
}

/// Random CM possession map with pairwise distinct state and property columns.
inline std::optional<PossessionMap> random_possession(Rng &rng, std::size_t states, std::size_t properties) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        PossessionMap map{std::vector<std::set<PropertyId>>(states)};
        for (std::size_t s = 0; s < states; ++s) {
            for (std::uint32_t e = 0; e < properties; ++e) {
                if (uniform(rng, 0, 1)) {
                    map.possessed[s].insert(PropertyId{e});
                }
            }
        }
        std::set<std::set<PropertyId>> rows(map.possessed.begin(), map.possessed.end());
        std::set<std::vector<bool>> columns;
        for (std::uint32_t e = 0; e < properties; ++e) {
            std::vector<bool> col;
            for (std::size_t s = 0; s < states; ++s) {
                col.push_back(map.possessed[s].contains(PropertyId{e}));
            }
            columns.insert(col);
        }
        if (rows.size() == states && columns.size() == properties) {
            return map;
        }
    }
    return std::nullopt;
}

}  // namespace ctxprob::test
