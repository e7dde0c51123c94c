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

#include "ctxprob/model_io.hpp"

#include <fstream>
#include <sstream>

#include "ctxprob/classical.hpp"

namespace ctxprob {

using nlohmann::json;

namespace {

std::string child(const std::string &ptr, const std::string &key) {
    std::string escaped;
    for (char ch : key) {
        if (ch == '~') {
            escaped += "~0";
        } else if (ch == '/') {
            escaped += "~1";
        } else {
            escaped += ch;
        }
    }
    return ptr + "/" + escaped;
}

std::string child(const std::string &ptr, std::size_t index) {
    return ptr + "/" + std::to_string(index);
}

[[noreturn]] void fail(const std::string &ptr, const std::string &what) {
    throw ModelError(what, ptr.empty() ? "/" : ptr);
}

const json &member(const json &obj, const std::string &ptr, const std::string &key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(ptr, "missing key '" + key + "'");
    }
    return *it;
}

void expect_object(const json &j, const std::string &ptr) {
    if (!j.is_object()) {
        fail(ptr, "expected an object");
    }
}

void expect_array(const json &j, const std::string &ptr) {
    if (!j.is_array()) {
        fail(ptr, "expected an array");
    }
}

void allow_keys(const json &obj, const std::string &ptr, std::initializer_list<std::string_view> keys) {
    for (const auto &[key, value] : obj.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            fail(child(ptr, key), "unknown key '" + key + "'");
        }
    }
}

std::string read_string(const json &j, const std::string &ptr) {
    if (!j.is_string()) {
        fail(ptr, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<std::string> read_strings(const json &j, const std::string &ptr) {
    expect_array(j, ptr);
    std::vector<std::string> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(read_string(j[k], child(ptr, k)));
    }
    return out;
}

Number read_number(const json &j, const std::string &ptr) {
    if (j.is_number_integer()) {
        return Number::integer(j.get<std::int64_t>());
    }
    if (j.is_number_float()) {
        return Number(j.get<double>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        auto den = j[1].get<std::int64_t>();
        if (den <= 0) {
            fail(child(ptr, 1), "denominator must be positive");
        }
        return Number::exact(j[0].get<std::int64_t>(), den);
    }
    fail(ptr, "expected a number or a [numerator, denominator] pair");
}

double read_double(const json &j, const std::string &ptr) {
    return read_number(j, ptr).to_double();
}

std::size_t read_count(const json &j, const std::string &ptr) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 1) {
        fail(ptr, "expected a positive integer");
    }
    return std::size_t(j.get<std::int64_t>());
}

double read_angle(const json &j, const std::string &ptr) {
    if (j.is_string()) {
        try {
            return parse_angle(j.get<std::string>());
        } catch (const std::invalid_argument &e) {
            fail(ptr, e.what());
        }
    }
    return read_double(j, ptr);
}

std::shared_ptr<const Entity> read_entity(const json &j, const std::string &ptr) {
    expect_object(j, ptr);
    allow_keys(j, ptr, {"properties", "states", "contexts"});
    auto properties = read_strings(member(j, ptr, "properties"), child(ptr, "properties"));
    auto states = read_strings(member(j, ptr, "states"), child(ptr, "states"));
    auto contexts = read_strings(member(j, ptr, "contexts"), child(ptr, "contexts"));
    try {
        return std::make_shared<const Entity>(std::move(properties), std::move(states), std::move(contexts));
    } catch (const std::invalid_argument &e) {
        fail(ptr, e.what());
    }
}

PropertyId property_ref(const Entity &entity, const json &j, const std::string &ptr) {
    auto name = read_string(j, ptr);
    auto id = entity.find_property(name);
    if (!id) {
        fail(ptr, "unknown property '" + name + "'");
    }
    return *id;
}

StateId state_ref(const Entity &entity, const json &j, const std::string &ptr) {
    auto name = read_string(j, ptr);
    auto id = entity.find_state(name);
    if (!id) {
        fail(ptr, "unknown state '" + name + "'");
    }
    return *id;
}

ContextId context_ref(const Entity &entity, const std::string &name, const std::string &ptr) {
    auto id = entity.find_context(name);
    if (!id) {
        fail(ptr, "unknown context '" + name + "'");
    }
    return *id;
}

ProbabilitySpace read_universe(const Entity &entity, const json &j, const std::string &ptr) {
    expect_array(j, ptr);
    if (j.empty()) {
        fail(ptr, "the universe is empty");
    }
    std::vector<TruthAssignment> universe;
    std::vector<Number> weights;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = child(ptr, k);
        expect_object(j[k], at);
        allow_keys(j[k], at, {"true", "weight"});
        const std::string truths = child(at, "true");
        const json &atoms = member(j[k], at, "true");
        expect_array(atoms, truths);
        std::vector<AtomId> true_atoms;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            const std::string atom_ptr = child(truths, a);
            try {
                Proposition p = parse_proposition(read_string(atoms[a], atom_ptr), entity);
                if (p.op() != Proposition::Op::Atom) {
                    fail(atom_ptr, "expected a single atom");
                }
                true_atoms.push_back(p.atom());
            } catch (const ParseError &e) {
                fail(atom_ptr, e.what());
            }
        }
        try {
            universe.emplace_back(entity, true_atoms);
        } catch (const std::invalid_argument &e) {
            fail(truths, e.what());
        }
        weights.push_back(read_number(member(j[k], at, "weight"), child(at, "weight")));
    }
    try {
        return ProbabilitySpace(std::move(universe), std::move(weights));
    } catch (const std::invalid_argument &e) {
        fail(ptr, e.what());
    }
}

MeasurementCatalog read_procedures(const Entity &entity, const json &j, const std::string &ptr) {
    expect_array(j, ptr);
    std::vector<MeasurementProcedure> procs;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = child(ptr, k);
        expect_object(j[k], at);
        allow_keys(j[k], at, {"id", "measures", "contexts"});
        MeasurementProcedure m;
        m.id = read_string(member(j[k], at, "id"), child(at, "id"));
        const json &measures = member(j[k], at, "measures");
        expect_array(measures, child(at, "measures"));
        for (std::size_t e = 0; e < measures.size(); ++e) {
            m.measures.push_back(property_ref(entity, measures[e], child(child(at, "measures"), e)));
        }
        const std::string ctx_ptr = child(at, "contexts");
        const json &contexts = member(j[k], at, "contexts");
        expect_object(contexts, ctx_ptr);
        for (const auto &[name, weight] : contexts.items()) {
            m.contexts.push_back(context_ref(entity, name, child(ctx_ptr, name)));
            m.context_weights.push_back(read_number(weight, child(ctx_ptr, name)));
        }
        procs.push_back(std::move(m));
    }
    try {
        return MeasurementCatalog(entity, std::move(procs));
    } catch (const ModelError &e) {
        fail(ptr, e.what());
    }
}

OrthoLattice read_lattice(const json &j, const std::string &ptr) {
    expect_object(j, ptr);
    allow_keys(j, ptr, {"elements", "order", "meet", "join", "ortho", "bottom", "top"});
    OrthoLattice l;
    l.elements = read_strings(member(j, ptr, "elements"), child(ptr, "elements"));
    const std::size_t n = l.size();
    auto element = [&](const json &x, const std::string &at) {
        auto name = read_string(x, at);
        auto id = l.find(name);
        if (!id) {
            fail(at, "unknown lattice element '" + name + "'");
        }
        return *id;
    };
    l.order.assign(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
        l.order[a][a] = true;
    }
    const std::string order_ptr = child(ptr, "order");
    const json &order = member(j, ptr, "order");
    expect_array(order, order_ptr);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::string at = child(order_ptr, k);
        if (!order[k].is_array() || order[k].size() != 2) {
            fail(at, "expected a pair [lower, upper]");
        }
        l.order[element(order[k][0], child(at, 0))][element(order[k][1], child(at, 1))] = true;
    }
    auto table = [&](const std::string &key) {
        const std::string at = child(ptr, key);
        const json &t = member(j, ptr, key);
        expect_array(t, at);
        if (t.size() != n) {
            fail(at, "expected " + std::to_string(n) + " rows");
        }
        std::vector<std::vector<std::size_t>> out(n);
        for (std::size_t a = 0; a < n; ++a) {
            const std::string row = child(at, a);
            expect_array(t[a], row);
            if (t[a].size() != n) {
                fail(row, "expected " + std::to_string(n) + " entries");
            }
            for (std::size_t b = 0; b < n; ++b) {
                out[a].push_back(element(t[a][b], child(row, b)));
            }
        }
        return out;
    };
    l.meet = table("meet");
    l.join = table("join");
    const std::string ortho_ptr = child(ptr, "ortho");
    const json &ortho = member(j, ptr, "ortho");
    expect_array(ortho, ortho_ptr);
    if (ortho.size() != n) {
        fail(ortho_ptr, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t a = 0; a < n; ++a) {
        l.ortho.push_back(element(ortho[a], child(ortho_ptr, a)));
    }
    l.bottom = element(member(j, ptr, "bottom"), child(ptr, "bottom"));
    l.top = element(member(j, ptr, "top"), child(ptr, "top"));
    return l;
}

std::vector<FirstKindTransform> read_first_kind(const Entity &entity, const json &j, const std::string &ptr) {
    expect_array(j, ptr);
    std::vector<FirstKindTransform> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = child(ptr, k);
        expect_object(j[k], at);
        allow_keys(j[k], at, {"property", "map"});
        FirstKindTransform t;
        t.property = property_ref(entity, member(j[k], at, "property"), child(at, "property"));
        const std::string map_ptr = child(at, "map");
        const json &map = member(j[k], at, "map");
        expect_object(map, map_ptr);
        for (const auto &[from, to] : map.items()) {
            auto s = entity.find_state(from);
            if (!s) {
                fail(child(map_ptr, from), "unknown state '" + from + "'");
            }
            t.map[*s] = state_ref(entity, to, child(map_ptr, from));
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::complex<double> read_complex(const json &j, const std::string &ptr) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    fail(ptr, "expected a real number or [re, im]");
}

ComplexMatrix read_operator(const json &j, const std::string &ptr, int dimension) {
    if (j.contains("ket")) {
        const std::string at = child(ptr, "ket");
        const json &ket = j["ket"];
        expect_array(ket, at);
        if (int(ket.size()) != dimension) {
            fail(at, "expected " + std::to_string(dimension) + " amplitudes");
        }
        ComplexVector psi(dimension);
        for (int k = 0; k < dimension; ++k) {
            psi[k] = read_complex(ket[k], child(at, k));
        }
        try {
            return ket_projector(psi);
        } catch (const std::invalid_argument &e) {
            fail(at, e.what());
        }
    }
    const std::string at = child(ptr, "matrix");
    const json &m = member(j, ptr, "matrix");
    expect_array(m, at);
    if (int(m.size()) != dimension) {
        fail(at, "expected " + std::to_string(dimension) + " rows");
    }
    ComplexMatrix out(dimension, dimension);
    for (int r = 0; r < dimension; ++r) {
        const std::string row = child(at, r);
        expect_array(m[r], row);
        if (int(m[r].size()) != dimension) {
            fail(row, "expected " + std::to_string(dimension) + " entries");
        }
        for (int c = 0; c < dimension; ++c) {
            out(r, c) = read_complex(m[r][c], child(row, c));
        }
    }
    return out;
}

HilbertModel read_quantum(const json &j, const std::string &ptr) {
    allow_keys(j, ptr, {"kind", "dimension", "states", "properties"});
    const json &dim_json = member(j, ptr, "dimension");
    if (!dim_json.is_number_integer()) {
        fail(child(ptr, "dimension"), "expected an integer");
    }
    const int dimension = dim_json.get<int>();
    if (dimension < 2 || dimension > kMaxDimension) {
        fail(child(ptr, "dimension"), "dimension must be 2.." + std::to_string(kMaxDimension));
    }
    std::vector<DensityState> states;
    std::vector<ProjectorProperty> properties;
    for (const char *key : {"states", "properties"}) {
        const std::string list_ptr = child(ptr, key);
        const json &list = member(j, ptr, key);
        expect_array(list, list_ptr);
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string at = child(list_ptr, k);
            expect_object(list[k], at);
            allow_keys(list[k], at, {"id", "matrix", "ket"});
            auto id = read_string(member(list[k], at, "id"), child(at, "id"));
            auto op = read_operator(list[k], at, dimension);
            try {
                if (std::string_view(key) == "states") {
                    states.emplace_back(std::move(id), std::move(op));
                } else {
                    properties.emplace_back(std::move(id), std::move(op));
                }
            } catch (const std::invalid_argument &e) {
                fail(at, e.what());
            }
        }
    }
    try {
        return HilbertModel(dimension, std::move(states), std::move(properties));
    } catch (const std::invalid_argument &e) {
        fail(ptr, e.what());
    }
}

ContextualModel read_classical(std::shared_ptr<const Entity> entity, const json &j, const std::string &ptr) {
    allow_keys(j, ptr, {"kind", "possession", "weights"});
    const Entity &e = *entity;
    PossessionMap possession{std::vector<std::set<PropertyId>>(e.state_count())};
    std::vector<Number> weights(e.state_count());
    std::vector<bool> has_weight(e.state_count());
    const std::string pos_ptr = child(ptr, "possession");
    const json &pos = member(j, ptr, "possession");
    expect_object(pos, pos_ptr);
    for (const auto &[name, props] : pos.items()) {
        const std::string at = child(pos_ptr, name);
        auto s = e.find_state(name);
        if (!s) {
            fail(at, "unknown state '" + name + "'");
        }
        expect_array(props, at);
        for (std::size_t k = 0; k < props.size(); ++k) {
            possession.possessed[s->value].insert(property_ref(e, props[k], child(at, k)));
        }
    }
    const std::string w_ptr = child(ptr, "weights");
    const json &w = member(j, ptr, "weights");
    expect_object(w, w_ptr);
    for (const auto &[name, value] : w.items()) {
        const std::string at = child(w_ptr, name);
        auto s = e.find_state(name);
        if (!s) {
            fail(at, "unknown state '" + name + "'");
        }
        weights[s->value] = read_number(value, at);
        has_weight[s->value] = true;
    }
    for (std::uint32_t s = 0; s < e.state_count(); ++s) {
        if (!has_weight[s]) {
            fail(w_ptr, "missing weight for state '" + e.name(StateId{s}) + "'");
        }
    }
    try {
        return build_cm_model(std::move(entity), possession, std::move(weights));
    } catch (const std::invalid_argument &err) {
        fail(ptr, err.what());
    } catch (const ModelError &err) {
        fail(ptr, err.what());
    }
}

}  // namespace

const char *to_string(Backend b) {
    switch (b) {
        case Backend::Generic:
            return "generic";
        case Backend::Classical:
            return "classical";
        case Backend::Quantum:
            return "quantum";
        case Backend::Band:
            return "band";
    }
    return "?";
}

LoadedModel load_model(const json &doc) {
    const std::string root;
    expect_object(doc, root);
    allow_keys(doc, root,
               {"format", "entity", "universe", "procedures", "lattice", "first_kind", "tolerance", "backend"});
    const json &format = member(doc, root, "format");
    if (!format.is_number_integer() || format.get<int>() != 1) {
        fail("/format", "unsupported format (expected 1)");
    }

    LoadedModel out;
    const json *backend = doc.contains("backend") ? &doc["backend"] : nullptr;
    if (backend) {
        expect_object(*backend, "/backend");
        auto kind = read_string(member(*backend, "/backend", "kind"), "/backend/kind");
        if (kind == "classical") {
            out.backend = Backend::Classical;
        } else if (kind == "quantum") {
            out.backend = Backend::Quantum;
        } else if (kind == "band") {
            out.backend = Backend::Band;
        } else {
            fail("/backend/kind", "unknown backend '" + kind + "'");
        }
    }

    auto forbid = [&](std::initializer_list<const char *> keys, const char *why) {
        for (const char *key : keys) {
            if (doc.contains(key)) {
                fail(child(root, key), why);
            }
        }
    };

    if (out.backend == Backend::Band) {
        forbid({"entity", "universe", "procedures", "lattice", "first_kind", "tolerance"},
               "generated by the band backend");
        allow_keys(*backend, "/backend", {"kind", "segments", "states"});
        out.band_segments = read_count(member(*backend, "/backend", "segments"), "/backend/segments");
        const json &states = member(*backend, "/backend", "states");
        expect_array(states, "/backend/states");
        std::vector<std::string> names;
        for (std::size_t k = 0; k < states.size(); ++k) {
            const std::string at = child("/backend/states", k);
            expect_object(states[k], at);
            allow_keys(states[k], at, {"id", "theta"});
            names.push_back(read_string(member(states[k], at, "id"), child(at, "id")));
            out.band_thetas.push_back(read_angle(member(states[k], at, "theta"), child(at, "theta")));
        }
        try {
            out.model.emplace(build_band_model(out.band_thetas, out.band_segments, names));
        } catch (const std::invalid_argument &e) {
            fail("/backend", e.what());
        }
        return out;
    }

    if (out.backend == Backend::Quantum) {
        out.hilbert.emplace(read_quantum(*backend, "/backend"));
        if (!doc.contains("entity")) {
            forbid({"universe", "procedures", "lattice", "first_kind", "tolerance"}, "requires an entity");
            return out;
        }
    }

    auto entity = read_entity(member(doc, root, "entity"), "/entity");
    if (out.backend == Backend::Classical) {
        forbid({"universe", "procedures", "lattice", "first_kind", "tolerance"},
               "generated by the classical backend");
        out.model.emplace(read_classical(entity, *backend, "/backend"));
        return out;
    }

    ProbabilitySpace space = read_universe(*entity, member(doc, root, "universe"), "/universe");
    MeasurementCatalog catalog = read_procedures(*entity, member(doc, root, "procedures"), "/procedures");
    std::optional<OrthoLattice> lattice;
    if (doc.contains("lattice")) {
        lattice = read_lattice(doc["lattice"], "/lattice");
    }
    std::vector<FirstKindTransform> first_kind;
    if (doc.contains("first_kind")) {
        first_kind = read_first_kind(*entity, doc["first_kind"], "/first_kind");
    }
    double tolerance = kCompareTolerance;
    if (doc.contains("tolerance")) {
        tolerance = read_double(doc["tolerance"], "/tolerance");
        if (!(tolerance > 0.0)) {
            fail("/tolerance", "tolerance must be positive");
        }
    }
    try {
        out.model.emplace(entity, std::move(space), std::move(catalog), std::move(lattice), std::move(first_kind),
                          tolerance);
    } catch (const ModelError &e) {
        const std::string what = e.what();
        if (what.starts_with("lattice")) {
            fail("/lattice", what);
        }
        if (what.find("first-kind") != std::string::npos) {
            fail("/first_kind", what);
        }
        fail("/universe", what);
    }
    return out;
}

LoadedModel load_model_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ModelError(std::string("invalid JSON: ") + e.what(), "byte " + std::to_string(e.byte));
    }
    return load_model(doc);
}

LoadedModel load_model_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ModelError("cannot open file", path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_model_text(buffer.str());
}

}  // namespace ctxprob
