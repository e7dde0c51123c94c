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

#include "ctxprob/language.hpp"

#include <cctype>

namespace ctxprob {

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char ch : s) {
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) {
            return false;
        }
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entity

Entity::Entity(std::vector<std::string> properties, std::vector<std::string> states, std::vector<std::string> contexts)
    : properties_(std::move(properties)), states_(std::move(states)), contexts_(std::move(contexts)) {
    if (properties_.empty() || states_.empty() || contexts_.empty()) {
        throw std::invalid_argument("entity needs at least one property, one state and one context");
    }
    auto add = [&](const std::vector<std::string> &names, NameKind kind) {
        for (std::uint32_t i = 0; i < names.size(); ++i) {
            if (!is_identifier(names[i])) {
                throw std::invalid_argument("'" + names[i] + "' is not a valid identifier");
            }
            if (!index_.emplace(names[i], std::make_pair(kind, i)).second) {
                throw std::invalid_argument("identifier '" + names[i] + "' declared twice");
            }
        }
    };
    add(properties_, NameKind::Property);
    add(states_, NameKind::State);
    add(contexts_, NameKind::Context);
}

const std::string &Entity::name(PropertyId e) const {
    return properties_.at(e.value);
}
const std::string &Entity::name(StateId s) const {
    return states_.at(s.value);
}
const std::string &Entity::name(ContextId c) const {
    return contexts_.at(c.value);
}

std::optional<PropertyId> Entity::find_property(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end() || it->second.first != NameKind::Property) {
        return std::nullopt;
    }
    return PropertyId{it->second.second};
}

std::optional<StateId> Entity::find_state(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end() || it->second.first != NameKind::State) {
        return std::nullopt;
    }
    return StateId{it->second.second};
}

std::optional<ContextId> Entity::find_context(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end() || it->second.first != NameKind::Context) {
        return std::nullopt;
    }
    return ContextId{it->second.second};
}

std::size_t Entity::atom_count() const {
    return states_.size() + properties_.size() * contexts_.size();
}

bool Entity::declares(const AtomId &atom) const {
    if (atom.is_state()) {
        return atom.subject < states_.size();
    }
    return atom.subject < properties_.size() && atom.context < contexts_.size();
}

std::size_t Entity::atom_index(const AtomId &atom) const {
    if (!declares(atom)) {
        throw std::out_of_range("atom is not declared by the entity");
    }
    if (atom.is_state()) {
        return atom.subject;
    }
    return states_.size() + std::size_t(atom.subject) * contexts_.size() + atom.context;
}

AtomId Entity::atom_at(std::size_t index) const {
    if (index < states_.size()) {
        return AtomId::state(StateId{std::uint32_t(index)});
    }
    index -= states_.size();
    if (index >= properties_.size() * contexts_.size()) {
        throw std::out_of_range("atom index out of range");
    }
    return AtomId::property(PropertyId{std::uint32_t(index / contexts_.size())},
                            ContextId{std::uint32_t(index % contexts_.size())});
}

// ---------------------------------------------------------------------------
// Proposition

struct Proposition::Node {
    Op op;
    AtomId atom;
    std::optional<Proposition> lhs;
    std::optional<Proposition> rhs;
    std::size_t depth;
    std::size_t size;
};

Proposition Proposition::atom(const AtomId &a) {
    return Proposition(std::make_shared<const Node>(Node{Op::Atom, a, std::nullopt, std::nullopt, 0, 1}));
}

Proposition Proposition::operator!() const {
    return Proposition(std::make_shared<const Node>(Node{Op::Not, {}, *this, std::nullopt, depth() + 1, size() + 1}));
}

Proposition operator&(const Proposition &a, const Proposition &b) {
    using Node = Proposition::Node;
    return Proposition(std::make_shared<const Node>(
        Node{Proposition::Op::And, {}, a, b, std::max(a.depth(), b.depth()) + 1, a.size() + b.size() + 1}));
}

Proposition operator|(const Proposition &a, const Proposition &b) {
    using Node = Proposition::Node;
    return Proposition(std::make_shared<const Node>(
        Node{Proposition::Op::Or, {}, a, b, std::max(a.depth(), b.depth()) + 1, a.size() + b.size() + 1}));
}

Proposition::Op Proposition::op() const {
    return node_->op;
}

const AtomId &Proposition::atom() const {
    if (node_->op != Op::Atom) {
        throw std::logic_error("not an atomic proposition");
    }
    return node_->atom;
}

const Proposition &Proposition::lhs() const {
    if (!node_->lhs) {
        throw std::logic_error("atomic proposition has no operand");
    }
    return *node_->lhs;
}

const Proposition &Proposition::rhs() const {
    if (!node_->rhs) {
        throw std::logic_error("proposition has no right operand");
    }
    return *node_->rhs;
}

std::size_t Proposition::depth() const {
    return node_->depth;
}

std::size_t Proposition::size() const {
    return node_->size;
}

bool operator==(const Proposition &a, const Proposition &b) {
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Proposition &a, const Proposition &b) {
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    if (auto c = a.op() <=> b.op(); c != 0) {
        return c;
    }
    switch (a.op()) {
        case Proposition::Op::Atom:
            return a.atom() <=> b.atom();
        case Proposition::Op::Not:
            return a.lhs() <=> b.lhs();
        default:
            if (auto c = a.lhs() <=> b.lhs(); c != 0) {
                return c;
            }
            return a.rhs() <=> b.rhs();
    }
}

// ---------------------------------------------------------------------------
// TruthAssignment

TruthAssignment::TruthAssignment(const Entity &entity, std::span<const AtomId> true_atoms)
    : states_(std::uint32_t(entity.state_count())),
      properties_(std::uint32_t(entity.property_count())),
      contexts_(std::uint32_t(entity.context_count())),
      bits_(entity.atom_count()) {
    for (const auto &atom : true_atoms) {
        bits_.set(entity.atom_index(atom));
    }
    check_state_exclusivity();
}

TruthAssignment::TruthAssignment(const Entity &entity, boost::dynamic_bitset<> bits)
    : states_(std::uint32_t(entity.state_count())),
      properties_(std::uint32_t(entity.property_count())),
      contexts_(std::uint32_t(entity.context_count())),
      bits_(std::move(bits)) {
    if (bits_.size() != entity.atom_count()) {
        throw std::invalid_argument("truth assignment must cover every atom of the entity");
    }
    check_state_exclusivity();
}

void TruthAssignment::check_state_exclusivity() const {
    int true_states = 0;
    for (std::uint32_t s = 0; s < states_; ++s) {
        true_states += bits_[s];
    }
    if (true_states > 1) {
        throw std::invalid_argument("truth assignment makes more than one state atom true");
    }
}

std::size_t TruthAssignment::index_of(const AtomId &atom) const {
    if (atom.is_state()) {
        if (atom.subject >= states_) {
            throw std::out_of_range("state atom outside the assignment's domain");
        }
        return atom.subject;
    }
    if (atom.subject >= properties_ || atom.context >= contexts_) {
        throw std::out_of_range("property atom outside the assignment's domain");
    }
    return states_ + std::size_t(atom.subject) * contexts_ + atom.context;
}

bool TruthAssignment::value(const AtomId &atom) const {
    return bits_[index_of(atom)];
}

std::optional<StateId> TruthAssignment::state() const {
    for (std::uint32_t s = 0; s < states_; ++s) {
        if (bits_[s]) {
            return StateId{s};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing and printing

ParseError::ParseError(Kind kind, std::size_t position, const std::string &message)
    : std::runtime_error("position " + std::to_string(position) + ": " + message), kind(kind), position(position) {
}

namespace {

class Parser {
   public:
    Parser(std::string_view text, const Entity &entity) : text_(text), entity_(entity) {
    }

    Proposition parse() {
        Proposition result = parse_or();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return result;
    }

   private:
    [[noreturn]] void fail(const std::string &message, ParseError::Kind kind = ParseError::Kind::Syntax) {
        throw ParseError(kind, pos_, message);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char ch) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch) {
        if (!accept(ch)) {
            if (pos_ >= text_.size()) {
                fail(std::string("expected '") + ch + "' but input ended");
            }
            fail(std::string("expected '") + ch + "'");
        }
    }

    std::pair<std::string, std::size_t> identifier() {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
        }
        if (start == pos_) {
            fail(pos_ >= text_.size() ? "expected identifier but input ended" : "expected identifier");
        }
        return {std::string(text_.substr(start, pos_ - start)), start};
    }

    Proposition parse_or() {
        Proposition result = parse_and();
        while (accept('|')) {
            result = result | parse_and();
        }
        return result;
    }

    Proposition parse_and() {
        Proposition result = parse_factor();
        while (accept('&')) {
            result = result & parse_factor();
        }
        return result;
    }

    Proposition parse_factor() {
        if (accept('!')) {
            return !parse_factor();
        }
        if (accept('(')) {
            Proposition inner = parse_or();
            expect(')');
            return inner;
        }
        skip_space();
        if (pos_ >= text_.size()) {
            fail("expected proposition but input ended");
        }
        return parse_atom();
    }

    Proposition parse_atom() {
        auto [keyword, at] = identifier();
        if (keyword == "state") {
            expect('(');
            auto [name, name_at] = identifier();
            expect(')');
            if (auto s = entity_.find_state(name)) {
                return Proposition::state(*s);
            }
            pos_ = name_at;
            if (entity_.find_property(name) || entity_.find_context(name)) {
                fail("'" + name + "' is not a state", ParseError::Kind::WrongKind);
            }
            fail("undeclared state '" + name + "'", ParseError::Kind::Undeclared);
        }
        if (keyword == "prop") {
            expect('(');
            auto [prop, prop_at] = identifier();
            expect(',');
            auto [ctx, ctx_at] = identifier();
            expect(')');
            auto e = entity_.find_property(prop);
            if (!e) {
                pos_ = prop_at;
                if (entity_.find_state(prop) || entity_.find_context(prop)) {
                    fail("'" + prop + "' is not a property", ParseError::Kind::WrongKind);
                }
                fail("undeclared property '" + prop + "'", ParseError::Kind::Undeclared);
            }
            auto c = entity_.find_context(ctx);
            if (!c) {
                pos_ = ctx_at;
                if (entity_.find_state(ctx) || entity_.find_property(ctx)) {
                    fail("'" + ctx + "' is not a context", ParseError::Kind::WrongKind);
                }
                fail("undeclared context '" + ctx + "'", ParseError::Kind::Undeclared);
            }
            return Proposition::property(*e, *c);
        }
        pos_ = at;
        fail("expected 'state(...)' or 'prop(...)'");
    }

    std::string_view text_;
    const Entity &entity_;
    std::size_t pos_ = 0;
};

int precedence(Proposition::Op op) {
    switch (op) {
        case Proposition::Op::Or:
            return 1;
        case Proposition::Op::And:
            return 2;
        case Proposition::Op::Not:
            return 3;
        default:
            return 4;
    }
}

void print_into(std::string &out, const Proposition &a, const Entity &entity, int min_precedence) {
    int prec = precedence(a.op());
    bool parens = prec < min_precedence;
    if (parens) {
        out += '(';
    }
    switch (a.op()) {
        case Proposition::Op::Atom: {
            const AtomId &atom = a.atom();
            if (atom.is_state()) {
                out += "state(" + entity.name(atom.state_id()) + ")";
            } else {
                out += "prop(" + entity.name(atom.property_id()) + "," + entity.name(atom.context_id()) + ")";
            }
            break;
        }
        case Proposition::Op::Not:
            out += '!';
            print_into(out, a.lhs(), entity, 3);
            break;
        case Proposition::Op::And:
            print_into(out, a.lhs(), entity, 2);
            out += " & ";
            print_into(out, a.rhs(), entity, 3);
            break;
        case Proposition::Op::Or:
            print_into(out, a.lhs(), entity, 1);
            out += " | ";
            print_into(out, a.rhs(), entity, 2);
            break;
    }
    if (parens) {
        out += ')';
    }
}

}  // namespace

Proposition parse_proposition(std::string_view text, const Entity &entity) {
    return Parser(text, entity).parse();
}

std::string print(const Proposition &a, const Entity &entity) {
    std::string out;
    print_into(out, a, entity, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

bool eval(const TruthAssignment &w, const Proposition &a, const std::optional<ContextId> &at) {
    switch (a.op()) {
        case Proposition::Op::Atom: {
            AtomId atom = a.atom();
            if (at && !atom.is_state()) {
                atom.context = at->value;
            }
            return w.value(atom);
        }
        case Proposition::Op::Not:
            return !eval(w, a.lhs(), at);
        case Proposition::Op::And:
            return eval(w, a.lhs(), at) && eval(w, a.rhs(), at);
        case Proposition::Op::Or:
            return eval(w, a.lhs(), at) || eval(w, a.rhs(), at);
    }
    return false;
}

Event ext(std::span<const TruthAssignment> universe, const Proposition &a, const std::optional<ContextId> &at) {
    switch (a.op()) {
        case Proposition::Op::Atom: {
            AtomId atom = a.atom();
            if (at && !atom.is_state()) {
                atom.context = at->value;
            }
            Event result(universe.size());
            for (std::size_t i = 0; i < universe.size(); ++i) {
                result[i] = universe[i].value(atom);
            }
            return result;
        }
        case Proposition::Op::Not:
            return ~ext(universe, a.lhs(), at);
        case Proposition::Op::And:
            return ext(universe, a.lhs(), at) & ext(universe, a.rhs(), at);
        case Proposition::Op::Or:
            return ext(universe, a.lhs(), at) | ext(universe, a.rhs(), at);
    }
    return Event(universe.size());
}

void collect(const Proposition &a, auto &&visit) {
    if (a.op() == Proposition::Op::Atom) {
        visit(a.atom());
        return;
    }
    collect(a.lhs(), visit);
    if (a.op() != Proposition::Op::Not) {
        collect(a.rhs(), visit);
    }
}

}  // namespace

bool evaluate(const TruthAssignment &w, const Proposition &a) {
    return eval(w, a, std::nullopt);
}

bool evaluate_at(const TruthAssignment &w, const Proposition &a, ContextId c) {
    return eval(w, a, c);
}

Event extension(std::span<const TruthAssignment> universe, const Proposition &a) {
    return ext(universe, a, std::nullopt);
}

Event extension_at(std::span<const TruthAssignment> universe, const Proposition &a, ContextId c) {
    return ext(universe, a, c);
}

bool entails(std::span<const TruthAssignment> universe, const Proposition &a, const Proposition &b) {
    return extension(universe, a).is_subset_of(extension(universe, b));
}

bool equivalent(std::span<const TruthAssignment> universe, const Proposition &a, const Proposition &b) {
    return extension(universe, a) == extension(universe, b);
}

std::set<PropertyId> properties_of(const Proposition &a) {
    std::set<PropertyId> out;
    collect(a, [&](const AtomId &atom) {
        if (!atom.is_state()) {
            out.insert(atom.property_id());
        }
    });
    return out;
}

std::set<ContextId> contexts_of(const Proposition &a) {
    std::set<ContextId> out;
    collect(a, [&](const AtomId &atom) {
        if (!atom.is_state()) {
            out.insert(atom.context_id());
        }
    });
    return out;
}

bool has_state_atoms(const Proposition &a) {
    bool found = false;
    collect(a, [&](const AtomId &atom) { found = found || atom.is_state(); });
    return found;
}

}  // namespace ctxprob
