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

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ctxprob {

template <typename Tag>
struct Id {
    std::uint32_t value = 0;
    auto operator<=>(const Id &) const = default;
};

using StateId = Id<struct StateTag>;
using PropertyId = Id<struct PropertyTag>;
using ContextId = Id<struct ContextTag>;

/// An atomic proposition: either "the entity is in state S" or "the entity has
/// property E in micro-context c".
struct AtomId {
    enum class Kind : std::uint8_t { State, Property };

    Kind kind = Kind::State;
    std::uint32_t subject = 0;
    std::uint32_t context = 0;  // unused for state atoms

    static AtomId state(StateId s) {
        return {Kind::State, s.value, 0};
    }
    static AtomId property(PropertyId e, ContextId c) {
        return {Kind::Property, e.value, c.value};
    }

    bool is_state() const {
        return kind == Kind::State;
    }
    StateId state_id() const {
        return {subject};
    }
    PropertyId property_id() const {
        return {subject};
    }
    ContextId context_id() const {
        return {context};
    }

    auto operator<=>(const AtomId &) const = default;
};

/// The triple of properties, states and micro-contexts a theory talks about.
/// Names are identifiers of the surface syntax and must be pairwise distinct
/// across all three sets.
class Entity {
   public:
    Entity(std::vector<std::string> properties, std::vector<std::string> states, std::vector<std::string> contexts);

    std::size_t property_count() const {
        return properties_.size();
    }
    std::size_t state_count() const {
        return states_.size();
    }
    std::size_t context_count() const {
        return contexts_.size();
    }

    const std::string &name(PropertyId e) const;
    const std::string &name(StateId s) const;
    const std::string &name(ContextId c) const;

    std::optional<PropertyId> find_property(std::string_view name) const;
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ContextId> find_context(std::string_view name) const;

    /// |S| + |E|*|C|: every state atom and every (property, context) atom.
    std::size_t atom_count() const;
    /// Throws std::out_of_range for an atom that does not belong to this entity.
    std::size_t atom_index(const AtomId &atom) const;
    AtomId atom_at(std::size_t index) const;
    bool declares(const AtomId &atom) const;

   private:
    enum class NameKind { Property, State, Context };
    std::vector<std::string> properties_;
    std::vector<std::string> states_;
    std::vector<std::string> contexts_;
    std::unordered_map<std::string, std::pair<NameKind, std::uint32_t>> index_;
};

/// Immutable proposition tree. Copies share structure; equality is structural.
class Proposition {
   public:
    enum class Op : std::uint8_t { Atom, Not, And, Or };

    static Proposition atom(const AtomId &a);
    static Proposition state(StateId s) {
        return atom(AtomId::state(s));
    }
    static Proposition property(PropertyId e, ContextId c) {
        return atom(AtomId::property(e, c));
    }

    Proposition operator!() const;
    friend Proposition operator&(const Proposition &a, const Proposition &b);
    friend Proposition operator|(const Proposition &a, const Proposition &b);

    Op op() const;
    /// Requires op() == Op::Atom.
    const AtomId &atom() const;
    /// The operand of Not, or the left operand of And/Or.
    const Proposition &lhs() const;
    /// The right operand of And/Or.
    const Proposition &rhs() const;

    /// Connective nesting depth; atoms have depth 0.
    std::size_t depth() const;
    std::size_t size() const;

    friend bool operator==(const Proposition &a, const Proposition &b);
    friend std::strong_ordering operator<=>(const Proposition &a, const Proposition &b);

   private:
    struct Node;
    explicit Proposition(std::shared_ptr<const Node> node) : node_(std::move(node)) {
    }
    std::shared_ptr<const Node> node_;
};

/// A total map from the atoms of an entity to {t, f}. At most one state atom
/// is true.
class TruthAssignment {
   public:
    TruthAssignment(const Entity &entity, std::span<const AtomId> true_atoms);
    TruthAssignment(const Entity &entity, boost::dynamic_bitset<> bits);

    /// Throws std::out_of_range when the atom lies outside the assignment's domain.
    bool value(const AtomId &atom) const;
    std::optional<StateId> state() const;
    const boost::dynamic_bitset<> &bits() const {
        return bits_;
    }

    friend bool operator==(const TruthAssignment &a, const TruthAssignment &b) = default;

   private:
    std::size_t index_of(const AtomId &atom) const;
    void check_state_exclusivity() const;

    std::uint32_t states_;
    std::uint32_t properties_;
    std::uint32_t contexts_;
    boost::dynamic_bitset<> bits_;
};

/// A subset of a finite universe of truth assignments, by position.
using Event = boost::dynamic_bitset<>;

struct ParseError : std::runtime_error {
    enum class Kind { Syntax, Undeclared, WrongKind };
    ParseError(Kind kind, std::size_t position, const std::string &message);
    Kind kind;
    std::size_t position;  // 0-based byte offset into the input
};

/// Grammar:
///   prop := term { "|" term } ; term := factor { "&" factor } ;
///   factor := "!" factor | "(" prop ")" | atom ;
///   atom := "state(" IDENT ")" | "prop(" IDENT "," IDENT ")"
Proposition parse_proposition(std::string_view text, const Entity &entity);
/// Canonical text with minimal parentheses; parse_proposition inverts it.
std::string print(const Proposition &a, const Entity &entity);

bool evaluate(const TruthAssignment &w, const Proposition &a);
/// Evaluates a with every property atom read at context c (the proposition a(c)).
bool evaluate_at(const TruthAssignment &w, const Proposition &a, ContextId c);

Event extension(std::span<const TruthAssignment> universe, const Proposition &a);
Event extension_at(std::span<const TruthAssignment> universe, const Proposition &a, ContextId c);

bool entails(std::span<const TruthAssignment> universe, const Proposition &a, const Proposition &b);
bool equivalent(std::span<const TruthAssignment> universe, const Proposition &a, const Proposition &b);

std::set<PropertyId> properties_of(const Proposition &a);
std::set<ContextId> contexts_of(const Proposition &a);
bool has_state_atoms(const Proposition &a);

}  // namespace ctxprob
