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

#include <gtest/gtest.h>

#include "ctxprob/muprob.hpp"
#include "test_support.hpp"

using namespace ctxprob;
using namespace ctxprob::test;

namespace {

// Four assignments, uniform weight, over E, F at contexts c, d.
struct FourWorlds {
    Entity entity{{"E", "F"}, {"S", "R"}, {"c", "d"}};
    ProbabilitySpace space;
    Proposition ec = Proposition::property(PropertyId{0}, ContextId{0});
    Proposition fd = Proposition::property(PropertyId{1}, ContextId{1});

    static ProbabilitySpace build(const Entity &e) {
        auto ec = AtomId::property(PropertyId{0}, ContextId{0});
        auto fd = AtomId::property(PropertyId{1}, ContextId{1});
        std::vector<TruthAssignment> w;
        w.emplace_back(e, std::vector<AtomId>{AtomId::state(StateId{0}), ec, fd});
        w.emplace_back(e, std::vector<AtomId>{AtomId::state(StateId{0}), ec, fd});
        w.emplace_back(e, std::vector<AtomId>{AtomId::state(StateId{1}), fd});
        w.emplace_back(e, std::vector<AtomId>{AtomId::state(StateId{1}), ec});
        return ProbabilitySpace(std::move(w), std::vector<Number>(4, Number::exact(1, 4)));
    }
    FourWorlds() : space(build(entity)) {
    }
};

Event event_of(std::size_t n, std::initializer_list<std::size_t> members) {
    Event e(n);
    for (auto m : members) {
        e.set(m);
    }
    return e;
}

}  // namespace

TEST(Xi, EmptyUniverseAndThreeOfFour) {
    FourWorlds m;
    EXPECT_EQ(xi(m.space, Event(4)), Number::integer(0));
    EXPECT_EQ(xi(m.space, ~Event(4)), Number::integer(1));
    EXPECT_EQ(xi(m.space, event_of(4, {0, 2, 3})), Number::exact(3, 4));
    EXPECT_THROW(xi(m.space, Event(5)), std::invalid_argument);
}

TEST(Xi, ShapeErrors) {
    Entity e({"E"}, {"S"}, {"c"});
    std::vector<TruthAssignment> w{TruthAssignment(e, std::vector<AtomId>{})};
    EXPECT_THROW(ProbabilitySpace(w, {}), std::invalid_argument);
}

TEST(MuConditional, SelfConditioningIsOne) {
    FourWorlds m;
    EXPECT_EQ(mu_conditional(m.space, m.ec, m.ec), Number::integer(1));
}

TEST(MuConditional, DistinctStatesAreDisjoint) {
    FourWorlds m;
    EXPECT_EQ(mu_conditional(m.space, Proposition::state(StateId{1}), Proposition::state(StateId{0})),
              Number::integer(0));
}

TEST(MuConditional, TwoOfThree) {
    FourWorlds m;
    // fd holds in w0, w1, w2; ec in w0, w1.
    EXPECT_EQ(mu_conditional(m.space, m.ec, m.fd), Number::exact(2, 3));
}

TEST(MuConditional, NullConditionThrows) {
    FourWorlds m;
    EXPECT_THROW(mu_conditional(m.space, m.ec, m.fd & !m.fd), ConditionNull);
}

TEST(MuConditional, IsAProbabilityMeasureInTheTarget) {
    Rng rng(41);
    Entity e({"E", "F"}, {"S"}, {"c", "d"});
    auto atoms = all_atoms(e);
    for (int model = 0; model < 20; ++model) {
        ProbabilitySpace space = random_space(rng, e, 8, true);
        for (int k = 0; k < 30; ++k) {
            Proposition b = random_formula(rng, atoms, 2);
            if (probability(space, b).is_zero()) {
                continue;
            }
            Proposition a = random_formula(rng, atoms, 2);
            Proposition c = random_formula(rng, atoms, 2);
            EXPECT_EQ(mu_conditional(space, a | !a, b), Number::integer(1));
            // Disjoint pieces a & c and a & !c add up to a.
            EXPECT_EQ(mu_conditional(space, a & c, b) + mu_conditional(space, a & !c, b), mu_conditional(space, a, b));
            // Monotone along entailment, invariant under equivalence.
            EXPECT_LE(mu_conditional(space, a & c, b), mu_conditional(space, a | c, b));
            EXPECT_EQ(mu_conditional(space, !!a, b), mu_conditional(space, a, b));
        }
    }
}

TEST(Kolmogorov, WellFormedSpacePasses) {
    FourWorlds m;
    Report r = verify_kolmogorov(m.space);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.at("total_mass").verdict, Verdict::Pass);
}

TEST(Kolmogorov, MassDeficitReported) {
    Entity e({"E"}, {"S"}, {"c"});
    std::vector<TruthAssignment> w(2, TruthAssignment(e, std::vector<AtomId>{AtomId::state(StateId{0})}));
    ProbabilitySpace space(w, {Number(0.45), Number(0.45)});
    Report r = verify_kolmogorov(space);
    EXPECT_FALSE(r.passed());
    const auto &mass = r.at("total_mass");
    EXPECT_EQ(mass.verdict, Verdict::Fail);
    ASSERT_TRUE(mass.gap.has_value());
    EXPECT_NEAR(*mass.gap, 0.1, 1e-12);
    EXPECT_NE(mass.detail.find("deficit"), std::string::npos);
}

TEST(Kolmogorov, NegativeWeightReported) {
    Entity e({"E"}, {"S"}, {"c"});
    std::vector<TruthAssignment> w(2, TruthAssignment(e, std::vector<AtomId>{}));
    ProbabilitySpace space(w, {Number::exact(3, 2), Number::exact(-1, 2)});
    Report r = verify_kolmogorov(space);
    EXPECT_EQ(r.at("non_negativity").verdict, Verdict::Fail);
    EXPECT_EQ(r.at("total_mass").verdict, Verdict::Pass);
}

TEST(Kolmogorov, AdditivityAgainstSubsetEnumeration) {
    Rng rng(43);
    Entity e({"E"}, {"S"}, {"c"});
    ProbabilitySpace space = random_space(rng, e, 6, false);
    EXPECT_TRUE(verify_kolmogorov(space).passed());
    auto brute = [&](unsigned mask) {
        double sum = 0;
        for (unsigned i = 0; i < 6; ++i) {
            if (mask >> i & 1) {
                sum += space.weights()[i].to_double();
            }
        }
        return sum;
    };
    for (unsigned a = 0; a < 64; ++a) {
        EXPECT_NEAR(xi(space, Event(6, a)).to_double(), brute(a), 1e-12);
        for (unsigned b = 0; b < 64; ++b) {
            if ((a & b) == 0) {
                EXPECT_NEAR(xi(space, Event(6, a | b)).to_double(), brute(a) + brute(b), 1e-12);
            }
        }
    }
}

TEST(Bayes, SymmetricAndDisjointCases) {
    FourWorlds m;
    auto [l1, r1] = bayes_identity(m.space, m.ec, m.ec);
    EXPECT_EQ(l1, probability(m.space, m.ec));
    EXPECT_EQ(r1, probability(m.space, m.ec));
    auto [l2, r2] = bayes_identity(m.space, Proposition::state(StateId{0}), Proposition::state(StateId{1}));
    EXPECT_EQ(l2, Number::integer(0));
    EXPECT_EQ(r2, Number::integer(0));
    EXPECT_THROW(bayes_identity(m.space, m.ec & !m.ec, m.fd), ConditionNull);
}

TEST(Bayes, RandomPairsAgree) {
    Rng rng(47);
    Entity five({"E", "F"}, {"S"}, {"c", "d"});
    std::vector<AtomId> atoms = all_atoms(five);
    ASSERT_EQ(atoms.size(), 5u);
    ProbabilitySpace space = random_space(rng, five, 10, false);
    int checked = 0;
    while (checked < 50) {
        Proposition a = random_formula(rng, atoms, 2);
        Proposition b = random_formula(rng, atoms, 2);
        if (probability(space, a).to_double() <= 0 || probability(space, b).to_double() <= 0) {
            continue;
        }
        auto [lhs, rhs] = bayes_identity(space, a, b);
        EXPECT_NEAR(lhs.to_double(), rhs.to_double(), 1e-12);
        ++checked;
    }
}
