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

#include <cmath>
#include <numbers>

#include "ctxprob/model_io.hpp"
#include "ctxprob/quantum.hpp"
#include "test_support.hpp"

using namespace ctxprob;
using namespace ctxprob::test;
using std::numbers::pi;

namespace {

ComplexVector ket(std::complex<double> a, std::complex<double> b) {
    ComplexVector v(2);
    v << a, b;
    return v;
}

ComplexMatrix random_unitary(Rng &rng, int dim) {
    std::normal_distribution<double> g;
    ComplexMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = {g(rng), g(rng)};
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

// Projector onto the columns of u selected by mask.
ComplexMatrix spectral_projector(const ComplexMatrix &u, unsigned mask) {
    ComplexMatrix d = ComplexMatrix::Zero(u.rows(), u.cols());
    for (int k = 0; k < u.rows(); ++k) {
        d(k, k) = (mask >> k & 1) ? 1.0 : 0.0;
    }
    return u * d * u.adjoint();
}

const ProjectorProperty &up() {
    static const ProjectorProperty p("up", ket_projector(ket(1, 0)));
    return p;
}

// Independent count of midpoints (i - 1/2)/n lying below cos^2(theta/2);
// nullopt when a midpoint ties with the target up to rounding.
std::optional<double> midpoint_oracle(double theta, std::size_t n) {
    const double target = std::cos(theta / 2) * std::cos(theta / 2);
    std::size_t count = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double mid = (double(i) - 0.5) / double(n);
        if (std::abs(mid - target) < 1e-12) {
            return std::nullopt;
        }
        count += mid < target;
    }
    return double(count) / double(n);
}

}  // namespace

TEST(Validation, DensityStates) {
    EXPECT_NO_THROW(DensityState("mixed", ComplexMatrix::Identity(3, 3) / 3.0));
    EXPECT_THROW(DensityState("big", ComplexMatrix::Identity(2, 2)), std::invalid_argument);
    ComplexMatrix skew(2, 2);
    skew << 0.5, 0.1, -0.1, 0.5;
    EXPECT_THROW(DensityState("skew", skew), std::invalid_argument);
    ComplexMatrix negative(2, 2);
    negative << 1.5, 0, 0, -0.5;
    EXPECT_THROW(DensityState("neg", negative), std::invalid_argument);
    EXPECT_THROW(DensityState("one", ComplexMatrix::Identity(1, 1)), std::invalid_argument);
    EXPECT_THROW(DensityState("nine", ComplexMatrix::Identity(9, 9) / 9.0), std::invalid_argument);
    EXPECT_THROW(DensityState("rect", ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST(Validation, Projectors) {
    EXPECT_NO_THROW(ProjectorProperty("zero", ComplexMatrix::Zero(2, 2)));
    EXPECT_THROW(ProjectorProperty("half", ComplexMatrix::Identity(2, 2) / 2.0), std::invalid_argument);
    ComplexMatrix nonherm(2, 2);
    nonherm << 1, 1, 0, 0;
    EXPECT_THROW(ProjectorProperty("nh", nonherm), std::invalid_argument);
}

TEST(Validation, HilbertModel) {
    DensityState s("s", ComplexMatrix::Identity(2, 2) / 2.0);
    EXPECT_THROW(HilbertModel(2, {s, s}, {up()}), std::invalid_argument);
    EXPECT_THROW(HilbertModel(3, {s}, {up()}), std::invalid_argument);
    EXPECT_THROW(HilbertModel(2, {DensityState("up", s.rho())}, {up()}), std::invalid_argument);
    EXPECT_THROW(HilbertModel(1, {}, {}), std::invalid_argument);
}

TEST(Born, Examples) {
    const double r = std::sqrt(0.5);
    DensityState zero("zero", ket_projector(ket(1, 0)));
    DensityState plus("plus", ket_projector(ket(r, r)));
    DensityState mixed("mixed", ComplexMatrix::Identity(2, 2) / 2.0);
    ProjectorProperty down("down", ket_projector(ket(0, 1)));
    ProjectorProperty all("all", ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(born(zero, up()), 1.0, 1e-12);
    EXPECT_NEAR(born(zero, down), 0.0, 1e-12);
    EXPECT_NEAR(born(plus, up()), 0.5, 1e-12);
    EXPECT_NEAR(born(mixed, down), 0.5, 1e-12);
    EXPECT_NEAR(born(plus, all), 1.0, 1e-12);
    DensityState three("three", ComplexMatrix::Identity(3, 3) / 3.0);
    EXPECT_THROW(born(three, up()), std::invalid_argument);
}

TEST(Born, AdditiveOverOrthogonalDecompositions) {
    Rng rng(307);
    for (int round = 0; round < 50; ++round) {
        int dim = int(uniform(rng, 2, 5));
        DensityState rho("rho", random_density(rng, dim));
        ComplexMatrix u = random_unitary(rng, dim);
        unsigned full = (1u << dim) - 1;
        unsigned mask = unsigned(uniform(rng, 0, full));
        double a = born(rho, ProjectorProperty("a", spectral_projector(u, mask)));
        double b = born(rho, ProjectorProperty("b", spectral_projector(u, full & ~mask)));
        EXPECT_NEAR(a + b, 1.0, 1e-9);
    }
}

TEST(Kappa, CommutingPairsFromASharedEigenbasis) {
    Rng rng(311);
    for (int round = 0; round < 50; ++round) {
        int dim = int(uniform(rng, 2, 6));
        ComplexMatrix u = random_unitary(rng, dim);
        unsigned full = (1u << dim) - 1;
        ProjectorProperty e("e", spectral_projector(u, unsigned(uniform(rng, 0, full))));
        ProjectorProperty f("f", spectral_projector(u, unsigned(uniform(rng, 0, full))));
        EXPECT_TRUE(kappa(e, f));
        EXPECT_TRUE(kappa(f, e));
        EXPECT_TRUE(kappa(e, e));
    }
}

TEST(Kappa, GenericRankOnePairsDoNotCommute) {
    Rng rng(313);
    const double r = std::sqrt(0.5);
    EXPECT_FALSE(kappa(up(), ProjectorProperty("plus", ket_projector(ket(r, r)))));
    EXPECT_TRUE(kappa(up(), ProjectorProperty("down", ket_projector(ket(0, 1)))));
    for (int round = 0; round < 20; ++round) {
        EXPECT_FALSE(kappa(ProjectorProperty("a", random_rank1(rng, 3)), ProjectorProperty("b", random_rank1(rng, 3))));
    }
}

TEST(Luders, FirstKindAndValidity) {
    Rng rng(317);
    for (int round = 0; round < 100; ++round) {
        int dim = int(uniform(rng, 2, 4));
        DensityState rho("rho", random_density(rng, dim));
        ComplexMatrix u = random_unitary(rng, dim);
        unsigned mask = unsigned(uniform(rng, 1, (1u << dim) - 1));
        ProjectorProperty p("p", spectral_projector(u, mask));
        if (born(rho, p) <= 1e-6) {
            continue;
        }
        DensityState post = luders(rho, p);
        EXPECT_NEAR(born(post, p), 1.0, 1e-9);
        EXPECT_NEAR(post.rho().trace().real(), 1.0, 1e-9);
    }
}

TEST(Luders, Examples) {
    const double r = std::sqrt(0.5);
    DensityState plus("plus", ket_projector(ket(r, r)));
    DensityState post = luders(plus, up(), "after");
    EXPECT_EQ(post.id(), "after");
    EXPECT_LT((post.rho() - ket_projector(ket(1, 0))).cwiseAbs().maxCoeff(), 1e-12);
    DensityState zero("zero", ket_projector(ket(1, 0)));
    ProjectorProperty down("down", ket_projector(ket(0, 1)));
    EXPECT_THROW(luders(zero, down), NullOutcome);
    EXPECT_THROW(q_conditional(zero, down, up()), NullOutcome);
}

TEST(QConditional, TwoRoutesAgree) {
    Rng rng(331);
    int checked = 0;
    while (checked < 200) {
        int dim = int(uniform(rng, 2, 4));
        DensityState rho("rho", random_density(rng, dim));
        ProjectorProperty e("e", uniform(rng, 0, 1) ? random_rank1(rng, dim)
                                                     : spectral_projector(random_unitary(rng, dim), 3));
        ProjectorProperty f("f", random_rank1(rng, dim));
        if (born(rho, e) <= 0.01) {
            continue;
        }
        EXPECT_NEAR(q_conditional(rho, e, f), born(luders(rho, e), f), 1e-9);
        ++checked;
    }
}

TEST(QConditional, ZeroThenPlus) {
    const double r = std::sqrt(0.5);
    DensityState zero("zero", ket_projector(ket(1, 0)));
    ProjectorProperty plus("plus", ket_projector(ket(r, r)));
    EXPECT_NEAR(q_conditional(zero, up(), plus), 0.5, 1e-12);
    EXPECT_NEAR(q_conditional(zero, plus, up()), 0.5, 1e-12);
    EXPECT_NEAR(q_conditional(zero, up(), up()), 1.0, 1e-12);
}

TEST(Bloch, VectorsAndKets) {
    auto z = bloch_vector(ket_projector(bloch_ket(0)));
    EXPECT_NEAR(z[2], 1.0, 1e-12);
    auto x = bloch_vector(ket_projector(bloch_ket(pi / 2)));
    EXPECT_NEAR(x[0], 1.0, 1e-12);
    EXPECT_NEAR(x[2], 0.0, 1e-12);
    auto y = bloch_vector(ket_projector(bloch_ket(pi / 2, pi / 2)));
    EXPECT_NEAR(y[1], 1.0, 1e-12);
    auto mixed = bloch_vector(ComplexMatrix::Identity(2, 2) / 2.0);
    EXPECT_NEAR(std::hypot(mixed[0], mixed[1], mixed[2]), 0.0, 1e-12);
    EXPECT_THROW(bloch_vector(ComplexMatrix::Identity(3, 3)), std::invalid_argument);
    EXPECT_THROW(ket_projector(ComplexVector::Zero(2)), std::invalid_argument);
    for (double theta : {0.0, 0.3, 1.0, 2.0, pi}) {
        EXPECT_NEAR(born(DensityState("s", ket_projector(bloch_ket(theta, 0.7))), up()),
                    std::pow(std::cos(theta / 2), 2), 1e-12);
    }
}

TEST(ProjectorOps, MeetJoinAndOrder) {
    ComplexMatrix p0 = ket_projector(ket(1, 0));
    ComplexMatrix p1 = ket_projector(ket(0, 1));
    ComplexMatrix pp = ket_projector(ket(1, 1));
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    EXPECT_LT(projector_meet(p0, p1).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((projector_join(p0, p1) - id).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT(projector_meet(p0, pp).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((projector_join(p0, pp) - id).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((projector_meet(p0, p0) - p0).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_TRUE(projector_leq(p0, id));
    EXPECT_FALSE(projector_leq(id, p0));
    EXPECT_FALSE(projector_leq(p0, pp));

    // In three dimensions span{e0,e1} and span{e1,e2} meet in span{e1}.
    ComplexMatrix a = ComplexMatrix::Zero(3, 3), b = ComplexMatrix::Zero(3, 3), e1 = ComplexMatrix::Zero(3, 3);
    a(0, 0) = a(1, 1) = 1;
    b(1, 1) = b(2, 2) = 1;
    e1(1, 1) = 1;
    EXPECT_LT((projector_meet(a, b) - e1).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((projector_join(a, b) - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ProjectorOps, LatticeOfQubitFamily) {
    const double r = std::sqrt(0.5);
    std::vector<ProjectorProperty> family{ProjectorProperty("0", ComplexMatrix::Zero(2, 2)), up(),
                                          ProjectorProperty("down", ket_projector(ket(0, 1))),
                                          ProjectorProperty("plus", ket_projector(ket(r, r))),
                                          ProjectorProperty("minus", ket_projector(ket(r, -r))),
                                          ProjectorProperty("I", ComplexMatrix::Identity(2, 2))};
    OrthoLattice l = projector_lattice(family);
    EXPECT_TRUE(check_ortholattice(l).passed());
    EXPECT_FALSE(is_distributive(l));
    EXPECT_EQ(l.ortho[1], 2u);
    EXPECT_EQ(l.join[1][3], 5u);
    EXPECT_EQ(l.bottom, 0u);
    EXPECT_EQ(l.top, 5u);
    family.pop_back();
    EXPECT_THROW(projector_lattice(family), std::invalid_argument);
}

TEST(HilbertChecks, QubitFixturePasses) {
    LoadedModel loaded = load_model_file(fixture("qubit_additivity.json"));
    ASSERT_TRUE(loaded.hilbert.has_value());
    Report r = check_hilbert_model(*loaded.hilbert);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.at("gpm[mixed].orthogonal_additivity").verdict, Verdict::Pass);
    EXPECT_EQ(r.at("ortholattice.orthomodular").verdict, Verdict::Pass);
}

TEST(HilbertChecks, OpenFamilyIsSkippedWithReason) {
    HilbertModel m(2, {DensityState("s", ComplexMatrix::Identity(2, 2) / 2.0)}, {up()});
    Report r = check_hilbert_model(m);
    EXPECT_EQ(r.at("projector_lattice").verdict, Verdict::Skipped);
    EXPECT_NE(r.at("projector_lattice").detail.find("not closed"), std::string::npos);
}

TEST(Band, Examples) {
    std::vector<double> thetas{0.0, pi / 3, pi / 2, pi};
    ContextualModel band = build_band_model(thetas, 10000);
    EXPECT_EQ(q_probability(band, StateId{0}, PropertyId{0}), Number::integer(1));
    EXPECT_NEAR(q_probability(band, StateId{1}, PropertyId{0}).to_double(), 0.75, 1e-4);
    EXPECT_NEAR(q_probability(band, StateId{2}, PropertyId{0}).to_double(), 0.5, 1e-4);
    EXPECT_EQ(q_probability(band, StateId{3}, PropertyId{0}), Number::integer(0));
    EXPECT_NEAR(band.comparison_tolerance(), 0.02, 1e-12);
    EXPECT_THROW(build_band_model(thetas, 0), std::invalid_argument);
    EXPECT_THROW(build_band_model(std::vector<double>{4.0}, 10), std::invalid_argument);
    EXPECT_THROW(build_band_model(std::vector<double>{}, 10), std::invalid_argument);
    EXPECT_THROW(build_band_model(thetas, 10, {"only"}), std::invalid_argument);
}

TEST(Band, ErrorBoundOnAGrid) {
    std::vector<double> thetas;
    for (int k = 0; k <= 24; ++k) {
        thetas.push_back(pi * k / 24);
    }
    for (std::size_t n : {1, 2, 3, 7, 10, 64, 333, 1000}) {
        BornReconstruction r = band_reconstruction(thetas, n);
        EXPECT_TRUE(r.within_bound()) << n;
        EXPECT_DOUBLE_EQ(r.bound, 1.0 / double(n));
        for (const auto &row : r.rows) {
            if (auto expected = midpoint_oracle(row.theta, n)) {
                EXPECT_NEAR(row.mean, *expected, 1e-12) << "n=" << n << " theta=" << row.theta;
            }
            EXPECT_NEAR(row.born, std::pow(std::cos(row.theta / 2), 2), 1e-12);
            EXPECT_LE(row.gap, 0.5 / double(n) + 1e-12);
        }
    }
}

TEST(Band, ReportNamesStates) {
    BornReconstruction r = band_reconstruction(std::vector<double>{0.0, pi / 2}, 100, {"north", "equator"});
    Report rep = r.report();
    EXPECT_TRUE(rep.passed());
    const auto &c = rep.at("band_mean_vs_born");
    ASSERT_EQ(c.witnesses.size(), 2u);
    EXPECT_EQ(c.witnesses[1].rfind("equator theta=", 0), 0u);
}

TEST(BornReconstructionFromModel, StatesOnAGreatCircle) {
    std::vector<DensityState> states;
    for (double theta : {0.0, pi / 3, 2 * pi / 3}) {
        states.emplace_back("t" + std::to_string(states.size()), ket_projector(bloch_ket(theta)));
    }
    // The opposite half of the same great circle (phi = pi) is allowed.
    states.emplace_back("back", ket_projector(bloch_ket(pi / 4, pi)));
    HilbertModel m(2, states, {up()});
    BornReconstruction r = verify_born_reconstruction(m, 1);
    EXPECT_EQ(r.segments, 1u);
    EXPECT_EQ(r.rows.size(), 4u);
    EXPECT_TRUE(r.within_bound());
    EXPECT_NEAR(r.rows[3].theta, pi / 4, 1e-9);
    BornReconstruction fine = verify_born_reconstruction(m, 10000);
    EXPECT_LE(fine.max_gap(), 1e-4);
}

TEST(BornReconstructionFromModel, RejectsUnsupportedModels) {
    DensityState x("x", ket_projector(bloch_ket(pi / 2, 0)));
    DensityState y("y", ket_projector(bloch_ket(pi / 2, pi / 2)));
    EXPECT_THROW(verify_born_reconstruction(HilbertModel(2, {x, y}, {up()}), 10), std::invalid_argument);
    DensityState mixed("m", ComplexMatrix::Identity(2, 2) / 2.0);
    EXPECT_THROW(verify_born_reconstruction(HilbertModel(2, {mixed}, {up()}), 10), std::invalid_argument);
    EXPECT_THROW(verify_born_reconstruction(
                     HilbertModel(2, {x}, {ProjectorProperty("I", ComplexMatrix::Identity(2, 2))}), 10),
                 std::invalid_argument);
    ComplexMatrix p3 = ComplexMatrix::Zero(3, 3);
    p3(0, 0) = 1;
    EXPECT_THROW(verify_born_reconstruction(HilbertModel(3, {DensityState("s", p3)}, {ProjectorProperty("p", p3)}), 10),
                 std::invalid_argument);
}
