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

#include "ctxprob/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ctxprob/measurement.hpp"

namespace ctxprob {

namespace {

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_square(const ComplexMatrix &m, const std::string &what) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(what + " is not square");
    }
    if (m.rows() < 2 || m.rows() > kMaxDimension) {
        throw std::invalid_argument(what + " has dimension " + std::to_string(m.rows()) + ", expected 2.." +
                                    std::to_string(kMaxDimension));
    }
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    return (m + m.adjoint()) / 2.0;
}

void check_same_dimension(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()));
    }
}

// Projector onto the eigenvectors of a Hermitian PSD matrix with eigenvalue ~0.
ComplexMatrix kernel_projector(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();
    ComplexMatrix out = ComplexMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (std::abs(values[k]) <= 1e-9) {
            out += vectors.col(k) * vectors.col(k).adjoint();
        }
    }
    return out;
}

}  // namespace

DensityState::DensityState(std::string id, ComplexMatrix rho) : id_(std::move(id)), rho_(std::move(rho)) {
    check_square(rho_, "density matrix '" + id_ + "'");
    if (max_abs(rho_ - rho_.adjoint()) > kHermitianTolerance) {
        throw std::invalid_argument("density matrix '" + id_ + "' is not Hermitian");
    }
    auto tr = rho_.trace();
    if (std::abs(tr.real() - 1.0) > kCompareTolerance || std::abs(tr.imag()) > kCompareTolerance) {
        throw std::invalid_argument("density matrix '" + id_ + "' does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(rho_), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw std::invalid_argument("density matrix '" + id_ + "' is not positive semidefinite");
    }
}

ProjectorProperty::ProjectorProperty(std::string id, ComplexMatrix proj) : id_(std::move(id)), proj_(std::move(proj)) {
    check_square(proj_, "projector '" + id_ + "'");
    if (max_abs(proj_ - proj_.adjoint()) > kHermitianTolerance) {
        throw std::invalid_argument("projector '" + id_ + "' is not Hermitian");
    }
    if (max_abs(proj_ * proj_ - proj_) > kHermitianTolerance) {
        throw std::invalid_argument("projector '" + id_ + "' is not idempotent");
    }
}

HilbertModel::HilbertModel(int dimension, std::vector<DensityState> states, std::vector<ProjectorProperty> properties)
    : dimension(dimension), states(std::move(states)), properties(std::move(properties)) {
    if (dimension < 2 || dimension > kMaxDimension) {
        throw std::invalid_argument("Hilbert space dimension must be 2.." + std::to_string(kMaxDimension));
    }
    std::set<std::string> ids;
    for (const auto &s : this->states) {
        if (s.dimension() != dimension) {
            throw std::invalid_argument("state '" + s.id() + "' has the wrong dimension");
        }
        if (!ids.insert(s.id()).second) {
            throw std::invalid_argument("duplicate id '" + s.id() + "'");
        }
    }
    for (const auto &p : this->properties) {
        if (p.dimension() != dimension) {
            throw std::invalid_argument("projector '" + p.id() + "' has the wrong dimension");
        }
        if (!ids.insert(p.id()).second) {
            throw std::invalid_argument("duplicate id '" + p.id() + "'");
        }
    }
}

double born(const DensityState &rho, const ProjectorProperty &p) {
    check_same_dimension(rho.rho(), p.proj());
    std::complex<double> tr = (rho.rho() * p.proj()).trace();
    if (std::abs(tr.imag()) > kCompareTolerance || tr.real() < -kCompareTolerance ||
        tr.real() > 1.0 + kCompareTolerance) {
        throw std::domain_error("Born value out of range for '" + rho.id() + "', '" + p.id() + "'");
    }
    return std::clamp(tr.real(), 0.0, 1.0);
}

bool kappa(const ProjectorProperty &e, const ProjectorProperty &f) {
    check_same_dimension(e.proj(), f.proj());
    return max_abs(e.proj() * f.proj() - f.proj() * e.proj()) <= kCompareTolerance;
}

DensityState luders(const DensityState &rho, const ProjectorProperty &p, std::string id) {
    check_same_dimension(rho.rho(), p.proj());
    double tr = (rho.rho() * p.proj()).trace().real();
    if (tr <= kNullOutcomeTolerance) {
        throw NullOutcome("outcome '" + p.id() + "' has probability zero in state '" + rho.id() + "'");
    }
    ComplexMatrix post = p.proj() * rho.rho() * p.proj() / tr;
    return DensityState(id.empty() ? rho.id() + "|" + p.id() : std::move(id), hermitian_part(post));
}

double q_conditional(const DensityState &rho, const ProjectorProperty &e, const ProjectorProperty &f) {
    check_same_dimension(rho.rho(), e.proj());
    check_same_dimension(rho.rho(), f.proj());
    const ComplexMatrix &pe = e.proj();
    const ComplexMatrix &pf = f.proj();
    double den = (pe * rho.rho() * pe).trace().real();
    if (den <= kNullOutcomeTolerance) {
        throw NullOutcome("outcome '" + e.id() + "' has probability zero in state '" + rho.id() + "'");
    }
    double num = (pf * pe * rho.rho() * pe * pf).trace().real();
    return num / den;
}

ComplexMatrix ket_projector(const ComplexVector &psi) {
    double norm = psi.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("zero vector has no projector");
    }
    ComplexVector unit = psi / norm;
    return unit * unit.adjoint();
}

ComplexVector bloch_ket(double theta, double phi) {
    ComplexVector psi(2);
    psi << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
    return psi;
}

std::array<double, 3> bloch_vector(const ComplexMatrix &rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw std::invalid_argument("Bloch vectors are defined for qubits only");
    }
    return {2 * rho(0, 1).real(), -2 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

bool projector_leq(const ComplexMatrix &p, const ComplexMatrix &q, double tol) {
    return max_abs(p * q - p) <= tol;
}

ComplexMatrix projector_meet(const ComplexMatrix &p, const ComplexMatrix &q) {
    // ker((I-P) + (I-Q)) = range(P) ∩ range(Q), both summands being PSD.
    ComplexMatrix id = ComplexMatrix::Identity(p.rows(), p.cols());
    return kernel_projector((id - p) + (id - q));
}

ComplexMatrix projector_join(const ComplexMatrix &p, const ComplexMatrix &q) {
    ComplexMatrix id = ComplexMatrix::Identity(p.rows(), p.cols());
    return id - projector_meet(id - p, id - q);
}

OrthoLattice projector_lattice(std::span<const ProjectorProperty> family) {
    if (family.empty()) {
        throw std::invalid_argument("empty projector family");
    }
    const std::size_t n = family.size();
    const auto dim = family.front().proj().rows();
    auto index_of = [&](const ComplexMatrix &m, const std::string &what) {
        for (std::size_t k = 0; k < n; ++k) {
            if (max_abs(family[k].proj() - m) <= 1e-8) {
                return k;
            }
        }
        throw std::invalid_argument("projector family is not closed: missing " + what);
    };
    OrthoLattice l;
    l.order.assign(n, std::vector<bool>(n));
    l.meet.assign(n, std::vector<std::size_t>(n));
    l.join.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        if (family[a].proj().rows() != dim) {
            throw std::invalid_argument("projector family mixes dimensions");
        }
        l.elements.push_back(family[a].id());
    }
    ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    for (std::size_t a = 0; a < n; ++a) {
        const auto &pa = family[a].proj();
        l.ortho.push_back(index_of(id - pa, "the complement of " + family[a].id()));
        for (std::size_t b = 0; b < n; ++b) {
            const auto &pb = family[b].proj();
            l.order[a][b] = projector_leq(pa, pb, 1e-8);
            l.meet[a][b] = index_of(projector_meet(pa, pb), family[a].id() + " meet " + family[b].id());
            l.join[a][b] = index_of(projector_join(pa, pb), family[a].id() + " join " + family[b].id());
        }
    }
    l.bottom = index_of(ComplexMatrix::Zero(dim, dim), "the zero projector");
    l.top = index_of(id, "the identity");
    return l;
}

StateProbabilityFamily born_family(const HilbertModel &model) {
    StateProbabilityFamily family;
    for (const auto &s : model.states) {
        family.states.push_back(s.id());
    }
    for (const auto &p : model.properties) {
        family.properties.push_back(p.id());
    }
    for (const auto &s : model.states) {
        for (const auto &p : model.properties) {
            family.values.push_back(born(s, p));
        }
    }
    return family;
}

std::vector<FirstKindTransform> luders_transforms(const HilbertModel &model) {
    std::vector<FirstKindTransform> out;
    for (std::uint32_t f = 0; f < model.properties.size(); ++f) {
        FirstKindTransform t{PropertyId{f}, {}};
        bool closed = true;
        for (std::uint32_t s = 0; s < model.states.size() && closed; ++s) {
            if (born(model.states[s], model.properties[f]) <= kCompareTolerance) {
                continue;
            }
            DensityState post = luders(model.states[s], model.properties[f]);
            closed = false;
            for (std::uint32_t k = 0; k < model.states.size(); ++k) {
                if (max_abs(model.states[k].rho() - post.rho()) <= 1e-8) {
                    t.map[StateId{s}] = StateId{k};
                    closed = true;
                    break;
                }
            }
        }
        if (closed) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

ContextualModel build_band_model(std::span<const double> thetas, std::size_t segments,
                                 std::vector<std::string> state_names) {
    if (segments < 1) {
        throw std::invalid_argument("the band needs at least one segment");
    }
    if (thetas.empty()) {
        throw std::invalid_argument("the band model needs at least one angle");
    }
    for (double theta : thetas) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
            throw std::invalid_argument("polar angle " + std::to_string(theta) + " outside [0, pi]");
        }
    }
    if (state_names.empty()) {
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            state_names.push_back("S" + std::to_string(k));
        }
    }
    if (state_names.size() != thetas.size()) {
        throw std::invalid_argument("one state name per angle is required");
    }
    std::vector<std::string> contexts;
    contexts.reserve(segments);
    for (std::size_t i = 1; i <= segments; ++i) {
        contexts.push_back("c" + std::to_string(i));
    }
    auto entity = std::make_shared<const Entity>(std::vector<std::string>{"up"}, state_names, std::move(contexts));

    const PropertyId up{0};
    const double n = double(segments);
    std::vector<TruthAssignment> universe;
    std::vector<Number> weights;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        boost::dynamic_bitset<> bits(entity->atom_count());
        bits.set(entity->atom_index(AtomId::state(StateId{std::uint32_t(k)})));
        // Midpoint (i - 1/2)/n below (1 + cos θ)/2, i.e. 2i - 1 < n (1 + cos θ).
        const double threshold = n * (1.0 + std::cos(thetas[k]));
        for (std::size_t i = 1; i <= segments; ++i) {
            if (double(2 * i - 1) < threshold) {
                bits.set(entity->atom_index(AtomId::property(up, ContextId{std::uint32_t(i - 1)})));
            }
        }
        universe.emplace_back(*entity, std::move(bits));
        weights.push_back(Number::exact(1, std::int64_t(thetas.size())));
    }

    MeasurementProcedure m{"M", {up}, {}, {}};
    for (std::uint32_t i = 0; i < segments; ++i) {
        m.contexts.push_back(ContextId{i});
        m.context_weights.push_back(Number::exact(1, std::int64_t(segments)));
    }
    MeasurementCatalog catalog(*entity, {std::move(m)});
    ProbabilitySpace space(std::move(universe), std::move(weights));
    return ContextualModel(entity, std::move(space), std::move(catalog), std::nullopt, {}, 2.0 / std::sqrt(n));
}

double BornReconstruction::max_gap() const {
    double worst = 0.0;
    for (const auto &r : rows) {
        worst = std::max(worst, r.gap);
    }
    return worst;
}

bool BornReconstruction::within_bound() const {
    return max_gap() <= bound;
}

Report BornReconstruction::report() const {
    Report report{"born_reconstruction", {}};
    CheckResult c{"band_mean_vs_born"};
    c.gap = max_gap();
    c.tolerance = bound;
    c.detail = std::to_string(rows.size()) + " angles, " + std::to_string(segments) + " segments";
    for (const auto &r : rows) {
        std::ostringstream out;
        out.precision(10);
        out << r.state << " theta=" << r.theta << " born=" << r.born << " mean=" << r.mean << " gap=" << r.gap;
        c.witnesses.push_back(out.str());
    }
    if (!within_bound()) {
        c.verdict = Verdict::Fail;
    }
    report.add(std::move(c));
    return report;
}

namespace {

BornReconstruction reconstruct(std::span<const double> thetas, std::span<const double> born_values,
                               std::size_t segments, std::vector<std::string> names) {
    ContextualModel band = build_band_model(thetas, segments, names);
    BornReconstruction out;
    out.segments = segments;
    out.bound = 1.0 / double(segments);
    for (std::uint32_t k = 0; k < thetas.size(); ++k) {
        BornReconstructionRow row;
        row.state = band.entity().name(StateId{k});
        row.theta = thetas[k];
        row.born = born_values[k];
        row.mean = q_probability(band, StateId{k}, PropertyId{0}).to_double();
        row.gap = std::abs(row.mean - row.born);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace

BornReconstruction band_reconstruction(std::span<const double> thetas, std::size_t segments,
                                        std::vector<std::string> state_names) {
    ProjectorProperty north("up", ket_projector(bloch_ket(0.0)));
    std::vector<double> born_values;
    for (double theta : thetas) {
        born_values.push_back(born(DensityState("rho", ket_projector(bloch_ket(theta))), north));
    }
    return reconstruct(thetas, born_values, segments, std::move(state_names));
}

BornReconstruction verify_born_reconstruction(const HilbertModel &model, std::size_t segments) {
    if (model.dimension != 2) {
        throw std::invalid_argument("Born reconstruction needs a qubit model");
    }
    if (model.properties.size() != 1) {
        throw std::invalid_argument("Born reconstruction needs exactly one projector");
    }
    const auto &p = model.properties.front();
    if (std::abs(p.proj().trace().real() - 1.0) > kCompareTolerance) {
        throw std::invalid_argument("Born reconstruction needs a rank-1 projector");
    }
    auto r_p = bloch_vector(p.proj());
    auto dot = [](const std::array<double, 3> &a, const std::array<double, 3> &b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    auto cross = [](const std::array<double, 3> &a, const std::array<double, 3> &b) {
        return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                     a[0] * b[1] - a[1] * b[0]};
    };
    std::optional<std::array<double, 3>> normal;
    std::vector<double> thetas;
    std::vector<double> born_values;
    std::vector<std::string> names;
    for (const auto &s : model.states) {
        double purity = (s.rho() * s.rho()).trace().real();
        if (std::abs(purity - 1.0) > kCompareTolerance) {
            throw std::invalid_argument("state '" + s.id() + "' is not pure");
        }
        auto r_s = bloch_vector(s.rho());
        auto n = cross(r_p, r_s);
        if (std::sqrt(dot(n, n)) > 1e-9) {
            if (!normal) {
                normal = n;
            } else if (std::abs(dot(*normal, r_s)) > 1e-9 * std::sqrt(dot(*normal, *normal))) {
                throw std::invalid_argument("state '" + s.id() + "' is off the projector's great circle");
            }
        }
        thetas.push_back(std::acos(std::clamp(dot(r_p, r_s), -1.0, 1.0)));
        born_values.push_back(born(s, p));
        names.push_back(s.id());
    }
    return reconstruct(thetas, born_values, segments, names);
}

Report check_hilbert_model(const HilbertModel &model) {
    Report report{"quantum", {}};
    const auto family = born_family(model);

    std::optional<OrthoLattice> lattice;
    try {
        lattice = projector_lattice(model.properties);
    } catch (const std::invalid_argument &e) {
        report.add({"projector_lattice", Verdict::Skipped, e.what()});
    }
    if (lattice) {
        report.append(check_ortholattice(*lattice));
        for (std::uint32_t s = 0; s < model.states.size(); ++s) {
            Report one = check_gpm(family.row(StateId{s}), *lattice);
            one.suite = "gpm[" + model.states[s].id() + "]";
            report.append(one);
        }
    }

    CheckResult ordering{"born_family_ordering"};
    ordering.required = false;
    auto pre = build_preorder(family);
    for (std::size_t a = 0; a < model.properties.size(); ++a) {
        for (std::size_t b = 0; b < model.properties.size(); ++b) {
            bool by_order = projector_leq(model.properties[a].proj(), model.properties[b].proj(), 1e-8);
            if (pre.relation[a][b] != by_order) {
                ordering.witnesses.push_back(model.properties[a].id() + " vs " + model.properties[b].id() +
                                             (by_order ? ": range inclusion not detected by the states"
                                                       : ": states order them without range inclusion"));
            }
        }
    }
    ordering.verdict = ordering.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
    ordering.detail = ordering.witnesses.empty() ? "the states order the projectors by range inclusion"
                                                 : "the state set is too small to be ordering";
    report.add(std::move(ordering));

    for (const auto &t : luders_transforms(model)) {
        Report one = validate_first_kind(family, t);
        one.suite = "luders[" + model.properties[t.property.value].id() + "]";
        report.append(one);
    }
    return report;
}

}  // namespace ctxprob
