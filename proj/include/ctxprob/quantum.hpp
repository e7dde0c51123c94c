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

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctxprob/errors.hpp"
#include "ctxprob/lattice.hpp"
#include "ctxprob/model.hpp"
#include "ctxprob/ortholattice.hpp"
#include "ctxprob/report.hpp"

namespace ctxprob {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxDimension = 8;
inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-9;
/// Outcomes with Tr[ρP] at or below this are treated as impossible.
inline constexpr double kNullOutcomeTolerance = 1e-12;

/// A density operator: Hermitian, positive semidefinite, unit trace.
class DensityState {
   public:
    /// Throws std::invalid_argument when rho is not a density operator of
    /// dimension 2..8.
    DensityState(std::string id, ComplexMatrix rho);

    const std::string &id() const {
        return id_;
    }
    const ComplexMatrix &rho() const {
        return rho_;
    }
    int dimension() const {
        return int(rho_.rows());
    }

   private:
    std::string id_;
    ComplexMatrix rho_;
};

/// An orthogonal projector: P² = P = P†.
class ProjectorProperty {
   public:
    ProjectorProperty(std::string id, ComplexMatrix proj);

    const std::string &id() const {
        return id_;
    }
    const ComplexMatrix &proj() const {
        return proj_;
    }
    int dimension() const {
        return int(proj_.rows());
    }

   private:
    std::string id_;
    ComplexMatrix proj_;
};

struct HilbertModel {
    /// Throws std::invalid_argument on dimension mismatch or duplicate ids.
    HilbertModel(int dimension, std::vector<DensityState> states, std::vector<ProjectorProperty> properties);

    int dimension;
    std::vector<DensityState> states;
    std::vector<ProjectorProperty> properties;
};

/// Tr[ρP], clamped to [0, 1] after checking it is real and in range.
double born(const DensityState &rho, const ProjectorProperty &p);

/// [P_E, P_F] = 0 within the comparison tolerance.
bool kappa(const ProjectorProperty &e, const ProjectorProperty &f);

/// PρP / Tr[ρP]. Throws NullOutcome when Tr[ρP] <= kNullOutcomeTolerance.
DensityState luders(const DensityState &rho, const ProjectorProperty &p, std::string id = {});

/// Tr[P_F P_E ρ P_E P_F] / Tr[P_E ρ P_E]. Throws NullOutcome.
double q_conditional(const DensityState &rho, const ProjectorProperty &e, const ProjectorProperty &f);

/// |ψ⟩⟨ψ| for the normalized ψ.
ComplexMatrix ket_projector(const ComplexVector &psi);
/// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
ComplexVector bloch_ket(double theta, double phi = 0.0);
/// Bloch vector (x, y, z) of a qubit operator ρ = (I + r·σ)/2.
std::array<double, 3> bloch_vector(const ComplexMatrix &rho);

/// P <= Q as projectors (range inclusion): PQ = P.
bool projector_leq(const ComplexMatrix &p, const ComplexMatrix &q, double tol = kCompareTolerance);
/// Projector onto range(P) ∩ range(Q).
ComplexMatrix projector_meet(const ComplexMatrix &p, const ComplexMatrix &q);
/// Projector onto the span of range(P) and range(Q).
ComplexMatrix projector_join(const ComplexMatrix &p, const ComplexMatrix &q);

/// The lattice of a family of projectors closed under meet, join and I - P,
/// ordered by range inclusion. Throws std::invalid_argument when the family
/// is not closed.
OrthoLattice projector_lattice(std::span<const ProjectorProperty> family);

/// Q_S(E) = Tr[ρ_S P_E] for every state and property.
StateProbabilityFamily born_family(const HilbertModel &model);

/// Lüders transforms t_F as state maps, for every property F whose Lüders
/// images of all states in S_F are themselves states of the model.
std::vector<FirstKindTransform> luders_transforms(const HilbertModel &model);

/// Elastic-band hidden-measurement model for a spin-1/2 measured along the
/// north pole. One state per angle, one property `up`, one procedure `M` over
/// micro-contexts c1..cn of uniform weight 1/n; in context c_i the state at
/// polar angle θ is found `up` iff the segment midpoint (i - 1/2)/n lies
/// below (1 + cos θ)/2. Weights are exact rationals.
ContextualModel build_band_model(std::span<const double> thetas, std::size_t segments,
                                 std::vector<std::string> state_names = {});

struct BornReconstructionRow {
    std::string state;
    double theta = 0.0;
    double born = 0.0;
    double mean = 0.0;
    double gap = 0.0;
};

struct BornReconstruction {
    std::size_t segments = 0;
    double bound = 0.0;  // 1/n
    std::vector<BornReconstructionRow> rows;

    double max_gap() const;
    bool within_bound() const;
    Report report() const;
};

/// Band-model means against cos²(θ/2) for the given polar angles.
BornReconstruction band_reconstruction(std::span<const double> thetas, std::size_t segments,
                                        std::vector<std::string> state_names = {});

/// For a qubit model with one rank-1 projector and pure states on a common
/// great circle with it: band-model means at the relative angles against
/// Tr[ρP]. Throws std::invalid_argument for anything else.
BornReconstruction verify_born_reconstruction(const HilbertModel &model, std::size_t segments);

/// Checks of a Hilbert model: projector lattice (when the family is closed),
/// generalized probability measure per state, whether the Born family orders
/// the projectors as range inclusion does, and the Lüders first-kind property.
Report check_hilbert_model(const HilbertModel &model);

}  // namespace ctxprob
