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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctxprob/numeric.hpp"
#include "ctxprob/report.hpp"

namespace ctxprob {

/// A finite lattice with orthocomplement, given by explicit tables. The
/// tables are data to be verified by check_ortholattice, not derived.
struct OrthoLattice {
    std::vector<std::string> elements;
    std::vector<std::vector<bool>> order;  // order[a][b]: a <= b
    std::vector<std::vector<std::size_t>> meet;
    std::vector<std::vector<std::size_t>> join;
    std::vector<std::size_t> ortho;
    std::size_t bottom = 0;
    std::size_t top = 0;

    std::size_t size() const {
        return elements.size();
    }
    bool leq(std::size_t a, std::size_t b) const {
        return order[a][b];
    }
    /// a ⊥ b iff a <= b^⊥.
    bool orthogonal(std::size_t a, std::size_t b) const {
        return order[a][ortho[b]];
    }
    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws std::invalid_argument unless every table is total and in range.
    void validate_shape() const;
};

/// Lattice axioms (partial order, bounds, glb/lub), ortho axioms (involution,
/// antitone, complement laws) as required checks; distributivity and
/// orthomodularity as informational checks named "distributive" and
/// "orthomodular".
Report check_ortholattice(const OrthoLattice &lattice);

bool is_distributive(const OrthoLattice &lattice);

/// Every set of pairwise orthogonal, distinct elements with at least two
/// members, ordered by size then lexicographically by index.
std::vector<std::vector<std::size_t>> orthogonal_families(const OrthoLattice &lattice);

/// Generalized probability measure check: values in [0, 1], P(top) = 1 and
/// P(join of family) = sum over the family for every pairwise orthogonal
/// family. The first failing family is reported as the witness.
Report check_gpm(std::span<const double> p, const OrthoLattice &lattice, double eps = kCompareTolerance);

/// The 2^k Boolean lattice of subsets of a k-element set, element i being the
/// subset with bitmask i; elements are named by their member lists, e.g. "{0,2}".
OrthoLattice boolean_lattice(std::size_t k);

}  // namespace ctxprob
