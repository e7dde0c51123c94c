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

#include "ctxprob/ortholattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ctxprob {

std::optional<std::size_t> OrthoLattice::find(std::string_view name) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

void OrthoLattice::validate_shape() const {
    const std::size_t n = size();
    if (n == 0) {
        throw std::invalid_argument("lattice has no elements");
    }
    auto square = [&](const auto &table, const char *what) {
        if (table.size() != n) {
            throw std::invalid_argument(std::string(what) + " table has wrong size");
        }
        for (const auto &row : table) {
            if (row.size() != n) {
                throw std::invalid_argument(std::string(what) + " table is not total");
            }
        }
    };
    square(order, "order");
    square(meet, "meet");
    square(join, "join");
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (meet[a][b] >= n || join[a][b] >= n) {
                throw std::invalid_argument("meet/join table refers to an unknown element");
            }
        }
    }
    if (ortho.size() != n ||
        std::any_of(ortho.begin(), ortho.end(), [n](std::size_t x) { return x >= n; })) {
        throw std::invalid_argument("orthocomplement table is not total");
    }
    if (bottom >= n || top >= n) {
        throw std::invalid_argument("bottom/top refer to unknown elements");
    }
}

namespace {

std::string pair_name(const OrthoLattice &l, std::size_t a, std::size_t b) {
    return "(" + l.elements[a] + ", " + l.elements[b] + ")";
}

CheckResult check_partial_order(const OrthoLattice &l) {
    CheckResult r{"partial_order"};
    const std::size_t n = l.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (!l.leq(a, a)) {
            r.witnesses.push_back("not reflexive at " + l.elements[a]);
        }
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && l.leq(a, b) && l.leq(b, a)) {
                r.witnesses.push_back("not antisymmetric at " + pair_name(l, a, b));
            }
            for (std::size_t c = 0; c < n; ++c) {
                if (l.leq(a, b) && l.leq(b, c) && !l.leq(a, c)) {
                    r.witnesses.push_back("not transitive at " + l.elements[a] + " <= " + l.elements[b] +
                                          " <= " + l.elements[c]);
                }
            }
        }
    }
    if (!r.witnesses.empty()) {
        r.verdict = Verdict::Fail;
    }
    return r;
}

CheckResult check_bounds(const OrthoLattice &l) {
    CheckResult r{"bounds"};
    for (std::size_t a = 0; a < l.size(); ++a) {
        if (!l.leq(l.bottom, a)) {
            r.witnesses.push_back("bottom is not below " + l.elements[a]);
        }
        if (!l.leq(a, l.top)) {
            r.witnesses.push_back("top is not above " + l.elements[a]);
        }
    }
    if (!r.witnesses.empty()) {
        r.verdict = Verdict::Fail;
    }
    return r;
}

// glb when `lower` is true, lub otherwise.
CheckResult check_bound_table(const OrthoLattice &l, bool lower) {
    CheckResult r{lower ? "meet_is_glb" : "join_is_lub"};
    const auto &table = lower ? l.meet : l.join;
    auto below = [&](std::size_t x, std::size_t y) { return lower ? l.leq(x, y) : l.leq(y, x); };
    const std::size_t n = l.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t m = table[a][b];
            bool ok = below(m, a) && below(m, b);
            for (std::size_t x = 0; ok && x < n; ++x) {
                if (below(x, a) && below(x, b) && !below(x, m)) {
                    ok = false;
                }
            }
            if (!ok) {
                r.witnesses.push_back(pair_name(l, a, b) + " -> " + l.elements[m]);
            }
        }
    }
    if (!r.witnesses.empty()) {
        r.verdict = Verdict::Fail;
    }
    return r;
}

}  // namespace

bool is_distributive(const OrthoLattice &l) {
    const std::size_t n = l.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (l.meet[a][l.join[b][c]] != l.join[l.meet[a][b]][l.meet[a][c]]) {
                    return false;
                }
            }
        }
    }
    return true;
}

Report check_ortholattice(const OrthoLattice &l) {
    l.validate_shape();
    Report report{"ortholattice", {}};
    const std::size_t n = l.size();
    report.add(check_partial_order(l));
    report.add(check_bounds(l));
    report.add(check_bound_table(l, true));
    report.add(check_bound_table(l, false));

    CheckResult involution{"ortho_involution"};
    CheckResult antitone{"ortho_antitone"};
    CheckResult complement{"ortho_complement"};
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t aa = l.ortho[l.ortho[a]];
        if (aa != a) {
            involution.witnesses.push_back(l.elements[a] + "'' = " + l.elements[aa]);
        }
        if (l.meet[a][l.ortho[a]] != l.bottom) {
            complement.witnesses.push_back(l.elements[a] + " meet " + l.elements[l.ortho[a]] + " is not bottom");
        }
        if (l.join[a][l.ortho[a]] != l.top) {
            complement.witnesses.push_back(l.elements[a] + " join " + l.elements[l.ortho[a]] + " is not top");
        }
        for (std::size_t b = 0; b < n; ++b) {
            if (l.leq(a, b) && !l.leq(l.ortho[b], l.ortho[a])) {
                antitone.witnesses.push_back(pair_name(l, a, b));
            }
        }
    }
    for (auto *c : {&involution, &antitone, &complement}) {
        if (!c->witnesses.empty()) {
            c->verdict = Verdict::Fail;
        }
        report.add(*c);
    }

    CheckResult distributive{"distributive"};
    distributive.required = false;
    for (std::size_t a = 0; a < n && distributive.witnesses.empty(); ++a) {
        for (std::size_t b = 0; b < n && distributive.witnesses.empty(); ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (l.meet[a][l.join[b][c]] != l.join[l.meet[a][b]][l.meet[a][c]]) {
                    distributive.witnesses.push_back(l.elements[a] + " meet (" + l.elements[b] + " join " +
                                                     l.elements[c] + ")");
                    break;
                }
            }
        }
    }
    distributive.verdict = distributive.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
    distributive.detail = distributive.witnesses.empty() ? "Boolean" : "not Boolean";
    report.add(distributive);

    CheckResult orthomodular{"orthomodular"};
    orthomodular.required = false;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (l.leq(a, b) && l.join[a][l.meet[l.ortho[a]][b]] != b) {
                orthomodular.witnesses.push_back(pair_name(l, a, b));
            }
        }
    }
    orthomodular.verdict = orthomodular.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
    report.add(orthomodular);
    return report;
}

std::vector<std::vector<std::size_t>> orthogonal_families(const OrthoLattice &l) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
        for (std::size_t x = from; x < l.size(); ++x) {
            bool fits = std::all_of(current.begin(), current.end(),
                                    [&](std::size_t y) { return l.orthogonal(x, y) && l.orthogonal(y, x); });
            if (!fits) {
                continue;
            }
            current.push_back(x);
            if (current.size() >= 2) {
                out.push_back(current);
            }
            grow(x + 1);
            current.pop_back();
        }
    };
    grow(0);
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

Report check_gpm(std::span<const double> p, const OrthoLattice &l, double eps) {
    l.validate_shape();
    if (p.size() != l.size()) {
        throw std::invalid_argument("probability map must be total on the lattice");
    }
    Report report{"gpm", {}};

    CheckResult range{"range"};
    for (std::size_t a = 0; a < l.size(); ++a) {
        if (p[a] < -eps || p[a] > 1 + eps) {
            range.witnesses.push_back(l.elements[a] + " = " + std::to_string(p[a]));
        }
    }
    range.verdict = range.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
    report.add(range);

    CheckResult unit{"unit_top"};
    unit.tolerance = eps;
    unit.gap = std::abs(p[l.top] - 1.0);
    if (*unit.gap > eps) {
        unit.verdict = Verdict::Fail;
        unit.witnesses.push_back(l.elements[l.top] + " = " + std::to_string(p[l.top]));
    }
    report.add(unit);

    CheckResult additivity{"orthogonal_additivity"};
    additivity.tolerance = eps;
    double worst = 0.0;
    std::vector<std::vector<std::size_t>> families;
    if (l.size() <= 32) {
        families = orthogonal_families(l);
    } else {
        additivity.detail = "lattice larger than 32 elements: pairs only; ";
        for (std::size_t a = 0; a < l.size(); ++a) {
            for (std::size_t b = a + 1; b < l.size(); ++b) {
                if (l.orthogonal(a, b)) {
                    families.push_back({a, b});
                }
            }
        }
    }
    for (const auto &family : families) {
        std::size_t joined = family.front();
        double sum = 0.0;
        for (std::size_t x : family) {
            joined = l.join[joined][x];
            sum += p[x];
        }
        double gap = std::abs(p[joined] - sum);
        worst = std::max(worst, gap);
        if (gap > eps && additivity.witnesses.size() < 5) {
            std::ostringstream out;
            out << "{";
            for (std::size_t i = 0; i < family.size(); ++i) {
                out << (i ? ", " : "") << l.elements[family[i]];
            }
            out << "}: P(join) = " << p[joined] << ", sum = " << sum;
            additivity.witnesses.push_back(out.str());
            additivity.verdict = Verdict::Fail;
        }
    }
    additivity.gap = worst;
    additivity.detail += std::to_string(families.size()) + " orthogonal families";
    report.add(additivity);
    return report;
}

OrthoLattice boolean_lattice(std::size_t k) {
    if (k > 5) {
        throw std::invalid_argument("boolean_lattice supports at most 5 generators");
    }
    const std::size_t n = std::size_t(1) << k;
    OrthoLattice l;
    l.order.assign(n, std::vector<bool>(n));
    l.meet.assign(n, std::vector<std::size_t>(n));
    l.join.assign(n, std::vector<std::size_t>(n));
    l.ortho.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::string name = "{";
        bool first = true;
        for (std::size_t bit = 0; bit < k; ++bit) {
            if (a >> bit & 1) {
                name += (first ? "" : ",") + std::to_string(bit);
                first = false;
            }
        }
        l.elements.push_back(name + "}");
        l.ortho[a] = (n - 1) & ~a;
        for (std::size_t b = 0; b < n; ++b) {
            l.order[a][b] = (a & b) == a;
            l.meet[a][b] = a & b;
            l.join[a][b] = a | b;
        }
    }
    l.bottom = 0;
    l.top = n - 1;
    return l;
}

}  // namespace ctxprob
