// Copyright 2026 The mpent Authors
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

// SLOCC classes of three-qubit pure states, tensor-rank bounds, and
// one-sided separability reports for mixed states.

#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>

#include "mpent/concurrence.hpp"
#include "mpent/core_states.hpp"
#include "mpent/witnesses.hpp"

namespace mpent {

enum class SloccClass { Product, Bisep_1_23, Bisep_2_13, Bisep_3_12, W, GHZ };

inline std::string to_string(SloccClass c) {
    switch (c) {
        case SloccClass::Product: return "Product";
        case SloccClass::Bisep_1_23: return "Bisep_1_23";
        case SloccClass::Bisep_2_13: return "Bisep_2_13";
        case SloccClass::Bisep_3_12: return "Bisep_3_12";
        case SloccClass::W: return "W";
        case SloccClass::GHZ: return "GHZ";
    }
    return "?";
}

struct SloccOptions {
    double rank_relative = kDefaultTol.rank_relative;
    double tangle_threshold = 1e-8;
};

struct SloccReport {
    SloccClass label = SloccClass::Product;
    std::array<int, 3> local_ranks{};
    double tangle = 0;
    /// Set when a singular value or the tangle sits within two decades of its threshold.
    bool boundary = false;
};

inline SloccReport classify_slocc_3q_report(const PureState& psi, const SloccOptions& opt = {}) {
    if (psi.n_qubits() != 3) throw InputError("classify_slocc_3q: three-qubit state required");
    SloccReport rep;
    int rank_one = 0;
    int which = 0;
    for (int p = 1; p <= 3; ++p) {
        const RVec s = singular_values(amplitude_matrix(psi, {p}));
        const double ratio = s(0) > 0 ? s(1) / s(0) : 0.0;
        const int r = ratio > opt.rank_relative ? 2 : 1;
        if (ratio > opt.rank_relative * 1e-2 && ratio < opt.rank_relative * 1e2) rep.boundary = true;
        rep.local_ranks[static_cast<std::size_t>(p - 1)] = r;
        if (r == 1) {
            ++rank_one;
            which = p;
        }
    }
    if (rank_one == 3) {
        rep.label = SloccClass::Product;
        return rep;
    }
    if (rank_one >= 1) {
        rep.label = which == 1 ? SloccClass::Bisep_1_23 : which == 2 ? SloccClass::Bisep_2_13 : SloccClass::Bisep_3_12;
        return rep;
    }
    rep.tangle = tangle(psi);
    rep.label = rep.tangle > opt.tangle_threshold ? SloccClass::GHZ : SloccClass::W;
    if (rep.tangle > opt.tangle_threshold * 1e-2 && rep.tangle < opt.tangle_threshold * 1e2) rep.boundary = true;
    return rep;
}

inline SloccClass classify_slocc_3q(const PureState& psi, const SloccOptions& opt = {}) {
    return classify_slocc_3q_report(psi, opt).label;
}

/// Set partitions of {1..n}, more blocks first. Count is the Bell number B_n.
inline std::vector<Split> enumerate_splits(int n) {
    if (n < 1 || n > 8) throw InputError("enumerate_splits: n must be in [1, 8]");
    std::vector<std::vector<int>> rgs_all;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    // Recursive restricted-growth enumeration.
    auto rec = [&](auto&& self, int pos, int max_used) -> void {
        if (pos == n) {
            rgs_all.push_back(rgs);
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            rgs[static_cast<std::size_t>(pos)] = b;
            self(self, pos + 1, std::max(max_used, b));
        }
    };
    rgs[0] = 0;
    rec(rec, 1, 0);
    std::vector<Split> out;
    std::vector<std::pair<std::vector<int>, Split>> keyed;
    for (const auto& g : rgs_all) {
        const int k = *std::max_element(g.begin(), g.end()) + 1;
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
        for (int p = 0; p < n; ++p) blocks[static_cast<std::size_t>(g[static_cast<std::size_t>(p)])].push_back(p + 1);
        keyed.emplace_back(g, Split::make(std::move(blocks), n));
    }
    // Within a block count: reflected-Gray rank of the mask of parties not
    // sharing a block with party 1, then the growth string.
    auto gray_rank = [n](const std::vector<int>& g) {
        unsigned mask = 0;
        for (int p = 1; p < n; ++p) mask = (mask << 1) | (g[static_cast<std::size_t>(p)] != 0 ? 1U : 0U);
        unsigned r = 0;
        for (unsigned m = mask; m != 0; m >>= 1) r ^= m;
        return r;
    };
    std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
        const unsigned ra = gray_rank(a.first), rb = gray_rank(b.first);
        if (ra != rb) return ra < rb;
        return a.first < b.first;
    });
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

inline Split parse_split(const std::string& label, int n) {
    std::vector<std::vector<int>> blocks(1);
    for (char c : label) {
        if (c == '-' || c == '|') {
            blocks.emplace_back();
        } else if (c >= '1' && c <= '9') {
            blocks.back().push_back(c - '0');
        } else if (c != ' ') {
            throw InputError("parse_split: bad character in '" + label + "'");
        }
    }
    return Split::make(std::move(blocks), n);
}

struct TensorRankBounds {
    int lower = 1;
    int upper = 1;
    std::optional<int> exact;
    /// max over bipartitions of the Schmidt rank (always a valid lower bound).
    int schmidt_lower = 1;
    /// The ALS search ran out of budget without beating the trivial bound.
    bool search_exhausted = false;
    double best_residual = 0;
};

struct RankSearchOptions {
    int restarts = 20;
    int iterations = 500;
    double residual = 1e-8;
    std::uint64_t seed = 1;
    double rank_relative = kDefaultTol.rank_relative;
};

namespace detail {

inline std::vector<std::vector<int>> bipartition_sides(int n) {
    // Sides containing party 1, proper subsets only.
    std::vector<std::vector<int>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
        std::vector<int> side{1};
        for (int p = 2; p <= n; ++p)
            if ((mask >> (p - 2)) & 1U) side.push_back(p);
        if (static_cast<int>(side.size()) < n) out.push_back(side);
    }
    return out;
}

/// Best residual of a rank-r CP fit to psi via alternating least squares.
inline double als_fit(const PureState& psi, int r, const RankSearchOptions& opt, Rng& rng) {
    const int n = psi.n_qubits();
    const auto d = static_cast<Eigen::Index>(psi.dim());
    const auto dr = static_cast<Eigen::Index>(dim_of(n - 1));
    std::vector<Mat> unfold;
    for (int p = 1; p <= n; ++p) unfold.push_back(amplitude_matrix(psi, {p}).transpose());
    double best = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < opt.restarts; ++restart) {
        std::vector<Mat> fac;
        for (int p = 0; p < n; ++p) fac.push_back(gaussian_matrix(2, r, rng));
        double res = std::numeric_limits<double>::infinity();
        for (int it = 0; it < opt.iterations; ++it) {
            for (int p = 1; p <= n; ++p) {
                Mat kr(dr, r);
                for (Eigen::Index col = 0; col < dr; ++col) {
                    const auto cu = static_cast<std::size_t>(col);
                    for (Eigen::Index k = 0; k < r; ++k) {
                        cplx prod = 1;
                        int pos = 0;  // position among the other n-1 parties
                        for (int q = 1; q <= n; ++q) {
                            if (q == p) continue;
                            const int bit = static_cast<int>((cu >> (n - 2 - pos)) & 1U);
                            prod *= fac[static_cast<std::size_t>(q - 1)](bit, k);
                            ++pos;
                        }
                        kr(col, k) = prod;
                    }
                }
                Eigen::CompleteOrthogonalDecomposition<Mat> cod(kr);
                fac[static_cast<std::size_t>(p - 1)] = cod.solve(unfold[static_cast<std::size_t>(p - 1)]).transpose();
            }
            Vec approx = Vec::Zero(d);
            for (Eigen::Index k = 0; k < r; ++k) {
                Vec term = fac[0].col(k);
                for (int p = 1; p < n; ++p) term = kron(term, Vec(fac[static_cast<std::size_t>(p)].col(k)));
                approx += term;
            }
            const double now = (psi.amplitudes() - approx).norm();
            const bool stalled = res - now < 1e-14;
            res = now;
            if (res < opt.residual * 1e-2 || (stalled && it > 50)) break;
        }
        best = std::min(best, res);
        if (best < opt.residual) break;
    }
    return best;
}

}  // namespace detail

/// Lower bound from Schmidt ranks; upper bound from an ALS search; for three
/// qubits the exact value comes from the SLOCC class (ALS cannot certify W's
/// rank 3 because W is a limit of rank-2 states).
inline TensorRankBounds tensor_rank_bounds(const PureState& psi, const RankSearchOptions& opt = {}) {
    const int n = psi.n_qubits();
    TensorRankBounds b;
    if (n == 1) {
        b.lower = b.upper = b.schmidt_lower = 1;
        b.exact = 1;
        return b;
    }
    for (const auto& side : detail::bipartition_sides(n))
        b.schmidt_lower = std::max(b.schmidt_lower, numerical_rank(amplitude_matrix(psi, side), opt.rank_relative));
    b.lower = b.schmidt_lower;

    if (n == 3) {
        const SloccClass c = classify_slocc_3q(psi);
        const int exact = c == SloccClass::Product ? 1 : c == SloccClass::W ? 3 : 2;
        b.lower = b.upper = exact;
        b.exact = exact;
        return b;
    }

    // Trivial bounds: 2^{n-1}, and the number of non-zero amplitudes.
    int trivial = static_cast<int>(dim_of(n - 1));
    const double amax = psi.amplitudes().cwiseAbs().maxCoeff();
    int nnz = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i)
        if (std::abs(psi[i]) > opt.rank_relative * amax) ++nnz;
    trivial = std::min(trivial, nnz);
    b.upper = trivial;
    if (b.lower >= trivial) {
        b.lower = b.upper = trivial;
        b.exact = trivial;
        return b;
    }
    if (n > 6) {
        b.search_exhausted = true;
        return b;
    }
    Rng rng(opt.seed);
    bool found = false;
    for (int r = b.lower; r < trivial; ++r) {
        const double res = detail::als_fit(psi, r, opt, rng);
        b.best_residual = res;
        if (res < opt.residual) {
            b.upper = r;
            found = true;
            break;
        }
    }
    if (!found) b.search_exhausted = true;
    if (b.lower == b.upper) b.exact = b.lower;
    return b;
}

// ---------------------------------------------------------------------------
// Separability reports

enum class SplitVerdict { CertifiedInseparable, ConsistentWithSeparable };

inline std::string to_string(SplitVerdict v) {
    return v == SplitVerdict::CertifiedInseparable ? "certified_inseparable" : "consistent_with_separable";
}

enum class HierarchyLabel { S_candidate, B_candidate, B_excluded, GHZ_detected, Inconclusive };

inline std::string to_string(HierarchyLabel h) {
    switch (h) {
        case HierarchyLabel::S_candidate: return "S_candidate";
        case HierarchyLabel::B_candidate: return "B_candidate";
        case HierarchyLabel::B_excluded: return "B_excluded";
        case HierarchyLabel::GHZ_detected: return "GHZ_detected";
        case HierarchyLabel::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct SplitResult {
    Split split;
    SplitVerdict verdict = SplitVerdict::ConsistentWithSeparable;
    /// Smallest partial-transpose eigenvalue over the induced bipartitions
    /// (0 for the trivial one-block split).
    double min_ppt_eigenvalue = 0;
    /// Side of the bipartition whose partial transpose is negative, if any.
    std::vector<int> certifying_side;
    /// Label of the coarsest two-block split that carries the same
    /// certificate; every refinement inherits it.
    std::string certified_via;
};

struct SeparabilityReport {
    int n_qubits = 0;
    std::vector<SplitResult> splits;
    HierarchyLabel hierarchy = HierarchyLabel::Inconclusive;
    std::optional<double> ghz_witness_value;
    std::optional<double> w_witness_value;
    std::vector<std::string> notes;
};

struct SeparabilityOptions {
    double ppt_tol = 1e-10;
};

/// PPT across every bipartition induced by every split, plus the GHZ and W
/// witnesses for three qubits. Verdicts are sufficient conditions only; the
/// report never claims separability.
inline SeparabilityReport separability_report(const DensityOperator& rho, const SeparabilityOptions& opt = {}) {
    const int n = rho.n_qubits();
    if (n > 4) throw InputError("separability_report: at most 4 qubits");
    SeparabilityReport rep;
    rep.n_qubits = n;

    std::map<std::vector<int>, double> ppt_cache;
    auto min_pt = [&](std::vector<int> side) {
        side = detail::sorted_unique(std::move(side));
        if (side.front() != 1) side = detail::complement(side, n);  // PT on either side has the same spectrum
        auto it = ppt_cache.find(side);
        if (it != ppt_cache.end()) return it->second;
        const double v = hermitian_eigenvalues(partial_transpose(rho, side)).minCoeff();
        ppt_cache.emplace(side, v);
        return v;
    };

    bool any_npt = false;
    for (Split& s : enumerate_splits(n)) {
        SplitResult r;
        r.split = s;
        const std::size_t k = s.size();
        for (std::size_t mask = 1; k >= 2 && mask < (std::size_t{1} << (k - 1)); ++mask) {
            std::vector<int> side;
            for (std::size_t bi = 0; bi < k - 1; ++bi)
                if ((mask >> bi) & 1U) side.insert(side.end(), s.blocks[bi].begin(), s.blocks[bi].end());
            const double v = min_pt(side);
            if (v < r.min_ppt_eigenvalue) r.min_ppt_eigenvalue = v;
            if (v < -opt.ppt_tol && r.certifying_side.empty()) {
                r.verdict = SplitVerdict::CertifiedInseparable;
                r.certifying_side = detail::sorted_unique(side);
                Split coarse = Split::make({r.certifying_side, detail::complement(r.certifying_side, n)}, n);
                r.certified_via = coarse.label();
            }
        }
        if (r.verdict == SplitVerdict::CertifiedInseparable) any_npt = true;
        rep.splits.push_back(std::move(r));
    }

    if (n == 3) {
        rep.ghz_witness_value = evaluate(ghz_witness(), rho);
        rep.w_witness_value = evaluate(w_witness(), rho);
        if (*rep.ghz_witness_value < 0) rep.hierarchy = HierarchyLabel::GHZ_detected;
        else if (*rep.w_witness_value < 0) rep.hierarchy = HierarchyLabel::B_excluded;
        else if (!any_npt) rep.hierarchy = HierarchyLabel::S_candidate;
        else rep.hierarchy = HierarchyLabel::B_candidate;
    } else {
        rep.hierarchy = any_npt ? HierarchyLabel::Inconclusive : HierarchyLabel::S_candidate;
    }
    rep.notes.push_back("verdicts are sufficient conditions only: PPT and witness non-negativity never certify separability");
    rep.notes.push_back("membership in a specific bi-separable sub-class is not decided");
    return rep;
}

}  // namespace mpent
