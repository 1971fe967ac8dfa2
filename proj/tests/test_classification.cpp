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

#include <gtest/gtest.h>

#include <set>

#include "mpent/classification.hpp"

using namespace mpent;

namespace {

// Bell numbers from the Bell triangle.
long long bell_number(int n) {
    std::vector<long long> row{1};
    for (int i = 1; i < n; ++i) {
        std::vector<long long> next{row.back()};
        for (long long v : row) next.push_back(next.back() + v);
        row = next;
    }
    return row.back();
}

// Brute-force local ranks: rank of each single-party reduced density matrix.
std::array<int, 3> oracle_local_ranks(const PureState& psi) {
    std::array<int, 3> r{};
    for (int p = 1; p <= 3; ++p) {
        const Mat rho = reduced_state(psi, {p}).matrix();
        const RVec ev = hermitian_eigenvalues(rho);
        r[static_cast<std::size_t>(p - 1)] = (ev.array() > 1e-10).count();
    }
    return r;
}

bool refines(const Split& fine, const Split& coarse) {
    for (const auto& fb : fine.blocks) {
        bool inside = false;
        for (const auto& cb : coarse.blocks) {
            const std::set<int> c(cb.begin(), cb.end());
            inside = inside || std::all_of(fb.begin(), fb.end(), [&](int p) { return c.count(p) > 0; });
        }
        if (!inside) return false;
    }
    return true;
}

PureState w_plus_eps(double eps) {
    Vec v = states::w(3).amplitudes();
    v(7) += eps;
    return PureState::normalized(3, v);
}

}  // namespace

TEST(Slocc, CanonicalStates) {
    EXPECT_EQ(classify_slocc_3q(states::ghz(3)), SloccClass::GHZ);
    EXPECT_EQ(classify_slocc_3q(states::w(3)), SloccClass::W);
    EXPECT_EQ(classify_slocc_3q(tensor_product(states::zero(1), states::bell_psi_plus())), SloccClass::Bisep_1_23);
    EXPECT_EQ(classify_slocc_3q(states::zero(3)), SloccClass::Product);
}

TEST(Slocc, AllBiseparableLabels) {
    // Bell pair on parties (1,3), party 2 in |+>.
    Vec v = Vec::Zero(8);
    v(basis_index({0, 0, 0})) = v(basis_index({0, 1, 0})) = v(basis_index({1, 0, 1})) = v(basis_index({1, 1, 1})) = 0.5;
    EXPECT_EQ(classify_slocc_3q(PureState(3, v)), SloccClass::Bisep_2_13);
    EXPECT_EQ(classify_slocc_3q(tensor_product(states::bell_phi_plus(), states::plus(1))), SloccClass::Bisep_3_12);
}

TEST(Slocc, LocalRanksMatchBruteForce) {
    Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        const PureState psi = haar_random_pure(3, rng);
        const SloccReport r = classify_slocc_3q_report(psi);
        EXPECT_EQ(r.local_ranks, oracle_local_ranks(psi));
    }
}

TEST(Slocc, InvariantUnderInvertibleFilters) {
    Rng rng(2);
    const std::vector<std::pair<PureState, SloccClass>> cases{
        {states::ghz(3), SloccClass::GHZ},
        {states::w(3), SloccClass::W},
        {tensor_product(states::zero(1), states::bell_psi_plus()), SloccClass::Bisep_1_23},
        {states::zero(3), SloccClass::Product}};
    for (const auto& [psi, label] : cases) {
        for (int trial = 0; trial < 100; ++trial) {
            const Vec v = apply_local(psi.amplitudes(), 3, random_local_filters(3, rng));
            EXPECT_EQ(classify_slocc_3q(PureState::normalized(3, v)), label) << to_string(label) << " trial " << trial;
        }
    }
}

TEST(Slocc, WIsInGhzClosure) {
    EXPECT_EQ(classify_slocc_3q(w_plus_eps(1e-3)), SloccClass::GHZ);
}

TEST(Slocc, BoundaryAnnotation) {
    // Tangle of |W> + eps|111> grows like eps; eps = 1e-7 sits near the threshold.
    const SloccReport r = classify_slocc_3q_report(w_plus_eps(3e-8));
    EXPECT_TRUE(r.boundary);
    EXPECT_FALSE(classify_slocc_3q_report(states::ghz(3)).boundary);
}

TEST(TensorRank, ThreeQubitTable) {
    EXPECT_EQ(*tensor_rank_bounds(states::zero(3)).exact, 1);
    EXPECT_EQ(*tensor_rank_bounds(tensor_product(states::zero(1), states::bell_psi_plus())).exact, 2);
    EXPECT_EQ(*tensor_rank_bounds(states::ghz(3)).exact, 2);
    EXPECT_EQ(*tensor_rank_bounds(states::w(3)).exact, 3);
    const TensorRankBounds b = tensor_rank_bounds(states::w(3));
    EXPECT_EQ(b.lower, 3);
    EXPECT_EQ(b.upper, 3);
    EXPECT_EQ(b.schmidt_lower, 2);
}

TEST(TensorRank, FourQubitBounds) {
    const TensorRankBounds g = tensor_rank_bounds(states::ghz(4));
    EXPECT_EQ(g.lower, 2);
    EXPECT_EQ(g.upper, 2);
    const TensorRankBounds p = tensor_rank_bounds(states::plus(4));
    EXPECT_EQ(p.lower, 1);
    EXPECT_EQ(p.upper, 1);
    const TensorRankBounds w = tensor_rank_bounds(states::w(4));
    EXPECT_LE(w.lower, w.upper);
    EXPECT_LE(w.upper, 4);
}

TEST(TensorRank, LowerBoundIsLuInvariant) {
    Rng rng(3);
    const PureState psi = states::w(4);
    const PureState moved = apply_local(psi, random_local_unitaries(4, rng));
    EXPECT_EQ(tensor_rank_bounds(psi).schmidt_lower, tensor_rank_bounds(moved).schmidt_lower);
}

TEST(Splits, ThreePartiesMatchListing) {
    const auto s = enumerate_splits(3);
    std::vector<std::string> labels;
    for (const auto& x : s) labels.push_back(x.label());
    EXPECT_EQ(labels, (std::vector<std::string>{"1-2-3", "12-3", "1-23", "13-2", "123"}));
}

TEST(Splits, CountsAreBellNumbers) {
    for (int n = 1; n <= 8; ++n) {
        const auto s = enumerate_splits(n);
        EXPECT_EQ(static_cast<long long>(s.size()), bell_number(n)) << n;
        std::set<std::string> unique;
        for (const auto& x : s) unique.insert(x.label());
        EXPECT_EQ(unique.size(), s.size());
    }
    EXPECT_EQ(enumerate_splits(1).size(), 1u);
    EXPECT_EQ(enumerate_splits(4).size(), 15u);
    EXPECT_THROW(enumerate_splits(0), InputError);
    EXPECT_THROW(enumerate_splits(9), InputError);
}

TEST(Splits, ParseRoundTrip) {
    for (const auto& s : enumerate_splits(4)) EXPECT_EQ(parse_split(s.label(), 4), s);
    EXPECT_THROW(parse_split("12-2", 3), InputError);
}

TEST(Separability, FullyMixed) {
    const SeparabilityReport r = separability_report(DensityOperator::maximally_mixed(3));
    for (const auto& s : r.splits) EXPECT_EQ(s.verdict, SplitVerdict::ConsistentWithSeparable);
    EXPECT_EQ(r.hierarchy, HierarchyLabel::S_candidate);
}

TEST(Separability, GhzProjector) {
    const SeparabilityReport r = separability_report(DensityOperator(states::ghz(3)));
    for (const auto& s : r.splits)
        if (s.split.size() >= 2) EXPECT_EQ(s.verdict, SplitVerdict::CertifiedInseparable) << s.split.label();
    EXPECT_NEAR(*r.ghz_witness_value, -0.25, 1e-12);
    EXPECT_EQ(r.hierarchy, HierarchyLabel::GHZ_detected);
    EXPECT_FALSE(r.notes.empty());
}

TEST(Separability, WProjectorExcludedFromBiseparable) {
    const SeparabilityReport r = separability_report(DensityOperator(states::w(3)));
    EXPECT_EQ(r.hierarchy, HierarchyLabel::B_excluded);
}

TEST(Separability, BiseparableStatesPassPptOnTheirSplit) {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState a = haar_random_pure(1, rng), bc = haar_random_pure(2, rng);
        const SeparabilityReport r = separability_report(DensityOperator(tensor_product(a, bc)));
        for (const auto& s : r.splits) {
            if (s.split.label() == "1-23" || s.split.label() == "123")
                EXPECT_EQ(s.verdict, SplitVerdict::ConsistentWithSeparable);
            if (s.split.label() == "12-3" || s.split.label() == "13-2" || s.split.label() == "1-2-3")
                EXPECT_EQ(s.verdict, SplitVerdict::CertifiedInseparable);
        }
        const PureState prod = states::product({Vec2(gaussian_vector(2, rng)).normalized(),
                                                Vec2(gaussian_vector(2, rng)).normalized(),
                                                Vec2(gaussian_vector(2, rng)).normalized()});
        for (const auto& s : separability_report(DensityOperator(prod)).splits)
            EXPECT_EQ(s.verdict, SplitVerdict::ConsistentWithSeparable);
    }
}

TEST(Separability, VerdictsMonotoneUnderRefinement) {
    Rng rng(5);
    for (int n : {3, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto d = static_cast<Eigen::Index>(dim_of(n));
            const Mat g = gaussian_matrix(d, 2, rng);
            Mat rho = g * g.adjoint();
            rho /= rho.trace().real();
            const SeparabilityReport r = separability_report(DensityOperator(n, rho));
            for (const auto& coarse : r.splits) {
                if (coarse.verdict != SplitVerdict::CertifiedInseparable) continue;
                for (const auto& fine : r.splits)
                    if (refines(fine.split, coarse.split)) {
                        EXPECT_EQ(fine.verdict, SplitVerdict::CertifiedInseparable);
                        EXPECT_FALSE(fine.certified_via.empty());
                    }
            }
        }
    }
}

TEST(Separability, GhzNoiseWitnessSignChange) {
    // tr[A_GHZ rho(p)] = 3/4 - (p + (1 - p)/8) vanishes at p* = 5/7.
    const double p_star = (0.75 - 0.125) / (1.0 - 0.125);
    EXPECT_NEAR(p_star, 5.0 / 7.0, 1e-15);
    auto value = [](double p) {
        const DensityOperator rho =
            DensityOperator::mixture(p, DensityOperator(states::ghz(3)), DensityOperator::maximally_mixed(3));
        return *separability_report(rho).ghz_witness_value;
    };
    EXPECT_NEAR(value(p_star), 0.0, 1e-10);
    EXPECT_GT(value(p_star - 1e-6), 0.0);
    EXPECT_LT(value(p_star + 1e-6), 0.0);
}

TEST(Separability, RejectsLargeInputs) {
    EXPECT_THROW(separability_report(DensityOperator::maximally_mixed(5)), InputError);
}
