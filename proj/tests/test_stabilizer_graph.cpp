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

#include "mpent/classification.hpp"
#include "mpent/stabilizer_graph.hpp"

using namespace mpent;

namespace {

std::vector<PauliString> all_paulis(int n) {
    std::vector<PauliString> out;
    const std::uint64_t lim = 1ULL << n;
    for (std::uint64_t x = 0; x < lim; ++x)
        for (std::uint64_t z = 0; z < lim; ++z)
            for (int ph = 0; ph < 4; ++ph) out.emplace_back(n, x, z, ph);
    return out;
}

PauliString random_pauli(int n, Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> bits(0, (1ULL << n) - 1);
    std::uniform_int_distribution<int> ph(0, 3);
    return PauliString(n, bits(rng), bits(rng), ph(rng));
}

double fidelity_vec(const Vec& a, const Vec& b) { return std::norm(a.dot(b)); }

// Bit b_a of a four-qubit index, party 1 first.
int bit(std::size_t idx, int a) { return party_bit(idx, a, 4); }

// (1/4) prod_a (|0> Z_{a+1} + |1>) with Z_{a+1} acting on the ket to its right.
Vec cluster_literal() {
    Vec v(16);
    for (std::size_t i = 0; i < 16; ++i) {
        int s = 0;
        for (int a = 1; a <= 3; ++a) s += (1 - bit(i, a)) * bit(i, a + 1);
        v(static_cast<Eigen::Index>(i)) = (s % 2 ? -1.0 : 1.0) / 4.0;
    }
    return v;
}

// (1/4) sum_b (-1)^{b1 b2 + b2 b3 + b3 b4} |b>.
Vec cluster_standard() {
    Vec v(16);
    for (std::size_t i = 0; i < 16; ++i) {
        const int s = bit(i, 1) * bit(i, 2) + bit(i, 2) * bit(i, 3) + bit(i, 3) * bit(i, 4);
        v(static_cast<Eigen::Index>(i)) = (s % 2 ? -1.0 : 1.0) / 4.0;
    }
    return v;
}

}  // namespace

TEST(Pauli, XTimesZIsMinusIY) {
    const PauliString p = pauli_multiply(PauliString::parse("X"), PauliString::parse("Z"));
    EXPECT_EQ(p.str(), "-iY");
    EXPECT_EQ(p.phase_exponent(), 3);
    EXPECT_EQ(p.x_bits(), 1u);
    EXPECT_EQ(p.z_bits(), 1u);
    EXPECT_LT(max_abs_entry(Mat(p.matrix() - Mat(pauli_mat::X()) * Mat(pauli_mat::Z()))), 1e-15);
}

TEST(Pauli, CommutationExample) {
    const PauliString a = PauliString::parse("ZZI"), b = PauliString::parse("XXX");
    EXPECT_TRUE(pauli_commutes(a, b));
    const Mat comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    EXPECT_LT(max_abs_entry(comm), 1e-15);
    EXPECT_FALSE(pauli_commutes(PauliString::parse("ZI"), PauliString::parse("XI")));
}

TEST(Pauli, InverseGivesIdentity) {
    for (const auto& p : all_paulis(2)) {
        const PauliString e = pauli_multiply(p, p.inverse());
        EXPECT_EQ(e.str(), "+II");
    }
}

TEST(Pauli, ParseAndPrint) {
    EXPECT_EQ(PauliString::parse("-iXZ").str(), "-iXZ");
    EXPECT_EQ(PauliString::parse("iYY").str(), "+iYY");
    EXPECT_EQ(PauliString::parse("+ZI").str(), "+ZI");
    EXPECT_THROW(PauliString::parse("XQ"), InputError);
    EXPECT_THROW(PauliString::parse("-"), InputError);
    EXPECT_THROW(pauli_multiply(PauliString::parse("X"), PauliString::parse("XX")), InputError);
}

TEST(Pauli, ExhaustiveDenseAgreementUpToTwoQubits) {
    for (int n = 1; n <= 2; ++n) {
        const auto ps = all_paulis(n);
        for (const auto& a : ps)
            for (const auto& b : ps) {
                const Mat ab = a.matrix() * b.matrix();
                EXPECT_LT(max_abs_entry(Mat(pauli_multiply(a, b).matrix() - ab)), 1e-14);
                const bool dense_commute = max_abs_entry(Mat(ab - b.matrix() * a.matrix())) < 1e-14;
                EXPECT_EQ(pauli_commutes(a, b), dense_commute);
            }
    }
}

TEST(Pauli, RandomizedDenseAgreementUpToFourQubits) {
    Rng rng(1);
    for (int n = 3; n <= 4; ++n)
        for (int trial = 0; trial < 200; ++trial) {
            const PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
            const Mat ab = a.matrix() * b.matrix();
            EXPECT_LT(max_abs_entry(Mat(pauli_multiply(a, b).matrix() - ab)), 1e-14);
            EXPECT_EQ(pauli_commutes(a, b), max_abs_entry(Mat(ab - b.matrix() * a.matrix())) < 1e-14);
            const Vec v = gaussian_vector(static_cast<Eigen::Index>(dim_of(n)), rng);
            EXPECT_LT((a.apply(v) - a.matrix() * v).cwiseAbs().maxCoeff(), 1e-13);
        }
}

TEST(Stabilizer, GhzGenerators) {
    const PureState psi = stabilizer_state(StabilizerGroup::parse({"ZZI", "IZZ", "XXX"}));
    EXPECT_GE(fidelity_vec(psi.amplitudes(), states::ghz(3).amplitudes()), 1 - 1e-10);
}

TEST(Stabilizer, SingleQubitZ) {
    const PureState psi = stabilizer_state(StabilizerGroup::parse({"Z"}));
    EXPECT_NEAR(std::abs(psi[0] - cplx(1)), 0.0, 1e-12);
    const PureState minus = stabilizer_state(StabilizerGroup::parse({"-Z"}));
    EXPECT_NEAR(std::abs(minus[1] - cplx(1)), 0.0, 1e-12);
}

TEST(Stabilizer, GlobalPhaseConvention) {
    const PureState psi = stabilizer_state(StabilizerGroup::parse({"YI", "IY"}));
    for (std::size_t i = 0; i < psi.dim(); ++i)
        if (std::abs(psi[i]) > 1e-12) {
            EXPECT_NEAR(psi[i].imag(), 0.0, 1e-12);
            EXPECT_GT(psi[i].real(), 0.0);
            break;
        }
}

TEST(Stabilizer, RejectsInvalidGroups) {
    EXPECT_THROW(StabilizerGroup::parse({"ZI", "XI"}), InputError);       // anticommute
    EXPECT_THROW(StabilizerGroup::parse({"ZZ", "ZZ"}), InputError);       // dependent
    EXPECT_THROW(StabilizerGroup::parse({"ZI"}), InputError);             // too few
    EXPECT_THROW(StabilizerGroup::parse({"iZI", "IZ"}), InputError);      // squares to -1
    EXPECT_THROW(StabilizerGroup::parse({"ZZ", "-ZZ"}), InputError);      // contains -1
}

TEST(Stabilizer, RowReductionKeepsState) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = Graph::random_connected(5, 0.5, rng);
        const StabilizerGroup grp = graph_generators(g);
        const StabilizerGroup rr = row_reduced(grp);
        EXPECT_GE(fidelity_vec(stabilizer_state(grp).amplitudes(), stabilizer_state(rr).amplitudes()), 1 - 1e-10);
    }
}

TEST(Graph, LinearFourGenerators) {
    const StabilizerGroup g = graph_generators(Graph::linear(4));
    std::vector<std::string> s;
    for (const auto& p : g.generators()) s.push_back(p.str());
    EXPECT_EQ(s, (std::vector<std::string>{"+XZII", "+ZXZI", "+IZXZ", "+IIZX"}));
}

TEST(Graph, ClusterAmplitudes) {
    const PureState c = states::cluster4();
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(c[i]), 0.25, 1e-12);
    EXPECT_GE(fidelity_vec(c.amplitudes(), cluster_standard()), 1 - 1e-10);
    const PureState from_gens = stabilizer_state(StabilizerGroup::parse({"XZII", "ZXZI", "IZXZ", "IIZX"}));
    EXPECT_GE(fidelity_vec(from_gens.amplitudes(), c.amplitudes()), 1 - 1e-10);
}

TEST(Graph, LiteralProductExpansionIsZ2Z3Z4Image) {
    const Vec lit = cluster_literal();
    for (Eigen::Index i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(lit(i)), 0.25, 1e-15);
    const Vec moved = PauliString::parse("IZZZ").apply(states::cluster4().amplitudes());
    EXPECT_GE(fidelity_vec(lit, moved), 1 - 1e-12);
    // X1 Z2 stabilizes it directly, the other generators up to sign.
    EXPECT_LT((PauliString::parse("XZII").apply(lit) - lit).norm(), 1e-12);
    EXPECT_LT((PauliString::parse("-ZXZI").apply(lit) - lit).norm(), 1e-12);
}

TEST(Graph, EmptyGraphGivesPlusStates) {
    for (int n = 1; n <= 5; ++n) {
        const StabilizerGroup g = graph_generators(Graph::empty(n));
        for (int a = 1; a <= n; ++a) EXPECT_EQ(g.generators()[static_cast<std::size_t>(a - 1)].str(),
                                               "+" + PauliString::single(n, a, 'X').str().substr(1));
        EXPECT_GE(fidelity_vec(graph_state(Graph::empty(n)).amplitudes(), states::plus(n).amplitudes()), 1 - 1e-12);
    }
}

TEST(Graph, TriangleGenerators) {
    const StabilizerGroup g = graph_generators(Graph::complete(3));
    std::vector<std::string> s;
    for (const auto& p : g.generators()) s.push_back(p.str());
    EXPECT_EQ(s, (std::vector<std::string>{"+XZZ", "+ZXZ", "+ZZX"}));
    for (const auto& a : g.generators())
        for (const auto& b : g.generators())
            EXPECT_LT(max_abs_entry(Mat(a.matrix() * b.matrix() - b.matrix() * a.matrix())), 1e-15);
}

TEST(Graph, StarIsGhzClass) {
    const PureState s = graph_state(Graph::star(3));
    for (int a = 1; a <= 3; ++a) EXPECT_EQ(schmidt_rank_across_cut(s, {a}), 2);
    EXPECT_EQ(classify_slocc_3q(s), SloccClass::GHZ);
}

TEST(Graph, RejectsBadEdges) {
    EXPECT_THROW(Graph(3, {{1, 1}}), InputError);
    EXPECT_THROW(Graph(3, {{1, 4}}), InputError);
    EXPECT_EQ(Graph(3, {{1, 2}, {2, 1}}).edges().size(), 1u);
}

TEST(Graph, RandomConnectedGraphsHaveRankOneProjectors) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 6;
        const Graph g = Graph::random_connected(n, 0.4, rng);
        EXPECT_TRUE(g.connected());
        const StabilizerGroup grp = graph_generators(g);
        EXPECT_NEAR(stabilizer_projector_rank(grp), 1.0, 1e-10);
        const PureState psi = graph_state(g);
        for (const auto& k : grp.generators()) EXPECT_LT((k.apply(psi.amplitudes()) - psi.amplitudes()).norm(), 1e-10);
    }
}

TEST(SchmidtRank, Cuts) {
    EXPECT_EQ(schmidt_rank_across_cut(states::ghz(3), {1}), 2);
    EXPECT_EQ(schmidt_rank_across_cut(states::cluster4(), {1, 2}), 2);
    EXPECT_EQ(schmidt_rank_across_cut(states::cluster4(), {1, 3}), 4);
    EXPECT_EQ(schmidt_rank_across_cut(states::zero(4), {2, 4}), 1);
}
