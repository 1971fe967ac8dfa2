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

// Pauli-group arithmetic in symplectic form, stabilizer states and graph
// states. States are built densely (2^N amplitudes).

#pragma once

#include <set>
#include <string>
#include <utility>

#include "mpent/core_states.hpp"

namespace mpent {

/// i^phase * sigma_1 x ... x sigma_N with sigma(x, z) = I, X, Z, Y for
/// (0,0), (1,0), (0,1), (1,1). Party a occupies bit (N - a) of the masks,
/// the same convention as register indices.
class PauliString {
  public:
    static constexpr int kMaxQubits = 63;

    PauliString() = default;
    PauliString(int n, std::uint64_t x, std::uint64_t z, int phase = 0)
        : n_(n), x_(x), z_(z), phase_(((phase % 4) + 4) % 4) {
        if (n < 1 || n > kMaxQubits) throw InputError("PauliString: qubit count out of range");
        const std::uint64_t lim = n == 64 ? ~0ULL : ((1ULL << n) - 1);
        if ((x & ~lim) || (z & ~lim)) throw InputError("PauliString: bits outside the register");
    }

    static PauliString identity(int n) { return PauliString(n, 0, 0, 0); }

    /// Single-factor string: `op` in {'I','X','Y','Z'} on party `party`.
    static PauliString single(int n, int party, char op) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(party - 1)] = op;
        return parse(s);
    }

    /// Parses "XZII", "-XZ", "iZZ", "-iXX", "+YI". Leftmost letter acts on party 1.
    static PauliString parse(const std::string& text) {
        std::size_t pos = 0;
        int phase = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') phase = 2;
            ++pos;
        }
        if (pos < text.size() && text[pos] == 'i') {
            phase += 1;
            ++pos;
        }
        const std::string body = text.substr(pos);
        if (body.empty()) throw InputError("PauliString::parse: no Pauli letters in '" + text + "'");
        const int n = static_cast<int>(body.size());
        if (n > kMaxQubits) throw InputError("PauliString::parse: too many qubits");
        std::uint64_t x = 0, z = 0;
        for (int a = 1; a <= n; ++a) {
            const std::uint64_t bit = 1ULL << (n - a);
            switch (body[static_cast<std::size_t>(a - 1)]) {
                case 'I': break;
                case 'X': x |= bit; break;
                case 'Z': z |= bit; break;
                case 'Y': x |= bit; z |= bit; break;
                default: throw InputError("PauliString::parse: bad letter in '" + text + "'");
            }
        }
        return PauliString(n, x, z, phase);
    }

    int n_qubits() const { return n_; }
    std::uint64_t x_bits() const { return x_; }
    std::uint64_t z_bits() const { return z_; }
    int phase_exponent() const { return phase_; }

    char letter(int party) const {
        const std::uint64_t bit = 1ULL << (n_ - party);
        const bool xb = x_ & bit, zb = z_ & bit;
        return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }

    std::string str() const {
        static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
        std::string s = kPrefix[phase_];
        for (int a = 1; a <= n_; ++a) s += letter(a);
        return s;
    }

    bool is_hermitian() const { return phase_ % 2 == 0; }
    bool is_identity_up_to_phase() const { return x_ == 0 && z_ == 0; }

    /// i^{-phase} sigma: the inverse, since every sigma squares to 1.
    PauliString inverse() const { return PauliString(n_, x_, z_, -phase_); }

    /// Dense 2^N x 2^N matrix.
    Mat matrix() const {
        const auto d = static_cast<Eigen::Index>(dim_of(n_));
        Mat m = Mat::Zero(d, d);
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto [r, amp] = act_on_basis(static_cast<std::uint64_t>(c));
            m(static_cast<Eigen::Index>(r), c) = amp;
        }
        return m;
    }

    /// P|c> = amp |r>.
    std::pair<std::uint64_t, cplx> act_on_basis(std::uint64_t c) const {
        const int ny = __builtin_popcountll(x_ & z_);
        int k = (phase_ + ny) % 4;
        if (__builtin_popcountll(c & z_) & 1) k = (k + 2) % 4;
        static const cplx kPow[4] = {1.0, kI, -1.0, -kI};
        return {c ^ x_, kPow[k]};
    }

    Vec apply(const Vec& v) const {
        if (static_cast<std::size_t>(v.size()) != dim_of(n_)) throw InputError("PauliString::apply: size mismatch");
        Vec out = Vec::Zero(v.size());
        for (Eigen::Index c = 0; c < v.size(); ++c) {
            const auto [r, amp] = act_on_basis(static_cast<std::uint64_t>(c));
            out(static_cast<Eigen::Index>(r)) += amp * v(c);
        }
        return out;
    }

    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    int n_ = 1;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

/// Group product a * b with i^k bookkeeping.
inline PauliString pauli_multiply(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) throw InputError("pauli_multiply: length mismatch");
    const int n = a.n_qubits();
    int g = 0;
    for (int q = 0; q < n; ++q) {
        const int x1 = static_cast<int>((a.x_bits() >> q) & 1U), z1 = static_cast<int>((a.z_bits() >> q) & 1U);
        const int x2 = static_cast<int>((b.x_bits() >> q) & 1U), z2 = static_cast<int>((b.z_bits() >> q) & 1U);
        if (x1 && z1) g += z2 - x2;
        else if (x1) g += z2 * (2 * x2 - 1);
        else if (z1) g += x2 * (1 - 2 * z2);
    }
    return PauliString(n, a.x_bits() ^ b.x_bits(), a.z_bits() ^ b.z_bits(), a.phase_exponent() + b.phase_exponent() + g);
}

/// Symplectic form x_a . z_b + z_a . x_b mod 2.
inline int symplectic_product(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) throw InputError("symplectic_product: length mismatch");
    return (__builtin_popcountll(a.x_bits() & b.z_bits()) + __builtin_popcountll(a.z_bits() & b.x_bits())) & 1;
}

inline bool pauli_commutes(const PauliString& a, const PauliString& b) { return symplectic_product(a, b) == 0; }

/// GF(2) rank of the 2N-bit symplectic vectors.
inline int symplectic_rank(const std::vector<PauliString>& ps) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    for (const auto& p : ps) rows.emplace_back(p.x_bits(), p.z_bits());
    int rank = 0;
    for (int col = 0; col < 128 && rank < static_cast<int>(rows.size()); ++col) {
        auto bit_of = [&](const std::pair<std::uint64_t, std::uint64_t>& r) {
            return col < 64 ? (r.first >> col) & 1U : (r.second >> (col - 64)) & 1U;
        };
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows.size() && !bit_of(rows[piv])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != static_cast<std::size_t>(rank) && bit_of(rows[i])) {
                rows[i].first ^= rows[static_cast<std::size_t>(rank)].first;
                rows[i].second ^= rows[static_cast<std::size_t>(rank)].second;
            }
        ++rank;
    }
    return rank;
}

class StabilizerGroup {
  public:
    /// Validates: N generators on N qubits, Hermitian (so -1 is not generated),
    /// pairwise commuting and independent.
    explicit StabilizerGroup(std::vector<PauliString> generators) : gens_(std::move(generators)) {
        if (gens_.empty()) throw InputError("StabilizerGroup: no generators");
        const int n = gens_.front().n_qubits();
        if (static_cast<int>(gens_.size()) != n)
            throw InputError("StabilizerGroup: need exactly N generators for N qubits");
        for (const auto& g : gens_) {
            if (g.n_qubits() != n) throw InputError("StabilizerGroup: generators differ in length");
            if (!g.is_hermitian()) throw InputError("StabilizerGroup: generator " + g.str() + " squares to -1");
        }
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                if (!pauli_commutes(gens_[i], gens_[j]))
                    throw InputError("StabilizerGroup: " + gens_[i].str() + " and " + gens_[j].str() + " anticommute");
        if (symplectic_rank(gens_) != n) throw InputError("StabilizerGroup: generators are not independent");
    }

    static StabilizerGroup parse(const std::vector<std::string>& labels) {
        std::vector<PauliString> g;
        for (const auto& s : labels) g.push_back(PauliString::parse(s));
        return StabilizerGroup(std::move(g));
    }

    int n_qubits() const { return gens_.front().n_qubits(); }
    const std::vector<PauliString>& generators() const { return gens_; }

  private:
    std::vector<PauliString> gens_;
};

/// Same group, generators in GF(2) reduced row-echelon form (products tracked with phases).
inline StabilizerGroup row_reduced(const StabilizerGroup& g) {
    std::vector<PauliString> rows = g.generators();
    const int n = g.n_qubits();
    std::size_t rank = 0;
    for (int col = 0; col < 2 * n && rank < rows.size(); ++col) {
        auto bit_of = [&](const PauliString& p) {
            // X block first (party 1 first), then Z block.
            return col < n ? (p.x_bits() >> (n - 1 - col)) & 1U : (p.z_bits() >> (2 * n - 1 - col)) & 1U;
        };
        std::size_t piv = rank;
        while (piv < rows.size() && !bit_of(rows[piv])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && bit_of(rows[i])) rows[i] = pauli_multiply(rows[i], rows[rank]);
        ++rank;
    }
    return StabilizerGroup(std::move(rows));
}

/// Stabilizer projector prod_i (1 + P_i)/2 applied to v.
inline Vec apply_stabilizer_projector(const StabilizerGroup& g, Vec v) {
    for (const auto& p : g.generators()) v = 0.5 * (v + p.apply(v));
    return v;
}

/// Unique joint +1 eigenstate, global phase fixed so the first non-zero amplitude is real positive.
inline PureState stabilizer_state(const StabilizerGroup& g) {
    const int n = g.n_qubits();
    if (n > 12) throw InputError("stabilizer_state: at most 12 qubits for the dense construction");
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    double trace = 0;
    std::optional<Vec> image;
    for (Eigen::Index c = 0; c < d; ++c) {
        Vec e = Vec::Zero(d);
        e(c) = 1.0;
        const Vec pe = apply_stabilizer_projector(g, std::move(e));
        trace += pe(c).real();
        if (!image && pe.norm() > 1e-6) image = pe;
    }
    if (std::abs(trace - 1.0) > 1e-10 || !image)
        throw NumericalError("stabilizer_state: projector rank is " + std::to_string(trace) + ", expected 1");
    Vec v = image->normalized();
    for (Eigen::Index i = 0; i < d; ++i)
        if (std::abs(v(i)) > 1e-12) {
            v *= std::conj(v(i)) / std::abs(v(i));
            break;
        }
    return PureState(n, v, 1e-10);
}

/// Rank of the stabilizer projector, computed as its trace.
inline double stabilizer_projector_rank(const StabilizerGroup& g) {
    const auto d = static_cast<Eigen::Index>(dim_of(g.n_qubits()));
    double trace = 0;
    for (Eigen::Index c = 0; c < d; ++c) {
        Vec e = Vec::Zero(d);
        e(c) = 1.0;
        trace += apply_stabilizer_projector(g, std::move(e))(c).real();
    }
    return trace;
}

/// Simple undirected graph on vertices 1..n.
class Graph {
  public:
    Graph() = default;
    Graph(int n_vertices, const std::vector<std::pair<int, int>>& edges) : n_(n_vertices) {
        if (n_ < 1 || n_ > PauliString::kMaxQubits) throw InputError("Graph: vertex count out of range");
        for (auto [a, b] : edges) {
            if (a < 1 || a > n_ || b < 1 || b > n_) throw InputError("Graph: edge endpoint out of range");
            if (a == b) throw InputError("Graph: self-loops are not allowed");
            edges_.insert({std::min(a, b), std::max(a, b)});
        }
    }

    int n_vertices() const { return n_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    std::vector<int> neighbors(int a) const {
        std::vector<int> out;
        for (auto [u, v] : edges_) {
            if (u == a) out.push_back(v);
            if (v == a) out.push_back(u);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool connected() const {
        std::vector<int> seen(static_cast<std::size_t>(n_) + 1, 0);
        std::vector<int> stack{1};
        seen[1] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            for (int b : neighbors(a))
                if (!seen[static_cast<std::size_t>(b)]) {
                    seen[static_cast<std::size_t>(b)] = 1;
                    ++count;
                    stack.push_back(b);
                }
        }
        return count == n_;
    }

    static Graph empty(int n) { return Graph(n, {}); }

    static Graph linear(int n) {
        std::vector<std::pair<int, int>> e;
        for (int a = 1; a < n; ++a) e.emplace_back(a, a + 1);
        return Graph(n, e);
    }

    static Graph ring(int n) {
        Graph g = linear(n);
        if (n > 2) g.edges_.insert({1, n});
        return g;
    }

    /// Vertex 1 joined to every other vertex.
    static Graph star(int n) {
        std::vector<std::pair<int, int>> e;
        for (int a = 2; a <= n; ++a) e.emplace_back(1, a);
        return Graph(n, e);
    }

    static Graph complete(int n) {
        std::vector<std::pair<int, int>> e;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) e.emplace_back(a, b);
        return Graph(n, e);
    }

    /// Random spanning tree plus each remaining edge with probability p.
    static Graph random_connected(int n, double p, Rng& rng) {
        std::vector<std::pair<int, int>> e;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int a = 2; a <= n; ++a) {
            std::uniform_int_distribution<int> pick(1, a - 1);
            e.emplace_back(pick(rng), a);
        }
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (u(rng) < p) e.emplace_back(a, b);
        return Graph(n, e);
    }

  private:
    int n_ = 0;
    std::set<std::pair<int, int>> edges_;
};

/// K_a = X_a prod_{b in N_a} Z_b for every vertex a.
inline StabilizerGroup graph_generators(const Graph& g) {
    const int n = g.n_vertices();
    std::vector<PauliString> gens;
    for (int a = 1; a <= n; ++a) {
        std::uint64_t z = 0;
        for (int b : g.neighbors(a)) z |= 1ULL << (n - b);
        gens.emplace_back(n, 1ULL << (n - a), z, 0);
    }
    return StabilizerGroup(std::move(gens));
}

/// Graph state |G>; every K_a is checked to stabilize the result.
inline PureState graph_state(const Graph& g) {
    const StabilizerGroup group = graph_generators(g);
    PureState psi = stabilizer_state(group);
    for (const auto& k : group.generators())
        if ((k.apply(psi.amplitudes()) - psi.amplitudes()).cwiseAbs().maxCoeff() > 1e-10)
            throw NumericalError("graph_state: generator " + k.str() + " does not stabilize the state");
    return psi;
}

inline int schmidt_rank_across_cut(const PureState& psi, const std::vector<int>& side,
                                   double rel_tol = kDefaultTol.rank_relative) {
    if (psi.n_qubits() > 10) throw InputError("schmidt_rank_across_cut: at most 10 qubits");
    detail::check_party_set(side, psi.n_qubits(), "schmidt_rank_across_cut");
    return numerical_rank(amplitude_matrix(psi, side), rel_tol);
}

namespace states {

/// Four-qubit linear cluster state, (1/4) sum_b (-1)^{b1 b2 + b2 b3 + b3 b4} |b>.
inline PureState cluster4() { return graph_state(Graph::linear(4)); }

}  // namespace states

}  // namespace mpent
