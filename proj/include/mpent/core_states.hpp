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

// Qubit-register states and the linear algebra every other module builds on.
//
// Index convention: in an N-qubit register the basis label |b1,...,bN> lives at
// index sum_a b_a 2^(N-a); party 1 is the most significant bit. Parties are
// always named 1..N in this API.

#pragma once

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mpent/linalg.hpp"

namespace mpent {

class PureState {
  public:
    PureState() = default;

    /// Validating constructor: rejects wrong length or a norm off by more than `tol`.
    PureState(int n_qubits, Vec amplitudes, double tol = kDefaultTol.norm)
        : n_(n_qubits), amps_(std::move(amplitudes)) {
        if (n_ < 1 || n_ > 30) throw InputError("PureState: n_qubits must be in [1, 30]");
        if (static_cast<std::size_t>(amps_.size()) != dim_of(n_))
            throw InputError("PureState: amplitude vector length must be 2^n_qubits");
        const double nrm = amps_.norm();
        if (std::abs(nrm - 1.0) > tol)
            throw InputError("PureState: amplitudes are not normalized (norm = " +
                             std::to_string(nrm) + ")");
        amps_ /= nrm;
    }

    /// Normalizes `v` (which must be non-zero) into a state.
    static PureState normalized(int n_qubits, const Vec& v) {
        const double nrm = v.norm();
        if (!(nrm > 0)) throw InputError("PureState: cannot normalize the zero vector");
        return PureState(n_qubits, v / nrm, 1.0);
    }

    static PureState basis(int n_qubits, std::size_t index) {
        Vec v = Vec::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)));
        if (index >= dim_of(n_qubits)) throw InputError("PureState::basis: index out of range");
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(n_qubits, std::move(v));
    }

    int n_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Vec& amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    Mat projector() const { return amps_ * amps_.adjoint(); }

  private:
    int n_ = 0;
    Vec amps_;
};

class DensityOperator {
  public:
    DensityOperator() = default;

    /// Validates Hermiticity, positivity and unit trace against `tol`.
    DensityOperator(int n_qubits, Mat matrix, const Tolerances& tol = kDefaultTol)
        : n_(n_qubits), m_(std::move(matrix)) {
        if (n_ < 1 || n_ > 14) throw InputError("DensityOperator: n_qubits must be in [1, 14]");
        const auto d = static_cast<Eigen::Index>(dim_of(n_));
        if (m_.rows() != d || m_.cols() != d)
            throw InputError("DensityOperator: matrix must be 2^n x 2^n");
        if (hermiticity_defect(m_) > tol.hermitian)
            throw InputError("DensityOperator: matrix is not Hermitian");
        m_ = 0.5 * (m_ + m_.adjoint());
        const double tr = m_.trace().real();
        if (std::abs(tr - 1.0) > tol.trace)
            throw InputError("DensityOperator: trace is " + std::to_string(tr) + ", expected 1");
        const double lmin = hermitian_eigenvalues(m_).minCoeff();
        if (lmin < -tol.positivity)
            throw InputError("DensityOperator: negative eigenvalue " + std::to_string(lmin));
    }

    explicit DensityOperator(const PureState& psi) : n_(psi.n_qubits()), m_(psi.projector()) {}

    static DensityOperator maximally_mixed(int n_qubits) {
        const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
        return DensityOperator(n_qubits, Mat::Identity(d, d) / static_cast<double>(d));
    }

    /// p * a + (1 - p) * b
    static DensityOperator mixture(double p, const DensityOperator& a, const DensityOperator& b) {
        if (a.n_qubits() != b.n_qubits()) throw InputError("mixture: qubit count mismatch");
        if (p < 0.0 || p > 1.0) throw InputError("mixture: weight outside [0, 1]");
        Tolerances loose;
        loose.hermitian = loose.trace = 1e-10;
        return DensityOperator(a.n_qubits(), p * a.matrix() + (1.0 - p) * b.matrix(), loose);
    }

    int n_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Mat& matrix() const { return m_; }

    double purity() const { return (m_ * m_).trace().real(); }

  private:
    int n_ = 0;
    Mat m_;
};

/// A set partition of the parties {1..N}. Blocks are sorted internally and
/// ordered by their smallest element.
struct Split {
    std::vector<std::vector<int>> blocks;

    static Split make(std::vector<std::vector<int>> blocks, int n) {
        std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
        for (auto& b : blocks) {
            if (b.empty()) throw InputError("Split: empty block");
            std::sort(b.begin(), b.end());
            for (int p : b) {
                if (p < 1 || p > n) throw InputError("Split: party out of range");
                if (seen[static_cast<std::size_t>(p)]++) throw InputError("Split: blocks overlap");
            }
        }
        for (int p = 1; p <= n; ++p)
            if (!seen[static_cast<std::size_t>(p)]) throw InputError("Split: blocks do not cover all parties");
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        return Split{std::move(blocks)};
    }

    int n_parties() const {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        return n;
    }

    std::size_t size() const { return blocks.size(); }

    /// "1-23" style label. Parties above 9 are wrapped in brackets.
    std::string label() const {
        std::string out;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) out += '-';
            for (int p : blocks[i]) out += p <= 9 ? std::to_string(p) : "[" + std::to_string(p) + "]";
        }
        return out;
    }

    friend bool operator==(const Split&, const Split&) = default;
};

struct MeasurementRecord {
    int outcome_label = 0;
    double probability = 0.0;
    /// Absent for a zero-probability branch.
    std::optional<PureState> post_state;
    bool zero_probability = false;
};

namespace detail {

inline void check_party_set(const std::vector<int>& parties, int n, const char* what) {
    if (parties.empty()) throw InputError(std::string(what) + ": party set is empty");
    std::set<int> s(parties.begin(), parties.end());
    if (s.size() != parties.size()) throw InputError(std::string(what) + ": repeated party");
    for (int p : parties)
        if (p < 1 || p > n) throw InputError(std::string(what) + ": party out of range");
}

inline std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline std::vector<int> complement(const std::vector<int>& parties, int n) {
    std::vector<int> out;
    for (int p = 1; p <= n; ++p)
        if (std::find(parties.begin(), parties.end(), p) == parties.end()) out.push_back(p);
    return out;
}

/// Table full[a][b] = register index whose `first` parties spell a and whose
/// `second` parties spell b (each in ascending party order, MSB first).
inline std::vector<std::vector<std::size_t>> index_table(const std::vector<int>& first,
                                                         const std::vector<int>& second, int n) {
    const std::size_t da = dim_of(static_cast<int>(first.size()));
    const std::size_t db = dim_of(static_cast<int>(second.size()));
    std::vector<std::vector<std::size_t>> full(da, std::vector<std::size_t>(db, 0));
    for (std::size_t a = 0; a < da; ++a) {
        std::size_t base = 0;
        for (std::size_t k = 0; k < first.size(); ++k)
            if ((a >> (first.size() - 1 - k)) & 1U) base |= party_mask(first[k], n);
        for (std::size_t b = 0; b < db; ++b) {
            std::size_t idx = base;
            for (std::size_t k = 0; k < second.size(); ++k)
                if ((b >> (second.size() - 1 - k)) & 1U) idx |= party_mask(second[k], n);
            full[a][b] = idx;
        }
    }
    return full;
}

}  // namespace detail

/// Reshape amplitudes into a matrix whose rows are indexed by the `rows`
/// parties and columns by the remaining parties (both in ascending order).
inline Mat amplitude_matrix(const PureState& psi, std::vector<int> rows) {
    const int n = psi.n_qubits();
    rows = detail::sorted_unique(std::move(rows));
    for (int p : rows)
        if (p < 1 || p > n) throw InputError("amplitude_matrix: party out of range");
    const std::vector<int> cols = detail::complement(rows, n);
    const auto table = detail::index_table(rows, cols, n);
    Mat m(static_cast<Eigen::Index>(table.size()), static_cast<Eigen::Index>(table.front().size()));
    for (std::size_t a = 0; a < table.size(); ++a)
        for (std::size_t b = 0; b < table[a].size(); ++b)
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = psi[table[a][b]];
    return m;
}

inline PureState tensor_product(const PureState& a, const PureState& b) {
    return PureState(a.n_qubits() + b.n_qubits(), kron(a.amplitudes(), b.amplitudes()), 1e-10);
}

inline DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
    Tolerances loose;
    loose.hermitian = loose.trace = 1e-10;
    return DensityOperator(a.n_qubits() + b.n_qubits(), kron(a.matrix(), b.matrix()), loose);
}

/// Reduced density operator on the `keep` parties (relabelled 1..|keep| in ascending order).
inline DensityOperator partial_trace(const DensityOperator& rho, std::vector<int> keep) {
    const int n = rho.n_qubits();
    detail::check_party_set(keep, n, "partial_trace");
    keep = detail::sorted_unique(std::move(keep));
    const std::vector<int> traced = detail::complement(keep, n);
    const auto table = detail::index_table(keep, traced, n);
    const auto dk = static_cast<Eigen::Index>(table.size());
    Mat out = Mat::Zero(dk, dk);
    const Mat& m = rho.matrix();
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dk; ++j) {
            cplx acc = 0;
            const auto& ri = table[static_cast<std::size_t>(i)];
            const auto& rj = table[static_cast<std::size_t>(j)];
            for (std::size_t t = 0; t < ri.size(); ++t)
                acc += m(static_cast<Eigen::Index>(ri[t]), static_cast<Eigen::Index>(rj[t]));
            out(i, j) = acc;
        }
    Tolerances loose;
    loose.hermitian = loose.trace = 1e-10;
    return DensityOperator(static_cast<int>(keep.size()), std::move(out), loose);
}

/// Reduced state of a pure state; cheaper than forming the full projector.
inline DensityOperator reduced_state(const PureState& psi, std::vector<int> keep) {
    detail::check_party_set(keep, psi.n_qubits(), "reduced_state");
    const Mat m = amplitude_matrix(psi, std::move(keep));
    Tolerances loose;
    loose.hermitian = loose.trace = 1e-10;
    return DensityOperator(static_cast<int>(std::log2(static_cast<double>(m.rows())) + 0.5),
                           m * m.adjoint(), loose);
}

/// Transpose on the tensor factors of `subset`. The subset must be non-empty and proper.
inline Mat partial_transpose(const DensityOperator& rho, const std::vector<int>& subset) {
    const int n = rho.n_qubits();
    detail::check_party_set(subset, n, "partial_transpose");
    if (static_cast<int>(subset.size()) == n)
        throw InputError("partial_transpose: subset must be a proper subset of the parties");
    std::size_t mask = 0;
    for (int p : subset) mask |= party_mask(p, n);
    const Mat& m = rho.matrix();
    const auto d = m.rows();
    Mat out(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto ru = static_cast<std::size_t>(r);
            const auto cu = static_cast<std::size_t>(c);
            const std::size_t r2 = (ru & ~mask) | (cu & mask);
            const std::size_t c2 = (cu & ~mask) | (ru & mask);
            out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) = m(r, c);
        }
    return out;
}

/// -sum lambda log2 lambda over the spectrum; 0 log 0 = 0.
inline double von_neumann_entropy(const Mat& rho) {
    const RVec ev = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) s -= xlog2x(ev(i));
    return std::max(0.0, s);
}

inline double von_neumann_entropy(const DensityOperator& rho) {
    return std::min(von_neumann_entropy(rho.matrix()), static_cast<double>(rho.n_qubits()));
}

/// Sum of singular values.
inline double trace_norm(const Mat& a) {
    if (a.rows() != a.cols()) throw InputError("trace_norm: matrix must be square");
    return singular_values(a).sum();
}

inline double fidelity_pure(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw InputError("fidelity_pure: dimension mismatch");
    return std::min(1.0, std::norm(a.amplitudes().dot(b.amplitudes())));
}

/// Unnormalized (A_1 x ... x A_N)|psi>; `ops` has one 2x2 operator per party.
inline Vec apply_local(const Vec& amps, int n, const std::vector<Mat2>& ops) {
    if (static_cast<int>(ops.size()) != n) throw InputError("apply_local: need one operator per party");
    Vec v = amps;
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    for (int p = 1; p <= n; ++p) {
        const std::size_t mask = party_mask(p, n);
        const Mat2& u = ops[static_cast<std::size_t>(p - 1)];
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            if (iu & mask) continue;
            const auto j = static_cast<Eigen::Index>(iu | mask);
            const cplx a0 = v(i), a1 = v(j);
            v(i) = u(0, 0) * a0 + u(0, 1) * a1;
            v(j) = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return v;
}

/// Local filtering |psi> -> (A_1 x ... x A_N)|psi>, renormalized.
inline PureState apply_local(const PureState& psi, const std::vector<Mat2>& ops) {
    return PureState::normalized(psi.n_qubits(), apply_local(psi.amplitudes(), psi.n_qubits(), ops));
}

/// Measure one qubit in the orthonormal basis {basis.first, basis.second}.
/// Outcome 0 corresponds to basis.first. Post states live on the remaining
/// N-1 qubits (for N = 1 they are omitted).
inline std::vector<MeasurementRecord> projective_measure_qubit(const PureState& psi, int qubit,
                                                               const std::pair<Vec2, Vec2>& basis,
                                                               double ortho_tol = 1e-10) {
    const int n = psi.n_qubits();
    if (qubit < 1 || qubit > n) throw InputError("projective_measure_qubit: qubit out of range");
    const Vec2& e0 = basis.first;
    const Vec2& e1 = basis.second;
    if (std::abs(e0.norm() - 1.0) > ortho_tol || std::abs(e1.norm() - 1.0) > ortho_tol ||
        std::abs(e0.dot(e1)) > ortho_tol)
        throw InputError("projective_measure_qubit: basis is not orthonormal");
    const Mat rows = amplitude_matrix(psi, {qubit});  // 2 x 2^(n-1)
    std::vector<MeasurementRecord> out;
    for (int k = 0; k < 2; ++k) {
        const Vec2& e = k == 0 ? e0 : e1;
        Vec branch = (e.adjoint() * rows).transpose();
        MeasurementRecord rec;
        rec.outcome_label = k;
        rec.probability = branch.squaredNorm();
        if (rec.probability <= 1e-14) {
            rec.zero_probability = true;
        } else if (n > 1) {
            rec.post_state = PureState::normalized(n - 1, branch);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::pair<Vec2, Vec2> z_basis() { return {Vec2(1, 0), Vec2(0, 1)}; }

inline std::pair<Vec2, Vec2> x_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    return {Vec2(h, h), Vec2(h, -h)};
}

/// Basis {|n>, |n_perp>} for the Bloch direction (theta, phi).
inline std::pair<Vec2, Vec2> bloch_basis(double theta, double phi) {
    const cplx ph = std::polar(1.0, phi);
    Vec2 up(std::cos(theta / 2), ph * std::sin(theta / 2));
    Vec2 down(-std::conj(ph) * std::sin(theta / 2), std::cos(theta / 2));
    return {up, down};
}

inline PureState haar_random_pure(int n_qubits, Rng& rng) {
    return PureState::normalized(n_qubits, gaussian_vector(static_cast<Eigen::Index>(dim_of(n_qubits)), rng));
}

inline PureState haar_random_pure(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_pure(n_qubits, rng);
}

inline std::vector<Mat2> random_local_unitaries(int n, Rng& rng) {
    std::vector<Mat2> us;
    for (int p = 0; p < n; ++p) us.emplace_back(haar_unitary(2, rng));
    return us;
}

/// Random invertible single-qubit filters with condition number bounded by `max_cond`.
inline std::vector<Mat2> random_local_filters(int n, Rng& rng, double max_cond = 20.0) {
    std::vector<Mat2> out;
    while (static_cast<int>(out.size()) < n) {
        Mat2 a = gaussian_matrix(2, 2, rng);
        const RVec s = singular_values(a);
        if (s(1) > 0 && s(0) / s(1) < max_cond) out.push_back(a);
    }
    return out;
}

namespace states {

inline PureState zero(int n) { return PureState::basis(n, 0); }

inline PureState ghz(int n) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim_of(n)));
    v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
    return PureState(n, v);
}

inline PureState w(int n) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim_of(n)));
    for (int p = 1; p <= n; ++p) v(static_cast<Eigen::Index>(party_mask(p, n))) = 1.0 / std::sqrt(n);
    return PureState(n, v);
}

inline PureState plus(int n) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    return PureState(n, Vec::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

/// (|01> + |10>)/sqrt 2
inline PureState bell_psi_plus() {
    Vec v = Vec::Zero(4);
    v(1) = v(2) = 1.0 / std::sqrt(2.0);
    return PureState(2, v);
}

/// (|00> + |11>)/sqrt 2
inline PureState bell_phi_plus() { return ghz(2); }

/// sin(theta)|00> + cos(theta)|11>
inline PureState schmidt_pair(double theta) {
    Vec v = Vec::Zero(4);
    v(0) = std::sin(theta);
    v(3) = std::cos(theta);
    return PureState(2, v, 1e-10);
}

inline PureState product(const std::vector<Vec2>& locals) {
    if (locals.empty()) throw InputError("states::product: need at least one factor");
    Vec v = locals.front().normalized();
    for (std::size_t k = 1; k < locals.size(); ++k) v = kron(v, Vec(locals[k].normalized()));
    return PureState(static_cast<int>(locals.size()), v, 1e-10);
}

}  // namespace states

}  // namespace mpent
