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

// Bipartite Schmidt decomposition, the three-qubit generalized Schmidt
// (Acin) normal form, and local-unitary / SLOCC parameter counts.

#pragma once

#include <array>
#include <optional>

#include "mpent/core_states.hpp"

namespace mpent {

/// Schmidt decomposition across a bipartition.
///
/// `coefficients` are non-increasing. The canonical vector places c_k on
/// |r-1-k, r-1-k> (r = number of coefficients), which for two qubits is
/// sin(theta)|0,0> + cos(theta)|1,1> with sin(theta) <= cos(theta).
/// (local_unitaries[0] x local_unitaries[1]) applied to the canonical vector
/// reproduces the input, with side A the parties in `side_a` (ascending).
struct SchmidtForm2 {
    std::vector<int> side_a;
    std::vector<int> side_b;
    std::vector<double> coefficients;
    std::optional<double> theta;  // present when the smaller side is one qubit
    std::array<Mat, 2> local_unitaries;

    int schmidt_rank(double rel_tol = kDefaultTol.rank_relative) const {
        int r = 0;
        for (double c : coefficients)
            if (c > rel_tol * coefficients.front()) ++r;
        return r;
    }

    /// Canonical vector in the (side_a, side_b) tensor ordering.
    Vec canonical_vector() const {
        const auto da = local_unitaries[0].rows();
        const auto db = local_unitaries[1].rows();
        const auto r = static_cast<Eigen::Index>(coefficients.size());
        Vec v = Vec::Zero(da * db);
        for (Eigen::Index k = 0; k < r; ++k) {
            const Eigen::Index slot = r - 1 - k;
            v(slot * db + slot) = coefficients[static_cast<std::size_t>(k)];
        }
        return v;
    }

    /// The state rebuilt from the decomposition, in register ordering.
    Vec reconstruct(int n) const {
        const Vec ab = kron(local_unitaries[0], local_unitaries[1]) * canonical_vector();
        const auto table = detail::index_table(side_a, side_b, n);
        Vec out = Vec::Zero(static_cast<Eigen::Index>(dim_of(n)));
        const auto db = static_cast<Eigen::Index>(table.front().size());
        for (std::size_t a = 0; a < table.size(); ++a)
            for (std::size_t b = 0; b < table[a].size(); ++b)
                out(static_cast<Eigen::Index>(table[a][b])) = ab(static_cast<Eigen::Index>(a) * db +
                                                                 static_cast<Eigen::Index>(b));
        return out;
    }
};

/// Schmidt decomposition of `psi` across side_a | complement.
inline SchmidtForm2 schmidt_decompose(const PureState& psi, std::vector<int> side_a) {
    const int n = psi.n_qubits();
    detail::check_party_set(side_a, n, "schmidt_decompose");
    if (static_cast<int>(side_a.size()) == n)
        throw InputError("schmidt_decompose: split must have two non-empty sides");
    side_a = detail::sorted_unique(std::move(side_a));
    SchmidtForm2 out;
    out.side_a = side_a;
    out.side_b = detail::complement(side_a, n);
    const Mat m = amplitude_matrix(psi, side_a);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVec s = svd.singularValues();
    const auto r = s.size();
    for (Eigen::Index k = 0; k < r; ++k) out.coefficients.push_back(s(k));
    // psi = sum_k s_k u_k (x) conj(v_k); slot r-1-k of the canonical form carries s_k.
    const Mat& u = svd.matrixU();
    const Mat& v = svd.matrixV();
    Mat ua = u;
    Mat ub = v.conjugate();
    for (Eigen::Index k = 0; k < r; ++k) {
        ua.col(r - 1 - k) = u.col(k);
        ub.col(r - 1 - k) = v.col(k).conjugate();
    }
    out.local_unitaries = {ua, ub};
    if (std::min(m.rows(), m.cols()) == 2) out.theta = std::atan2(s(1), s(0));
    return out;
}

inline SchmidtForm2 schmidt_decompose(const PureState& psi, const Split& split) {
    if (split.size() != 2) throw InputError("schmidt_decompose: split must be bipartite");
    if (split.n_parties() != psi.n_qubits()) throw InputError("schmidt_decompose: split size mismatch");
    return schmidt_decompose(psi, split.blocks.front());
}

/// T_i with (T_i)_{j,k} = alpha_{i,j,k} for a three-qubit state.
struct SliceMatrices {
    Mat2 t0;
    Mat2 t1;

    static SliceMatrices of(const PureState& psi) {
        if (psi.n_qubits() != 3) throw InputError("SliceMatrices: three-qubit state required");
        SliceMatrices s;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                s.t0(j, k) = psi[static_cast<std::size_t>(2 * j + k)];
                s.t1(j, k) = psi[static_cast<std::size_t>(4 + 2 * j + k)];
            }
        return s;
    }

    /// Slices after a unitary with matrix elements u acts on party 1.
    SliceMatrices transformed(const Mat2& u) const {
        return {u(0, 0) * t0 + u(0, 1) * t1, u(1, 0) * t0 + u(1, 1) * t1};
    }
};

/// lambda_0|000> + lambda_1 e^{i phi}|100> + lambda_2|101> + lambda_3|110> + lambda_4|111>,
/// reached from the input by (U1 x U2 x U3).
struct AcinForm {
    std::array<double, 5> lambdas{};
    double phi = 0.0;
    std::array<Mat2, 3> local_unitaries;
    /// z = u01/u00 of the selected root; nullopt for the u00 = 0 branch.
    std::optional<cplx> root;
    double reconstruction_fidelity = 0.0;

    PureState canonical_state() const {
        Vec v = Vec::Zero(8);
        v(0) = lambdas[0];
        v(4) = lambdas[1] * std::polar(1.0, phi);
        v(5) = lambdas[2];
        v(6) = lambdas[3];
        v(7) = lambdas[4];
        return PureState::normalized(3, v);
    }

    /// Applies U1 x U2 x U3 to `psi`.
    Vec transform(const PureState& psi) const {
        return apply_local(psi.amplitudes(), 3,
                           {local_unitaries[0], local_unitaries[1], local_unitaries[2]});
    }
};

struct AcinOptions {
    double min_fidelity = 1.0 - 1e-9;
    double degenerate_tol = 1e-12;
};

namespace detail {

inline Mat2 unitary_from_row(cplx u00, cplx u01) {
    const double nrm = std::sqrt(std::norm(u00) + std::norm(u01));
    u00 /= nrm;
    u01 /= nrm;
    Mat2 u;
    u << u00, u01, -std::conj(u01), std::conj(u00);
    return u;
}

inline double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a - kPi;
}

/// Builds the candidate form for one choice of party-1 unitary.
inline AcinForm acin_candidate(const PureState& psi, const SliceMatrices& slices, const Mat2& u1,
                               std::optional<cplx> root, double zero_tol) {
    const SliceMatrices t = slices.transformed(u1);
    Eigen::JacobiSVD<Mat2> svd(t.t0, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // U2 T0' U3^T = diag(s0, s1)
    Mat2 u2 = svd.matrixU().adjoint();
    Mat2 u3 = svd.matrixV().transpose();
    Mat2 t1 = u2 * t.t1 * u3.transpose();
    const double lam0 = svd.singularValues()(0);

    cplx a = t1(0, 0), b = t1(0, 1), c = t1(1, 0), d = t1(1, 1);
    auto arg = [&](cplx x) { return std::abs(x) > zero_tol ? std::arg(x) : 0.0; };
    auto nz = [&](cplx x) { return std::abs(x) > zero_tol; };
    // Phases on |1>_1, |1>_2, |1>_3 (alpha1, beta, gamma); |0>_1 keeps lambda_0 real.
    double alpha1 = 0, beta = 0, gamma = 0, phi = 0;
    if (nz(b) && nz(c) && nz(d)) {
        beta = arg(b) - arg(d);
        gamma = arg(c) - arg(d);
        alpha1 = arg(d) - arg(b) - arg(c);
        phi = wrap_pi(arg(a) + alpha1);
        if (!nz(a)) phi = 0;
    } else {
        alpha1 = nz(a) ? -arg(a) : 0.0;
        if (nz(c)) beta = -arg(c) - alpha1;
        if (nz(b)) gamma = -arg(b) - alpha1;
        if (nz(d)) {
            if (!nz(c) && !nz(b)) gamma = -arg(d) - alpha1;
            else if (!nz(c)) beta = -arg(d) - alpha1 - gamma;
            else gamma = -arg(d) - alpha1 - beta;
        }
    }
    Mat2 p1 = Mat2::Identity(), p2 = Mat2::Identity(), p3 = Mat2::Identity();
    p1(1, 1) = std::polar(1.0, alpha1);
    p2(1, 1) = std::polar(1.0, beta);
    p3(1, 1) = std::polar(1.0, gamma);

    AcinForm f;
    f.root = root;
    f.local_unitaries = {p1 * u1, p2 * u2, p3 * u3};
    f.lambdas = {lam0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)};
    f.phi = phi;
    const Vec image = f.transform(psi);
    f.reconstruction_fidelity = std::norm(f.canonical_state().amplitudes().dot(image));
    return f;
}

}  // namespace detail

/// Three-qubit generalized Schmidt normal form.
///
/// Solves det(T0 + z T1) = 0 for z = u01/u00, completes (u00, u01) to a
/// unitary on party 1, diagonalizes the transformed T0 with U2, U3 and folds
/// the remaining phases into diagonal unitaries. Every root candidate is
/// built; candidates with phi in [0, pi] are preferred, then larger lambda_0,
/// then smaller phi. Throws NumericalError if no candidate reconstructs.
inline AcinForm acin_normal_form(const PureState& psi, const AcinOptions& opt = {}) {
    if (psi.n_qubits() != 3) throw InputError("acin_normal_form: three-qubit state required");
    const SliceMatrices s = SliceMatrices::of(psi);
    // det(T0 + z T1) = c0 + c1 z + c2 z^2
    const cplx c0 = s.t0.determinant();
    const cplx c2 = s.t1.determinant();
    const cplx c1 = (s.t0 + s.t1).determinant() - c0 - c2;
    const double tol = opt.degenerate_tol;

    std::vector<std::pair<Mat2, std::optional<cplx>>> units;
    auto add_root = [&](cplx z) { units.emplace_back(detail::unitary_from_row(1.0, z), z); };
    auto add_infinite = [&] { units.emplace_back(detail::unitary_from_row(0.0, 1.0), std::nullopt); };

    if (std::abs(c2) > tol) {
        const cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
        // Numerically stable pair of roots.
        const cplx q = -0.5 * (c1 + (std::real(std::conj(c1) * disc) >= 0 ? disc : -disc));
        if (std::abs(q) > tol) {
            add_root(q / c2);
            add_root(c0 / q);
        } else {
            add_root(0.0);
        }
    } else if (std::abs(c1) > tol) {
        add_root(-c0 / c1);
        add_infinite();
    } else if (std::abs(c0) <= tol) {
        add_root(0.0);
        add_infinite();
    } else {
        // det(T0') = c0 u00^2 only vanishes for u00 = 0.
        add_infinite();
    }

    std::optional<AcinForm> best;
    auto in_range = [](const AcinForm& f) { return f.phi >= -1e-12 && f.phi <= kPi + 1e-12; };
    auto better = [&](const AcinForm& a, const AcinForm& b) {
        if (in_range(a) != in_range(b)) return in_range(a);
        if (std::abs(a.lambdas[0] - b.lambdas[0]) > 1e-12) return a.lambdas[0] > b.lambdas[0];
        return a.phi < b.phi;
    };
    for (const auto& [u1, root] : units) {
        AcinForm f = detail::acin_candidate(psi, s, u1, root, 1e-13);
        if (f.reconstruction_fidelity < opt.min_fidelity) continue;
        if (!best || better(f, *best)) best = f;
    }
    if (!best) throw NumericalError("acin_normal_form: no root candidate met the reconstruction tolerance");
    best->phi = std::clamp(best->phi, 0.0, kPi);
    return *best;
}

/// 2^{n+1} - 3n - 2: real parameters needed for local-unitary classes of n qubits.
inline long long lu_parameter_lower_bound(int n) {
    if (n < 1 || n > 60) throw InputError("lu_parameter_lower_bound: n out of range");
    return (1LL << (n + 1)) - 3LL * n - 2;
}

/// 2^{n+1} - 6n - 2 (may be negative).
inline long long slocc_parameter_lower_bound(int n) {
    if (n < 1 || n > 60) throw InputError("slocc_parameter_lower_bound: n out of range");
    return (1LL << (n + 1)) - 6LL * n - 2;
}

}  // namespace mpent
