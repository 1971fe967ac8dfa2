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

#pragma once

#include <array>

#include "mpent/core_states.hpp"

namespace mpent {

/// rho_tilde = 1 x 1 - rho_1 x 1 - 1 x rho_2 + rho, and the spectrum of
/// rho * rho_tilde in non-increasing order (all values are >= 0 in exact
/// arithmetic since rho * rho_tilde is similar to a PSD matrix).
struct ConcurrenceWork {
    Mat rho_tilde;
    std::array<double, 4> singular_values{};
    /// Square roots of `singular_values`, computed as the singular values of
    /// sqrt(rho) sqrt(rho_tilde) so that vanishing entries stay exactly small.
    std::array<double, 4> roots{};
};

namespace detail {

/// PSD square root with eigenvalues below rel * max dropped.
inline Mat psd_sqrt(const Mat& m, double rel = 1e-14) {
    HermitianSpectrum sp = hermitian_eigen(m);
    const double top = std::max(sp.values(0), 0.0);
    RVec r(sp.values.size());
    for (Eigen::Index i = 0; i < r.size(); ++i)
        r(i) = sp.values(i) > rel * top ? std::sqrt(sp.values(i)) : 0.0;
    return sp.vectors * r.cast<cplx>().asDiagonal() * sp.vectors.adjoint();
}

}  // namespace detail

inline Mat universal_inversion(const DensityOperator& rho) {
    if (rho.n_qubits() != 2) throw InputError("universal_inversion: two-qubit state required");
    const Mat r1 = partial_trace(rho, {1}).matrix();
    const Mat r2 = partial_trace(rho, {2}).matrix();
    const Mat id2 = Mat::Identity(2, 2);
    return Mat::Identity(4, 4) - kron(r1, id2) - kron(id2, r2) + rho.matrix();
}

inline ConcurrenceWork concurrence_work(const DensityOperator& rho) {
    ConcurrenceWork w;
    w.rho_tilde = universal_inversion(rho);
    const RVec sv = singular_values(detail::psd_sqrt(rho.matrix()) * detail::psd_sqrt(w.rho_tilde));
    for (int i = 0; i < 4; ++i) {
        w.roots[static_cast<std::size_t>(i)] = sv(i);
        w.singular_values[static_cast<std::size_t>(i)] = sv(i) * sv(i);
    }
    return w;
}

/// max{0, l1^{1/2} - l2^{1/2} - l3^{1/2} - l4^{1/2}} over the spectrum of rho * rho_tilde.
inline double concurrence_2q(const DensityOperator& rho) {
    const ConcurrenceWork w = concurrence_work(rho);
    return std::max(0.0, w.roots[0] - w.roots[1] - w.roots[2] - w.roots[3]);
}

/// Concurrence of a (possibly unnormalized) two-qubit vector: 2|a d - b c|.
inline double concurrence_pure_2q(const Vec& v) {
    return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

struct TangleTerms {
    double c2_1_23 = 0;  // 4 det(rho_1)
    double c2_12 = 0;
    double c2_13 = 0;
    double tangle = 0;
};

/// tau = C^2(rho_{1-23}) - C^2(rho_{1-2}) - C^2(rho_{1-3}) for a pure three-qubit state.
inline TangleTerms tangle_terms(const PureState& psi) {
    if (psi.n_qubits() != 3) throw InputError("tangle: three-qubit pure state required");
    const DensityOperator rho1 = reduced_state(psi, {1});
    const double via_det = 4.0 * rho1.matrix().determinant().real();
    const double via_purity = 2.0 * (1.0 - rho1.purity());
    if (std::abs(via_det - via_purity) > 1e-10)
        throw NumericalError("tangle: determinant and purity forms of C^2(1-23) disagree");
    TangleTerms t;
    t.c2_1_23 = via_det;
    const double c12 = concurrence_2q(reduced_state(psi, {1, 2}));
    const double c13 = concurrence_2q(reduced_state(psi, {1, 3}));
    t.c2_12 = c12 * c12;
    t.c2_13 = c13 * c13;
    t.tangle = t.c2_1_23 - t.c2_12 - t.c2_13;
    if (t.tangle < -1e-10) throw NumericalError("tangle: negative residual entanglement");
    t.tangle = std::max(0.0, t.tangle);
    return t;
}

inline double tangle(const PureState& psi) { return tangle_terms(psi).tangle; }

}  // namespace mpent
