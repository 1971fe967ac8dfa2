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

// Entanglement witnesses: Hermitian operators whose expectation is
// non-negative on a convex set of states, so a negative value excludes the
// state from that set.

#pragma once

#include <optional>
#include <string>

#include "mpent/core_states.hpp"

namespace mpent {

struct Witness {
    int n_qubits = 0;
    Mat matrix;
    std::string target_class;  // "GHZ-witness", "W-witness" or "custom"
    std::optional<double> epsilon;
};

/// (3/4) 1 - |GHZ><GHZ| on three qubits. Non-negative on the W class.
inline Witness ghz_witness() {
    return {3, 0.75 * Mat::Identity(8, 8) - states::ghz(3).projector(), "GHZ-witness", std::nullopt};
}

/// (2/3) 1 - |W><W| on three qubits. Non-negative on biseparable states.
inline Witness w_witness() {
    return {3, (2.0 / 3.0) * Mat::Identity(8, 8) - states::w(3).projector(), "W-witness", std::nullopt};
}

/// Q - epsilon 1. Whether the result witnesses anything depends on epsilon;
/// picking it is the caller's job, nothing is checked beyond Q >= 0.
inline Witness custom_witness(const Mat& q, double epsilon) {
    if (!(epsilon > 0)) throw InputError("custom_witness: epsilon must be positive");
    if (q.rows() != q.cols() || q.rows() < 2 || (q.rows() & (q.rows() - 1)) != 0)
        throw InputError("custom_witness: Q must be 2^N x 2^N");
    if (hermiticity_defect(q) > 1e-12) throw InputError("custom_witness: Q is not Hermitian");
    if (hermitian_eigenvalues(q).minCoeff() < -1e-10)
        throw InputError("custom_witness: Q is not positive semidefinite");
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(q.rows()))));
    return {n, q - epsilon * Mat::Identity(q.rows(), q.cols()), "custom", epsilon};
}

/// tr[W rho].
inline double evaluate(const Mat& w, const Mat& rho) {
    if (w.rows() != rho.rows() || w.cols() != rho.cols())
        throw InputError("evaluate: witness and state dimensions differ");
    const cplx v = (w.cwiseProduct(rho.transpose())).sum();
    if (std::abs(v.imag()) > 1e-10) throw NumericalError("evaluate: expectation has an imaginary part");
    return v.real();
}

inline double evaluate(const Witness& w, const DensityOperator& rho) { return evaluate(w.matrix, rho.matrix()); }

inline double evaluate(const Witness& w, const PureState& psi) {
    if (static_cast<std::size_t>(w.matrix.rows()) != psi.dim())
        throw InputError("evaluate: witness and state dimensions differ");
    const cplx v = psi.amplitudes().dot(w.matrix * psi.amplitudes());
    return v.real();
}

/// Dense matrix of a Pauli label string like "XZIY"; the first character
/// acts on party 1.
inline Mat pauli_string_matrix(const std::string& labels) {
    Mat out = Mat::Identity(1, 1);
    for (char c : labels) {
        Mat2 p;
        switch (c) {
            case 'I': p = pauli_mat::I(); break;
            case 'X': p = pauli_mat::X(); break;
            case 'Y': p = pauli_mat::Y(); break;
            case 'Z': p = pauli_mat::Z(); break;
            default: throw InputError(std::string("pauli_string_matrix: bad label '") + c + "'");
        }
        out = kron(out, Mat(p));
    }
    return out;
}

struct PauliTerm {
    double coefficient = 0;
    std::string labels;
};

struct PauliDecomposition {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;

    Mat reconstruct() const {
        const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
        Mat out = Mat::Zero(d, d);
        for (const auto& t : terms) out += t.coefficient * pauli_string_matrix(t.labels);
        return out;
    }

    /// sum_alpha c_alpha tr[sigma_alpha rho]: the value assembled from local
    /// Pauli expectations.
    double evaluate(const DensityOperator& rho) const {
        double acc = 0;
        for (const auto& t : terms) acc += t.coefficient * mpent::evaluate(pauli_string_matrix(t.labels), rho.matrix());
        return acc;
    }

    /// Number of distinct non-identity Pauli settings; proxy for the count of
    /// local measurement settings.
    std::size_t setting_count() const {
        std::size_t k = 0;
        for (const auto& t : terms)
            if (t.labels.find_first_not_of('I') != std::string::npos) ++k;
        return k;
    }
};

/// c_alpha = tr[W sigma_alpha] / 2^N over all 4^N Pauli strings; |c| < 1e-12 dropped.
inline PauliDecomposition pauli_decompose(const Mat& w) {
    const auto d = w.rows();
    if (w.cols() != d || d < 2 || (d & (d - 1)) != 0) throw InputError("pauli_decompose: need a 2^N x 2^N matrix");
    if (hermiticity_defect(w) > 1e-10) throw InputError("pauli_decompose: matrix is not Hermitian");
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(d))));
    if (n > 8) throw InputError("pauli_decompose: at most 8 qubits");
    PauliDecomposition out;
    out.n_qubits = n;
    static constexpr char kLabels[4] = {'I', 'X', 'Y', 'Z'};
    const std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < count; ++code) {
        std::string labels(static_cast<std::size_t>(n), 'I');
        // Sparse evaluation: sigma has one non-zero per row.
        std::size_t xmask = 0, zmask = 0;
        int ny = 0;
        for (int a = 0; a < n; ++a) {
            const auto digit = (code >> (2 * (n - 1 - a))) & 3U;
            labels[static_cast<std::size_t>(a)] = kLabels[digit];
            const std::size_t bit = party_mask(a + 1, n);
            if (digit == 1 || digit == 2) xmask |= bit;
            if (digit == 3 || digit == 2) zmask |= bit;
            if (digit == 2) ++ny;
        }
        // sigma |c> = i^{ny} (-1)^{popcount(c & zmask)} |c ^ xmask>, with Y = i X Z
        // tr[W sigma] = sum_c <c ^ xmask| W ... written as sum_c W(c, c ^ xmask) * sigma(c ^ xmask, c).
        cplx acc = 0;
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto cu = static_cast<std::size_t>(c);
            const auto r = static_cast<Eigen::Index>(cu ^ xmask);
            const double sign = (popcount(cu & zmask) & 1) ? -1.0 : 1.0;
            acc += w(c, r) * sign;  // sigma(r, c) without the i^ny factor
        }
        cplx iy = 1;
        for (int k = 0; k < ny; ++k) iy *= kI;
        acc *= iy;
        const double coeff = acc.real() / static_cast<double>(d);
        if (std::abs(coeff) >= 1e-12) out.terms.push_back({coeff, labels});
    }
    return out;
}

inline PauliDecomposition pauli_decompose(const Witness& w) { return pauli_decompose(w.matrix); }

}  // namespace mpent
