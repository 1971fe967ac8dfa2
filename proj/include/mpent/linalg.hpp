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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mpent {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Shared numerical tolerances. Every value here is a default that the CLI
/// can override and that is echoed into reports.
struct Tolerances {
    double norm = 1e-12;       // state normalization
    double hermitian = 1e-12;  // max entry deviation from Hermiticity
    double positivity = 1e-10; // smallest admissible eigenvalue is -positivity
    double trace = 1e-12;
    double rank_relative = 1e-10;  // singular values below rel * s_max are zero
    double file_check = 1e-6;      // parsers of external files
};

inline constexpr Tolerances kDefaultTol{};

/// Thrown when input violates a documented precondition.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical routine cannot meet its postcondition.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Bit of basis index `index` belonging to party `party` (1-based) in an
/// `n`-qubit register. Party 1 is the most significant bit, so the label
/// b1 b2 ... bN maps to sum_a b_a 2^(N-a).
inline int party_bit(std::size_t index, int party, int n) {
    return static_cast<int>((index >> (n - party)) & 1U);
}

inline std::size_t party_mask(int party, int n) { return std::size_t{1} << (n - party); }

inline std::size_t basis_index(const std::vector<int>& bits) {
    std::size_t idx = 0;
    for (int b : bits) idx = (idx << 1) | static_cast<std::size_t>(b & 1);
    return idx;
}

inline int popcount(std::size_t x) { return static_cast<int>(__builtin_popcountll(x)); }

inline double max_abs_entry(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Mat& m) { return max_abs_entry(m - m.adjoint()); }

/// Result of a Hermitian eigensolve: eigenvalues in descending order, columns
/// of `vectors` matching, each vector phase-fixed so its largest-magnitude
/// component is real positive.
struct HermitianSpectrum {
    RVec values;
    Mat vectors;
};

inline HermitianSpectrum hermitian_eigen(const Mat& m) {
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("hermitian eigensolver failed");
    const Eigen::Index d = h.rows();
    HermitianSpectrum out{RVec(d), Mat(d, d)};
    for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::Index src = d - 1 - k;
        out.values(k) = es.eigenvalues()(src);
        Vec v = es.eigenvectors().col(src);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (std::abs(v(arg)) > 0) v *= std::conj(v(arg)) / std::abs(v(arg));
        out.vectors.col(k) = v;
    }
    return out;
}

inline RVec hermitian_eigenvalues(const Mat& m) { return hermitian_eigen(m).values; }

inline RVec singular_values(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues();
}

/// Number of singular values above rel_tol * s_max.
inline int numerical_rank(const Mat& m, double rel_tol = kDefaultTol.rank_relative) {
    RVec s = singular_values(m);
    if (s.size() == 0 || s(0) <= 0) return 0;
    int r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > rel_tol * s(0)) ++r;
    return r;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// Apply a real function to a Hermitian matrix through its spectrum.
template <class F>
Mat hermitian_function(const Mat& m, F&& f) {
    HermitianSpectrum sp = hermitian_eigen(m);
    RVec fv = sp.values.unaryExpr(f);
    return sp.vectors * fv.cast<cplx>().asDiagonal() * sp.vectors.adjoint();
}

inline double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

inline double binary_entropy(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

namespace pauli_mat {
inline Mat2 I() { return Mat2::Identity(); }
inline Mat2 X() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}
inline Mat2 Y() {
    Mat2 m;
    m << 0, -kI, kI, 0;
    return m;
}
inline Mat2 Z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli_mat

// Random helpers. All generators are std::mt19937_64 so that a u64 seed fully
// determines the stream.
using Rng = std::mt19937_64;

inline cplx complex_gaussian(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

inline Vec gaussian_vector(Eigen::Index d, Rng& rng) {
    Vec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = complex_gaussian(rng);
    return v;
}

inline Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian(rng);
    return m;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the R-diagonal phase fix).
inline Mat haar_unitary(Eigen::Index d, Rng& rng) {
    Mat g = gaussian_matrix(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const cplx rk = r(k, k);
        const double a = std::abs(rk);
        if (a > 0) q.col(k) *= rk / a;
    }
    return q;
}

}  // namespace mpent
