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

// Entanglement measures. Logarithms are base 2 throughout and 0 log 0 = 0.
//
// The variational measures (geometric measure, relative entropy of
// entanglement, localizable entanglement) return the best value found by a
// seeded optimizer together with the optimizing ansatz and a convergence flag.

#pragma once

#include <limits>
#include <string>

#include "mpent/classification.hpp"
#include "mpent/concurrence.hpp"
#include "mpent/core_states.hpp"
#include "mpent/optimize.hpp"

namespace mpent {

/// Shape of a measure result in reports. For exact values lower = value = upper.
struct MeasureResult {
    std::string name;
    double value = 0;
    double lower = 0;
    double upper = 0;
    std::vector<std::string> flags;

    static MeasureResult exact(std::string name, double v) { return {std::move(name), v, v, v, {}}; }
};

/// Von Neumann entropy of either reduction across side_a | rest.
inline double entropy_of_entanglement(const PureState& psi, const std::vector<int>& side_a) {
    detail::check_party_set(side_a, psi.n_qubits(), "entropy_of_entanglement");
    if (static_cast<int>(side_a.size()) == psi.n_qubits())
        throw InputError("entropy_of_entanglement: split must have two non-empty sides");
    const RVec s = singular_values(amplitude_matrix(psi, side_a));
    double h = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) h -= xlog2x(s(i) * s(i));
    return std::max(0.0, h);
}

inline double entropy_of_entanglement(const PureState& psi, const Split& split) {
    if (split.size() != 2) throw InputError("entropy_of_entanglement: split must be bipartite");
    return entropy_of_entanglement(psi, split.blocks.front());
}

/// log2 of the minimal number of product terms.
inline MeasureResult schmidt_measure(const PureState& psi, const RankSearchOptions& opt = {}) {
    if (psi.n_qubits() > 6) throw InputError("schmidt_measure: at most 6 qubits");
    const TensorRankBounds b = tensor_rank_bounds(psi, opt);
    MeasureResult r{"schmidt_measure", std::log2(b.lower), std::log2(b.lower), std::log2(b.upper), {}};
    if (b.exact) {
        r.value = r.lower = r.upper = std::log2(*b.exact);
    } else {
        r.flags.push_back("bounds_only: value is the lower end of [log2 lower, log2 upper]");
    }
    if (b.search_exhausted) r.flags.push_back("rank_search_exhausted");
    return r;
}

/// (4/N) sum_j d(f_j(0)|psi>, f_j(1)|psi>) with f_j(b) projecting party j on
/// |b> and deleting it, and d(x, y) = sum_{i<k} |x_i y_k - x_k y_i|^2.
inline double global_entanglement(const PureState& psi) {
    const int n = psi.n_qubits();
    if (n < 2) throw InputError("global_entanglement: at least two qubits");
    double total = 0;
    for (int j = 1; j <= n; ++j) {
        // f_j(b)|psi>: keep amplitudes with b_j = b, remaining bits in order.
        const Mat rows = amplitude_matrix(psi, {j});
        const Vec x = rows.row(0).transpose();
        const Vec y = rows.row(1).transpose();
        double d = 0;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            for (Eigen::Index k = i + 1; k < x.size(); ++k) d += std::norm(x(i) * y(k) - x(k) * y(i));
        total += d;
    }
    return 4.0 / n * total;
}

struct ProductAnsatz {
    std::vector<Vec2> local_vectors;

    Vec vector() const {
        Vec v = local_vectors.front();
        for (std::size_t k = 1; k < local_vectors.size(); ++k) v = kron(v, Vec(local_vectors[k]));
        return v;
    }
};

struct GeometricOptions {
    int restarts = 50;
    std::uint64_t seed = 1;
    double improvement_tol = 1e-12;
    int max_sweeps = 10000;
};

struct GeometricResult {
    double distance = 0;       // min || |psi><psi| - sigma ||_2 over pure products
    double overlap_sq = 0;     // Lambda^2 = max |<psi|phi>|^2
    ProductAnsatz closest;
    bool converged = true;
    int sweeps = 0;
};

namespace detail {

/// v_b = sum over indices with bit_p = b of conj(prod_{q != p} phi_q) psi.
inline Vec2 contract_except(const Vec& psi, int n, const std::vector<Vec2>& phi, int p) {
    Vec2 v = Vec2::Zero();
    const auto d = psi.size();
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        cplx w = psi(i);
        for (int q = 1; q <= n; ++q) {
            if (q == p) continue;
            w *= std::conj(phi[static_cast<std::size_t>(q - 1)](party_bit(iu, q, n)));
        }
        v(party_bit(iu, p, n)) += w;
    }
    return v;
}

}  // namespace detail

/// Geometric measure via alternating maximization of the overlap with a
/// pure product state, using || psi psi^+ - phi phi^+ ||_2^2 = 2 - 2 Lambda^2.
inline GeometricResult geometric_measure(const PureState& psi, const GeometricOptions& opt = {}) {
    const int n = psi.n_qubits();
    if (n > 6) throw InputError("geometric_measure: at most 6 qubits");
    Rng rng(opt.seed);
    GeometricResult best;
    best.overlap_sq = -1;
    for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
        std::vector<Vec2> phi;
        for (int p = 0; p < n; ++p) phi.emplace_back(Vec2(gaussian_vector(2, rng)).normalized());
        double overlap = 0;
        bool converged = false;
        int sweep = 0;
        for (; sweep < opt.max_sweeps; ++sweep) {
            double now = 0;
            for (int p = 1; p <= n; ++p) {
                const Vec2 v = detail::contract_except(psi.amplitudes(), n, phi, p);
                now = v.norm();
                if (now > 0) phi[static_cast<std::size_t>(p - 1)] = v / now;
            }
            const bool done = now - overlap < opt.improvement_tol;
            overlap = std::max(overlap, now);
            if (done) {
                converged = true;
                break;
            }
        }
        if (overlap * overlap > best.overlap_sq) {
            best.overlap_sq = overlap * overlap;
            best.closest = ProductAnsatz{phi};
            best.converged = converged;
            best.sweeps = sweep;
        }
    }
    best.overlap_sq = std::min(1.0, best.overlap_sq);
    const Vec prod = best.closest.vector();
    const double direct = (psi.projector() - prod * prod.adjoint()).norm();
    best.distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * best.overlap_sq));
    if (std::abs(direct * direct - best.distance * best.distance) > 1e-9)
        throw NumericalError("geometric_measure: Hilbert-Schmidt identity check failed");
    return best;
}

// ---------------------------------------------------------------------------
// Relative entropy of entanglement (upper bound)

struct SeparableAnsatz {
    std::vector<double> weights;
    std::vector<ProductAnsatz> components;

    Mat matrix() const {
        const Vec v0 = components.front().vector();
        Mat s = Mat::Zero(v0.size(), v0.size());
        for (std::size_t k = 0; k < components.size(); ++k) {
            const Vec v = components[k].vector();
            s += weights[k] * v * v.adjoint();
        }
        return s;
    }
};

struct RelativeEntropyOptions {
    int components = 0;  // 0 -> 2^N
    int restarts = 4;
    std::uint64_t seed = 1;
    int max_iterations = 3000;
    double epsilon = 1e-9;  // identity mixing keeps sigma full rank
    double tol = 1e-10;
};

struct RelativeEntropyResult {
    double value = 0;
    SeparableAnsatz ansatz;
    bool converged = false;
};

namespace detail {

/// Euclidean projection onto the probability simplex.
inline std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0, theta = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) theta = t;
    }
    for (double& x : v) x = std::max(0.0, x - theta);
    return v;
}

struct ReeEval {
    double value;
    Mat grad_sigma;  // d value / d sigma as a linear functional tr[G dsigma]
};

/// S(rho || sigma_eps) in bits, and its gradient in sigma.
inline ReeEval ree_objective(const Mat& rho, double neg_entropy, const Mat& sigma, bool want_grad) {
    const HermitianSpectrum sp = hermitian_eigen(sigma);
    const auto d = sigma.rows();
    RVec logs(d);
    for (Eigen::Index i = 0; i < d; ++i) logs(i) = std::log(std::max(sp.values(i), 1e-300));
    const Mat rho_hat = sp.vectors.adjoint() * rho * sp.vectors;
    double cross = 0;
    for (Eigen::Index i = 0; i < d; ++i) cross += rho_hat(i, i).real() * logs(i);
    ReeEval out{neg_entropy - cross / std::log(2.0), Mat()};
    if (want_grad) {
        Mat l(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) {
                const double mi = sp.values(i), mj = sp.values(j);
                l(i, j) = std::abs(mi - mj) > 1e-12 * std::max(mi, mj) ? (logs(i) - logs(j)) / (mi - mj)
                                                                        : 1.0 / std::max(mi, 1e-300);
            }
        const Mat inner = rho_hat.cwiseProduct(l);
        out.grad_sigma = -(sp.vectors * inner * sp.vectors.adjoint()) / std::log(2.0);
    }
    return out;
}

}  // namespace detail

/// Upper bound on min S(rho || sigma) over fully separable sigma, by
/// projected gradient descent on K-component product ansatze.
inline RelativeEntropyResult relative_entropy_of_entanglement_ub(const DensityOperator& rho,
                                                                 const RelativeEntropyOptions& opt = {}) {
    const int n = rho.n_qubits();
    if (n > 3) throw InputError("relative_entropy_of_entanglement_ub: at most 3 qubits");
    const int k_comp = opt.components == 0 ? static_cast<int>(dim_of(n)) : opt.components;
    if (k_comp < static_cast<int>(dim_of(n))) throw InputError("relative_entropy_of_entanglement_ub: need K >= 2^N");
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    const Mat& r = rho.matrix();
    double neg_entropy = 0;
    {
        const RVec ev = hermitian_eigenvalues(r);
        for (Eigen::Index i = 0; i < ev.size(); ++i) neg_entropy += xlog2x(ev(i));
    }
    const double eps = opt.epsilon;
    const Mat mix = Mat::Identity(d, d) / static_cast<double>(d);
    auto sigma_of = [&](const SeparableAnsatz& a) { return Mat((1.0 - eps) * a.matrix() + eps * mix); };

    Rng rng(opt.seed);
    RelativeEntropyResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart <= std::max(2, opt.restarts + 1); ++restart) {
        SeparableAnsatz a;
        a.weights.assign(static_cast<std::size_t>(k_comp), 1.0 / k_comp);
        for (int k = 0; k < k_comp; ++k) {
            ProductAnsatz pa;
            for (int p = 0; p < n; ++p) pa.local_vectors.emplace_back(Vec2(gaussian_vector(2, rng)).normalized());
            a.components.push_back(std::move(pa));
        }
        if (restart < 2) {
            // rho dephased in a product basis: computational first, then the
            // eigenbases of the single-party reductions. Padded with random components.
            std::vector<Mat2> basis(static_cast<std::size_t>(n), Mat2::Identity());
            if (restart == 1)
                for (int p = 1; p <= n; ++p) basis[static_cast<std::size_t>(p - 1)] = hermitian_eigen(partial_trace(rho, {p}).matrix()).vectors;
            std::vector<double> w(static_cast<std::size_t>(k_comp), 0.0);
            for (Eigen::Index b = 0; b < d; ++b) {
                auto& comp = a.components[static_cast<std::size_t>(b)];
                for (int p = 1; p <= n; ++p)
                    comp.local_vectors[static_cast<std::size_t>(p - 1)] =
                        basis[static_cast<std::size_t>(p - 1)].col(party_bit(static_cast<std::size_t>(b), p, n));
                const Vec v = comp.vector();
                w[static_cast<std::size_t>(b)] = v.dot(r * v).real();
            }
            a.weights = detail::project_simplex(w);
        }
        detail::ReeEval cur = detail::ree_objective(r, neg_entropy, sigma_of(a), true);
        double step = 0.1;
        bool converged = false;
        for (int it = 0; it < opt.max_iterations; ++it) {
            // Gradients: weights, then Riemannian gradients of each local vector.
            std::vector<double> gw(static_cast<std::size_t>(k_comp));
            std::vector<std::vector<Vec2>> gv(static_cast<std::size_t>(k_comp));
            for (int k = 0; k < k_comp; ++k) {
                const auto& comp = a.components[static_cast<std::size_t>(k)];
                const Vec v = comp.vector();
                gw[static_cast<std::size_t>(k)] = (1.0 - eps) * v.dot(cur.grad_sigma * v).real();
                const double wk = a.weights[static_cast<std::size_t>(k)];
                const Vec gvec = cur.grad_sigma * v;
                for (int p = 1; p <= n; ++p) {
                    // M phi_p = <phi_others| G |phi>, contracted on party p.
                    Vec2 mphi = detail::contract_except(gvec, n, comp.local_vectors, p);
                    Vec2 g = 2.0 * (1.0 - eps) * wk * mphi;
                    const Vec2& phi = comp.local_vectors[static_cast<std::size_t>(p - 1)];
                    g -= phi * std::real(phi.dot(g));
                    gv[static_cast<std::size_t>(k)].push_back(g);
                }
            }
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls) {
                SeparableAnsatz trial = a;
                for (int k = 0; k < k_comp; ++k) {
                    trial.weights[static_cast<std::size_t>(k)] -= step * gw[static_cast<std::size_t>(k)];
                    for (int p = 0; p < n; ++p) {
                        Vec2& phi = trial.components[static_cast<std::size_t>(k)].local_vectors[static_cast<std::size_t>(p)];
                        phi = (phi - step * gv[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)]).normalized();
                    }
                }
                trial.weights = detail::project_simplex(trial.weights);
                const detail::ReeEval next = detail::ree_objective(r, neg_entropy, sigma_of(trial), true);
                if (next.value < cur.value) {
                    const double gain = cur.value - next.value;
                    a = std::move(trial);
                    cur = next;
                    step *= 1.5;
                    accepted = true;
                    if (gain < opt.tol) converged = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted || converged) {
                converged = true;
                break;
            }
        }
        if (cur.value < best.value) {
            best.value = cur.value;
            best.ansatz = a;
            best.converged = converged;
        }
    }
    best.value = std::max(0.0, best.value);
    return best;
}

// ---------------------------------------------------------------------------
// Localizable entanglement

struct LocalizableOptions {
    int grid_resolution = 16;
    double refine_tol = 1e-10;
};

struct LocalizableResult {
    double value = 0;
    /// (theta, phi) Bloch angles of the measurement basis for each measured party.
    std::vector<std::pair<int, std::pair<double, double>>> bases;
};

namespace detail {

/// Outcome-averaged concurrence of the pair after measuring `others` in the
/// Bloch bases given by `angles` (theta_0, phi_0, theta_1, phi_1, ...).
inline double average_pair_concurrence(const PureState& psi, const std::vector<int>& pair,
                                       const std::vector<int>& others, const std::vector<double>& angles) {
    const int n = psi.n_qubits();
    const auto table = index_table(others, pair, n);
    const std::size_t k = others.size();
    std::vector<std::pair<Vec2, Vec2>> bases;
    for (std::size_t i = 0; i < k; ++i) bases.push_back(bloch_basis(angles[2 * i], angles[2 * i + 1]));
    double total = 0;
    for (std::size_t outcome = 0; outcome < (std::size_t{1} << k); ++outcome) {
        Vec v = Vec::Zero(4);
        for (std::size_t a = 0; a < table.size(); ++a) {
            cplx w = 1;
            for (std::size_t i = 0; i < k; ++i) {
                const int bit = static_cast<int>((a >> (k - 1 - i)) & 1U);
                const bool second = (outcome >> (k - 1 - i)) & 1U;
                const Vec2& e = second ? bases[i].second : bases[i].first;
                w *= std::conj(e(bit));
            }
            for (std::size_t b = 0; b < 4; ++b) v(static_cast<Eigen::Index>(b)) += w * psi[table[a][b]];
        }
        total += concurrence_pure_2q(v);
    }
    return total;
}

}  // namespace detail

/// Maximum over product projective measurements on the other parties of the
/// outcome-averaged concurrence of the pair's post-measurement state.
inline LocalizableResult localizable_entanglement(const PureState& psi, std::pair<int, int> pair,
                                                  const LocalizableOptions& opt = {}) {
    const int n = psi.n_qubits();
    if (n < 2 || n > 4) throw InputError("localizable_entanglement: 2 to 4 qubits");
    if (pair.first == pair.second) throw InputError("localizable_entanglement: pair must be two distinct parties");
    std::vector<int> pv{pair.first, pair.second};
    detail::check_party_set(pv, n, "localizable_entanglement");
    pv = detail::sorted_unique(pv);
    const std::vector<int> others = detail::complement(pv, n);
    LocalizableResult res;
    if (others.empty()) {
        res.value = concurrence_pure_2q(psi.amplitudes());
        return res;
    }
    const std::size_t dims = 2 * others.size();
    const int g = std::max(2, opt.grid_resolution);
    auto f = [&](const std::vector<double>& x) { return -detail::average_pair_concurrence(psi, pv, others, x); };

    std::vector<double> best_x(dims, 0.0);
    double best_f = f(best_x);
    std::vector<int> idx(dims, 0);
    std::vector<double> x(dims);
    for (;;) {
        for (std::size_t i = 0; i < dims; ++i)
            x[i] = (i % 2 == 0) ? kPi * idx[i] / (g - 1) : 2 * kPi * idx[i] / g;
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
        std::size_t pos = 0;
        while (pos < dims && ++idx[pos] == g) idx[pos++] = 0;
        if (pos == dims) break;
    }
    const opt::VectorMin refined = opt::pattern_search(f, best_x, kPi / g, opt.refine_tol);
    if (refined.f < best_f) {
        best_f = refined.f;
        best_x = refined.x;
    }
    res.value = -best_f;
    for (std::size_t i = 0; i < others.size(); ++i) res.bases.push_back({others[i], {best_x[2 * i], best_x[2 * i + 1]}});
    return res;
}

}  // namespace mpent
