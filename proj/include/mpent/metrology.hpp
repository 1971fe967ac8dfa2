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

// Ramsey frequency estimation with N probe qubits.
//
// Model: the phase omega * t is imprinted by exp(-i omega t J_z), J_z =
// sum_a Z_a / 2, while each qubit dephases independently at rate gamma
// (coherence between |b> and |b'> decays as exp(-gamma t d_H(b, b'))).
// A total time T buys T/t repetitions, so
//     delta_omega0 = (F * T / t)^{-1/2}
// with F the quantum Fisher information of one interrogation.

#pragma once

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "mpent/core_states.hpp"
#include "mpent/optimize.hpp"

namespace mpent {

struct RamseyConfig {
    double omega0 = 0;  // rad/s
    double t = 1;       // interrogation time, s
    double T = 1;       // total time, s
    double gamma = 0;   // dephasing rate per qubit, 1/s
    int n = 1;

    void validate() const {
        if (!(t > 0) || !(T > 0)) throw InputError("RamseyConfig: t and T must be positive");
        if (t > T) throw InputError("RamseyConfig: t must not exceed T");
        if (gamma < 0) throw InputError("RamseyConfig: gamma must be non-negative");
        if (n < 1) throw InputError("RamseyConfig: n must be at least 1");
    }
};

struct UncertaintyReport {
    double delta_omega0 = 0;
    double fisher_information = 0;
    std::string scheme;
    RamseyConfig resources;
};

inline UncertaintyReport make_report(double fisher, std::string scheme, const RamseyConfig& cfg) {
    UncertaintyReport r;
    r.fisher_information = fisher;
    r.delta_omega0 = 1.0 / std::sqrt(fisher * cfg.T / cfg.t);
    r.scheme = std::move(scheme);
    r.resources = cfg;
    return r;
}

/// (1 + cos((omega - omega0) t)) / 2
inline double ramsey_probability(const RamseyConfig& cfg, double omega) {
    cfg.validate();
    return 0.5 * (1.0 + std::cos((omega - cfg.omega0) * cfg.t));
}

/// (N T t)^{-1/2}
inline UncertaintyReport shot_noise_limit(const RamseyConfig& cfg) {
    cfg.validate();
    return make_report(cfg.n * cfg.t * cfg.t, "shot_noise", cfg);
}

/// (T t)^{-1/2} / N
inline UncertaintyReport ghz_limit(const RamseyConfig& cfg) {
    cfg.validate();
    return make_report(static_cast<double>(cfg.n) * cfg.n * cfg.t * cfg.t, "ghz", cfg);
}

/// Diagonal of J_z = sum_a Z_a / 2 in the computational basis.
inline RVec jz_diagonal(int n) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    RVec jz(d);
    for (Eigen::Index b = 0; b < d; ++b) jz(b) = 0.5 * (n - 2 * popcount(static_cast<std::size_t>(b)));
    return jz;
}

/// Independent dephasing for time t: rho_{b,b'} -> rho_{b,b'} exp(-gamma t d_H(b, b')).
inline Mat dephase(const Mat& rho, double gamma, double t) {
    Mat out = rho;
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            if (i != j) out(i, j) *= std::exp(-gamma * t * popcount(static_cast<std::size_t>(i ^ j)));
    return out;
}

/// 4 t^2 Var(J_z) for a pure probe without decoherence.
inline double qfi_pure(const PureState& psi, double t) {
    const RVec jz = jz_diagonal(psi.n_qubits());
    const RVec p = psi.amplitudes().cwiseAbs2();
    const double m1 = p.dot(jz);
    const double m2 = p.dot(jz.cwiseProduct(jz));
    return 4.0 * t * t * (m2 - m1 * m1);
}

/// sum_{l_i + l_j > 0} 2 |<i| d rho |j>|^2 / (l_i + l_j), d rho = -i t [J_z, rho].
inline double qfi_mixed(const Mat& rho, int n, double t, double cutoff = 1e-13) {
    const RVec jz = jz_diagonal(n);
    Mat drho(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) drho(i, j) = -kI * t * (jz(i) - jz(j)) * rho(i, j);
    const HermitianSpectrum sp = hermitian_eigen(rho);
    const Mat dd = sp.vectors.adjoint() * drho * sp.vectors;
    double f = 0;
    for (Eigen::Index i = 0; i < dd.rows(); ++i)
        for (Eigen::Index j = 0; j < dd.cols(); ++j) {
            const double s = sp.values(i) + sp.values(j);
            if (s > cutoff) f += 2.0 * std::norm(dd(i, j)) / s;
        }
    return f;
}

/// Quantum Fisher information of one interrogation of length t.
inline double quantum_fisher_information(const PureState& probe, double t, double gamma) {
    if (gamma == 0) return qfi_pure(probe, t);
    return qfi_mixed(dephase(probe.projector(), gamma, t), probe.n_qubits(), t);
}

inline double quantum_fisher_information(const DensityOperator& probe, double t, double gamma) {
    return qfi_mixed(dephase(probe.matrix(), gamma, t), probe.n_qubits(), t);
}

/// lambda_0 (|0000> + |1111>) + lambda_1 (weight 1 and 3 strings) + lambda_2 (weight 2 strings).
struct ProbeFamily4 {
    double lambda0 = 0;
    double lambda1 = 0;
    double lambda2 = 0;

    double norm_sq() const { return 2 * lambda0 * lambda0 + 8 * lambda1 * lambda1 + 6 * lambda2 * lambda2; }

    /// Point on the constraint surface from two angles in [0, pi/2].
    static ProbeFamily4 from_angles(double a, double b) {
        return {std::cos(a) / std::sqrt(2.0), std::sin(a) * std::cos(b) / std::sqrt(8.0),
                std::sin(a) * std::sin(b) / std::sqrt(6.0)};
    }
};

inline PureState probe_state_4(const ProbeFamily4& f) {
    if (f.lambda0 < 0 || f.lambda1 < 0 || f.lambda2 < 0) throw InputError("probe_state_4: coefficients must be non-negative");
    if (std::abs(f.norm_sq() - 1.0) > 1e-10) throw InputError("probe_state_4: 2 l0^2 + 8 l1^2 + 6 l2^2 must be 1");
    Vec v(16);
    for (Eigen::Index b = 0; b < 16; ++b) {
        const int w = popcount(static_cast<std::size_t>(b));
        v(b) = (w == 0 || w == 4) ? f.lambda0 : (w == 2 ? f.lambda2 : f.lambda1);
    }
    return PureState(4, v, 1e-9);
}

struct TimeOptimum {
    double t = 0;
    double delta_omega0 = 0;
    double fisher_information = 0;
};

/// Best interrogation time for a fixed probe: golden section on log t over
/// [1e-4/gamma, min(10/gamma, T)]. Without dephasing F grows as t^2, so t = T.
inline TimeOptimum optimize_time(const PureState& probe, double gamma, double T) {
    if (gamma < 0 || !(T > 0)) throw InputError("optimize_time: need gamma >= 0 and T > 0");
    if (gamma == 0) {
        const double f = quantum_fisher_information(probe, T, 0.0);
        return {T, f > 0 ? 1.0 / std::sqrt(f) : std::numeric_limits<double>::infinity(), f};
    }
    const double lo = std::log(1e-4 / gamma);
    const double hi = std::log(std::min(10.0 / gamma, T));
    auto cost = [&](double lt) {
        const double t = std::exp(lt);
        const double f = quantum_fisher_information(probe, t, gamma);
        return f > 0 ? 1.0 / std::sqrt(f * T / t) : std::numeric_limits<double>::infinity();
    };
    const opt::ScalarMin m = opt::golden_section(cost, lo, std::max(lo, hi), 1e-10);
    const double t = std::exp(m.x);
    return {t, m.f, quantum_fisher_information(probe, t, gamma)};
}

struct ProbeBudget {
    int grid = 24;         // per-angle grid points for the initial scan
    int restarts = 3;      // extra random starting points for the refinement
    double refine_tol = 1e-9;
};

struct ProbeOptimization {
    ProbeFamily4 family;
    UncertaintyReport report;    // best family probe at its optimal t
    UncertaintyReport baseline;  // |+>^4 at its optimal t
    double improvement = 0;      // baseline / best - 1
    bool converged = false;
};

/// Joint optimization of (lambda_0, lambda_1, lambda_2) and t for N = 4; the baseline is the uncorrelated |+>^4 probe with its own
/// optimal t.
inline ProbeOptimization optimize_probe(const RamseyConfig& cfg, const ProbeBudget& budget = {}, std::uint64_t seed = 1) {
    cfg.validate();
    if (cfg.n != 4) throw InputError("optimize_probe: the probe family is defined for N = 4");
    const double half_pi = kPi / 2;
    auto clamp_angle = [&](double a) { return std::clamp(a, 0.0, half_pi); };
    auto cost = [&](const std::vector<double>& x) {
        const ProbeFamily4 f = ProbeFamily4::from_angles(clamp_angle(x[0]), clamp_angle(x[1]));
        return optimize_time(probe_state_4(f), cfg.gamma, cfg.T).delta_omega0;
    };

    std::vector<double> best_x{0, 0};
    double best_f = cost(best_x);
    const int g = std::max(2, budget.grid);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            std::vector<double> x{half_pi * i / (g - 1), half_pi * j / (g - 1)};
            const double fx = cost(x);
            if (fx < best_f) {
                best_f = fx;
                best_x = x;
            }
        }
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, half_pi);
    std::vector<std::vector<double>> starts{best_x};
    for (int r = 0; r < budget.restarts; ++r) starts.push_back({u(rng), u(rng)});
    bool converged = false;
    for (const auto& s : starts) {
        const opt::VectorMin m = opt::pattern_search(cost, s, half_pi / g, budget.refine_tol);
        if (m.f < best_f) {
            best_f = m.f;
            best_x = m.x;
        }
        converged = converged || m.converged;
    }

    ProbeOptimization out;
    out.family = ProbeFamily4::from_angles(clamp_angle(best_x[0]), clamp_angle(best_x[1]));
    const TimeOptimum best = optimize_time(probe_state_4(out.family), cfg.gamma, cfg.T);
    RamseyConfig rc = cfg;
    rc.t = best.t;
    out.report = make_report(best.fisher_information, "family4", rc);
    const TimeOptimum base = optimize_time(states::plus(4), cfg.gamma, cfg.T);
    RamseyConfig bc = cfg;
    bc.t = base.t;
    out.baseline = make_report(base.fisher_information, "uncorrelated", bc);
    out.improvement = out.baseline.delta_omega0 / out.report.delta_omega0 - 1.0;
    out.converged = converged;
    return out;
}

/// Sweep rows (t, delta_omega0, scheme) for a fixed probe.
struct SweepRow {
    double t;
    double delta_omega0;
    std::string scheme;
};

inline std::vector<SweepRow> uncertainty_sweep(const PureState& probe, const std::string& scheme, double gamma,
                                               double T, double t_min, double t_max, int points) {
    if (points < 2 || !(t_min > 0) || !(t_max > t_min) || t_max > T) throw InputError("uncertainty_sweep: bad range");
    std::vector<SweepRow> rows;
    for (int k = 0; k < points; ++k) {
        const double t = t_min * std::pow(t_max / t_min, static_cast<double>(k) / (points - 1));
        const double f = quantum_fisher_information(probe, t, gamma);
        rows.push_back({t, 1.0 / std::sqrt(f * T / t), scheme});
    }
    return rows;
}

}  // namespace mpent
