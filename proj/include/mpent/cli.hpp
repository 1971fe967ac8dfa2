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

// Batch command-line front end. `run` is the whole program minus main(), so
// tests can drive it with string arguments and capture both streams.
//
// Exit codes: 0 success, 1 input error (including unknown subcommands),
// 2 numerical non-convergence.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mpent/classification.hpp"
#include "mpent/concurrence.hpp"
#include "mpent/io.hpp"
#include "mpent/measures.hpp"
#include "mpent/metrology.hpp"
#include "mpent/normal_forms.hpp"
#include "mpent/stabilizer_graph.hpp"
#include "mpent/witnesses.hpp"

namespace mpent::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInputError = 1, kNonConvergence = 2 };

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"ghz3", "w3", "cluster4", "bell"};
    return names;
}

inline PureState builtin_state(const std::string& name) {
    if (name == "ghz3") return states::ghz(3);
    if (name == "w3") return states::w(3);
    if (name == "cluster4") return states::cluster4();
    if (name == "bell") return states::bell_phi_plus();
    throw InputError("unknown builtin state '" + name + "' (expected ghz3, w3, cluster4 or bell)");
}

/// Values shared by all subcommands. Optional fields fall back to each
/// module's defaults; the effective values are recorded in the report.
struct GlobalOptions {
    bool json_output = false;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::optional<int> restarts;
    std::string builtin;
    double file_tol = kDefaultTol.file_check;
};

struct Context {
    GlobalOptions g;
    io::Report report;
    bool non_converged = false;

    void flag(const std::string& f) { report.flags.push_back(f); }

    /// Result entry carrying the metadata that produced it.
    void add(const std::string& name, json value, json meta = json::object()) {
        meta["seed"] = g.seed;
        if (g.tol) meta["tol_override"] = *g.tol;
        report.add_entry({{"name", name}, {"value", std::move(value)}, {"meta", std::move(meta)}});
    }

    void add_measure(const MeasureResult& m, json meta = json::object(), std::optional<json> ansatz = std::nullopt) {
        json e = io::to_json(m);
        meta["seed"] = g.seed;
        if (g.tol) meta["tol_override"] = *g.tol;
        e["meta"] = std::move(meta);
        if (ansatz) e["ansatz"] = *ansatz;
        report.add_entry(std::move(e));
        for (const auto& f : m.flags) flag(m.name + ": " + f);
    }
};

inline io::LoadedState load_state(Context& ctx, const std::string& path) {
    if (!ctx.g.builtin.empty() && !path.empty()) throw InputError("give either a state file or --builtin, not both");
    if (!ctx.g.builtin.empty()) {
        PureState psi = builtin_state(ctx.g.builtin);
        ctx.report.inputs.push_back({"builtin:" + ctx.g.builtin, io::digest(io::state_to_json(psi).dump())});
        return {psi, DensityOperator(psi)};
    }
    if (path.empty()) throw InputError("no input state: pass a state file or --builtin <name>");
    const std::string text = io::read_file(path);
    ctx.report.inputs.push_back({path, io::digest(text)});
    return io::state_from_json(io::parse_json_text(text, path), ctx.g.file_tol);
}

inline const PureState& require_pure(const io::LoadedState& s, const std::string& what) {
    if (!s.pure) throw InputError(what + " needs a pure state");
    return *s.pure;
}

inline std::vector<int> parse_party_list(const std::string& text, int n) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        try {
            out.push_back(std::stoi(cur));
        } catch (const std::exception&) {
            throw InputError("bad party list '" + text + "'");
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ') flush();
        else cur += c;
    }
    flush();
    detail::check_party_set(out, n, "party list");
    return out;
}

// ---------------------------------------------------------------------------
// Subcommands

inline void cmd_classify(Context& ctx, const std::string& path) {
    const io::LoadedState s = load_state(ctx, path);
    const int n = s.n_qubits();
    SloccOptions so;
    if (ctx.g.tol) so.rank_relative = *ctx.g.tol;
    RankSearchOptions ro;
    ro.seed = ctx.g.seed;
    ro.rank_relative = so.rank_relative;
    if (ctx.g.restarts) ro.restarts = *ctx.g.restarts;
    SeparabilityOptions sep;
    ctx.report.parameters["tolerances"] = {{"rank_relative", so.rank_relative},
                                           {"tangle_threshold", so.tangle_threshold},
                                           {"ppt", sep.ppt_tol},
                                           {"file_check", ctx.g.file_tol}};
    ctx.report.parameters["rank_search"] = {{"restarts", ro.restarts}, {"iterations", ro.iterations},
                                            {"residual", ro.residual}};
    const json meta{{"rank_relative", so.rank_relative}, {"tangle_threshold", so.tangle_threshold}};
    if (s.pure && n == 3) {
        const SloccReport r = classify_slocc_3q_report(*s.pure, so);
        ctx.add("slocc_class", to_string(r.label), meta);
        ctx.add("local_ranks", r.local_ranks, meta);
        ctx.add("tangle", r.tangle, meta);
        if (r.boundary) ctx.flag("tolerance_boundary: a local-rank singular value or the tangle lies within two decades of its threshold");
    }
    if (s.pure && n <= 6) {
        const TensorRankBounds b = tensor_rank_bounds(*s.pure, ro);
        ctx.add("tensor_rank", io::to_json(b), meta);
        if (!b.exact && b.search_exhausted) ctx.flag("tensor_rank: search budget exhausted, only bounds reported");
    }
    if (n <= 4) {
        const SeparabilityReport rep = separability_report(s.rho, sep);
        ctx.add("separability", io::to_json(rep), {{"ppt", sep.ppt_tol}});
        ctx.add("hierarchy_label", to_string(rep.hierarchy), {{"ppt", sep.ppt_tol}});
        for (const auto& note : rep.notes) ctx.flag("separability: " + note);
    } else {
        ctx.flag("separability: skipped, more than 4 qubits");
    }
}

inline const std::vector<std::string>& measure_names() {
    static const std::vector<std::string> names{"entropy", "schmidt",     "global",     "geometric",
                                                "tangle",  "concurrence", "ree",        "localizable"};
    return names;
}

struct MeasureArgs {
    bool all = false;
    std::vector<std::string> which;
    std::string split;
    std::string pair;
    int grid = 16;
    int components = 0;
};

inline void cmd_measure(Context& ctx, const std::string& path, const MeasureArgs& a) {
    const io::LoadedState s = load_state(ctx, path);
    const int n = s.n_qubits();
    std::vector<std::string> which = a.which;
    if (a.all) {
        if (s.pure) {
            if (n >= 2) which.push_back("entropy");
            if (n <= 6) which.push_back("schmidt");
            if (n >= 2) which.push_back("global");
            if (n <= 6) which.push_back("geometric");
            if (n == 3) which.push_back("tangle");
            if (n == 2) which.push_back("concurrence");
        } else {
            if (n == 2) which.push_back("concurrence");
            if (n <= 3) which.push_back("ree");
        }
    }
    if (which.empty()) throw InputError("measure: pass --all or at least one --measure <name>");

    GeometricOptions geo;
    geo.seed = ctx.g.seed;
    if (ctx.g.restarts) geo.restarts = *ctx.g.restarts;
    if (ctx.g.tol) geo.improvement_tol = *ctx.g.tol;
    RelativeEntropyOptions ree;
    ree.seed = ctx.g.seed;
    ree.components = a.components;
    if (ctx.g.restarts) ree.restarts = *ctx.g.restarts;
    if (ctx.g.tol) ree.tol = *ctx.g.tol;
    RankSearchOptions ro;
    ro.seed = ctx.g.seed;
    if (ctx.g.restarts) ro.restarts = *ctx.g.restarts;
    LocalizableOptions lo;
    lo.grid_resolution = a.grid;
    if (ctx.g.tol) lo.refine_tol = *ctx.g.tol;
    ctx.report.parameters["geometric"] = {{"restarts", geo.restarts}, {"improvement_tol", geo.improvement_tol},
                                          {"max_sweeps", geo.max_sweeps}};
    ctx.report.parameters["relative_entropy"] = {{"restarts", ree.restarts}, {"components", ree.components},
                                                 {"max_iterations", ree.max_iterations}, {"epsilon", ree.epsilon},
                                                 {"tol", ree.tol}};
    ctx.report.parameters["rank_search"] = {{"restarts", ro.restarts}, {"iterations", ro.iterations},
                                            {"residual", ro.residual}, {"rank_relative", ro.rank_relative}};
    ctx.report.parameters["localizable"] = {{"grid", lo.grid_resolution}, {"refine_tol", lo.refine_tol}};

    for (const std::string& m : which) {
        if (m == "entropy") {
            const PureState& psi = require_pure(s, "entropy");
            const Split sp = a.split.empty() ? Split::make({{1}, detail::complement({1}, n)}, n) : parse_split(a.split, n);
            MeasureResult r = MeasureResult::exact("entropy_of_entanglement", entropy_of_entanglement(psi, sp));
            ctx.add_measure(r, {{"split", sp.label()}});
        } else if (m == "schmidt") {
            ctx.add_measure(schmidt_measure(require_pure(s, "schmidt"), ro),
                            {{"rank_relative", ro.rank_relative}, {"restarts", ro.restarts}});
        } else if (m == "global") {
            ctx.add_measure(MeasureResult::exact("global_entanglement", global_entanglement(require_pure(s, "global"))));
        } else if (m == "geometric") {
            const GeometricResult g = geometric_measure(require_pure(s, "geometric"), geo);
            MeasureResult r{"geometric_measure", g.distance, 0.0, g.distance, {}};
            if (!g.converged) {
                r.flags.push_back("non_convergence: sweep budget exhausted");
                ctx.non_converged = true;
            }
            ctx.add_measure(r, {{"restarts", geo.restarts}, {"overlap_sq", g.overlap_sq}}, io::to_json(g.closest));
        } else if (m == "tangle") {
            const PureState& psi = require_pure(s, "tangle");
            if (n != 3) throw InputError("tangle needs three qubits");
            const TangleTerms t = tangle_terms(psi);
            MeasureResult r = MeasureResult::exact("tangle", t.tangle);
            ctx.add_measure(r, {{"c2_1_23", t.c2_1_23}, {"c2_12", t.c2_12}, {"c2_13", t.c2_13}});
        } else if (m == "concurrence") {
            if (n != 2) throw InputError("concurrence needs two qubits");
            ctx.add_measure(MeasureResult::exact("concurrence", concurrence_2q(s.rho)));
        } else if (m == "ree") {
            const RelativeEntropyResult r = relative_entropy_of_entanglement_ub(s.rho, ree);
            MeasureResult mr{"relative_entropy_of_entanglement", r.value, 0.0, r.value, {"upper_bound"}};
            if (!r.converged) {
                mr.flags.push_back("non_convergence: iteration budget exhausted");
                ctx.non_converged = true;
            }
            json comps = json::array();
            for (std::size_t k = 0; k < r.ansatz.components.size(); ++k)
                comps.push_back({{"weight", r.ansatz.weights[k]}, {"locals", io::to_json(r.ansatz.components[k])}});
            ctx.add_measure(mr, {{"restarts", ree.restarts}, {"epsilon", ree.epsilon}}, comps);
        } else if (m == "localizable") {
            const PureState& psi = require_pure(s, "localizable");
            std::vector<int> pv = a.pair.empty() ? (n >= 3 ? std::vector<int>{2, 3} : std::vector<int>{1, 2})
                                                 : parse_party_list(a.pair, n);
            if (pv.size() != 2) throw InputError("--pair needs exactly two parties");
            const LocalizableResult lr = localizable_entanglement(psi, {pv[0], pv[1]}, lo);
            json bases = json::array();
            for (const auto& [party, ang] : lr.bases)
                bases.push_back({{"party", party}, {"theta", ang.first}, {"phi", ang.second}});
            MeasureResult r{"localizable_entanglement", lr.value, lr.value, 1.0, {"lower_bound_from_search"}};
            ctx.add_measure(r, {{"pair", pv}, {"grid", lo.grid_resolution}}, bases);

            // Outcome-averaged pair concurrence after X measurements on everyone else.
            std::vector<int> sorted = detail::sorted_unique(pv);
            const std::vector<int> others = detail::complement(sorted, n);
            if (!others.empty()) {
                std::vector<double> x_angles;
                for (std::size_t i = 0; i < others.size(); ++i) {
                    x_angles.push_back(kPi / 2);
                    x_angles.push_back(0.0);
                }
                const double cx = detail::average_pair_concurrence(psi, sorted, others, x_angles);
                ctx.add_measure(MeasureResult::exact("x_measurement_pair_concurrence", cx), {{"pair", sorted}});
                if (n == 3 && sorted == std::vector<int>{2, 3} && fidelity_pure(psi, states::w(3)) > 1 - 1e-9 &&
                    cx < 1 - 1e-6)
                    ctx.flag("discrepancy: X measurement of party 1 on |W> leaves pair (2,3) with average concurrence " +
                             std::to_string(cx) + ", not a Bell pair");
            }
        } else {
            throw InputError("unknown measure '" + m + "'");
        }
    }
}

inline void cmd_witness(Context& ctx, const std::string& path, const std::string& which, bool decompose) {
    const io::LoadedState s = load_state(ctx, path);
    if (s.n_qubits() != 3) throw InputError("witness: the GHZ and W witnesses act on three qubits");
    std::vector<Witness> ws;
    if (which == "ghz" || which == "all") ws.push_back(ghz_witness());
    if (which == "w" || which == "all") ws.push_back(w_witness());
    if (ws.empty()) throw InputError("witness: --which must be ghz, w or all");
    for (const Witness& w : ws) {
        const double v = evaluate(w, s.rho);
        json value{{"witness", w.target_class}, {"expectation", v},
                   {"verdict", v < 0 ? "negative: excludes the class the witness is non-negative on" : "non-negative: no conclusion"}};
        if (decompose) {
            const PauliDecomposition pd = pauli_decompose(w);
            value["pauli_terms"] = io::to_json(pd);
            value["setting_count"] = pd.setting_count();
            value["expectation_from_terms"] = pd.evaluate(s.rho);
        }
        ctx.add(w.target_class, value);
    }
}

inline void cmd_normal_form(Context& ctx, const std::string& path, const std::string& split) {
    const io::LoadedState s = load_state(ctx, path);
    const PureState& psi = require_pure(s, "normal-form");
    const int n = psi.n_qubits();
    if (n == 3 && split.empty()) {
        AcinOptions ao;
        if (ctx.g.tol) ao.min_fidelity = 1.0 - *ctx.g.tol;
        ctx.report.parameters["tolerances"] = {{"min_fidelity", ao.min_fidelity}, {"degenerate", ao.degenerate_tol}};
        const AcinForm f = acin_normal_form(psi, ao);
        ctx.add("acin_form", io::to_json(f), {{"min_fidelity", ao.min_fidelity}});
        ctx.add("lu_parameter_lower_bound", lu_parameter_lower_bound(3));
        ctx.add("slocc_parameter_lower_bound", slocc_parameter_lower_bound(3));
        return;
    }
    Split sp;
    if (!split.empty()) sp = parse_split(split, n);
    else if (n == 2) sp = Split::make({{1}, {2}}, 2);
    else throw InputError("normal-form: pass --split for a bipartite cut of " + std::to_string(n) + " qubits");
    const SchmidtForm2 f = schmidt_decompose(psi, sp);
    ctx.add("schmidt_form", io::to_json(f), {{"split", sp.label()}});
    ctx.add("schmidt_rank", f.schmidt_rank());
}

struct GraphArgs {
    std::string shape;
    int vertices = 0;
    std::string cut;
};

inline void report_graph_state(Context& ctx, const Graph& g, const std::string& cut) {
    const int n = g.n_vertices();
    const StabilizerGroup group = graph_generators(g);
    json gens = json::array();
    for (const auto& p : group.generators()) gens.push_back(p.str());
    ctx.add("graph", io::graph_to_json(g));
    ctx.add("connected", g.connected());
    ctx.add("generators", gens);
    if (n > 12) {
        ctx.flag("graph: dense state construction skipped above 12 vertices");
        return;
    }
    ctx.add("projector_rank", stabilizer_projector_rank(group));
    const PureState psi = graph_state(g);
    if (n <= 8) ctx.add("amplitudes", io::vector_to_json(psi.amplitudes()));
    if (!cut.empty()) {
        const Split sp = parse_split(cut, n);
        if (sp.size() != 2) throw InputError("--cut must be a bipartition");
        ctx.add("schmidt_rank", {{"cut", sp.label()}, {"rank", schmidt_rank_across_cut(psi, sp.blocks.front())}});
    } else if (n >= 2 && n <= 10) {
        json ranks = json::array();
        for (const auto& side : detail::bipartition_sides(n)) {
            const Split sp = Split::make({side, detail::complement(side, n)}, n);
            ranks.push_back({{"cut", sp.label()}, {"rank", schmidt_rank_across_cut(psi, side)}});
        }
        ctx.add("schmidt_ranks", ranks);
    }
}

inline void cmd_graph(Context& ctx, const std::string& path, const GraphArgs& a) {
    Graph g;
    if (!a.shape.empty()) {
        if (!path.empty()) throw InputError("graph: give either a graph file or --shape, not both");
        if (a.vertices < 1) throw InputError("graph: --shape needs --vertices >= 1");
        if (a.shape == "linear") g = Graph::linear(a.vertices);
        else if (a.shape == "ring") g = Graph::ring(a.vertices);
        else if (a.shape == "star") g = Graph::star(a.vertices);
        else if (a.shape == "complete") g = Graph::complete(a.vertices);
        else throw InputError("graph: --shape must be linear, ring, star or complete");
        ctx.report.inputs.push_back({"shape:" + a.shape + ":" + std::to_string(a.vertices), io::digest(io::graph_to_json(g).dump())});
    } else {
        if (path.empty()) throw InputError("graph: pass a graph file or --shape");
        const std::string text = io::read_file(path);
        ctx.report.inputs.push_back({path, io::digest(text)});
        g = io::graph_from_json(io::parse_json_text(text, path));
    }
    report_graph_state(ctx, g, a.cut);
}

inline void cmd_stabilizer(Context& ctx, const std::vector<std::string>& gens) {
    if (gens.empty()) throw InputError("stabilizer: pass the generators, e.g. XXX ZZI IZZ");
    const StabilizerGroup g = StabilizerGroup::parse(gens);
    ctx.report.inputs.push_back({"generators", io::digest(json(gens).dump())});
    json parsed = json::array(), reduced = json::array();
    for (const auto& p : g.generators()) parsed.push_back(p.str());
    const StabilizerGroup rr = row_reduced(g);
    for (const auto& p : rr.generators()) reduced.push_back(p.str());
    ctx.add("generators", parsed);
    ctx.add("row_reduced", reduced);
    if (g.n_qubits() > 12) {
        ctx.flag("stabilizer: dense state construction skipped above 12 qubits");
        return;
    }
    ctx.add("projector_rank", stabilizer_projector_rank(g));
    const PureState psi = stabilizer_state(g);
    if (g.n_qubits() <= 8) ctx.add("amplitudes", io::vector_to_json(psi.amplitudes()));
    if (g.n_qubits() >= 2 && g.n_qubits() <= 8) {
        json ghz_fid = fidelity_pure(psi, states::ghz(g.n_qubits()));
        ctx.add("fidelity_with_ghz", ghz_fid);
    }
}

struct MetrologyArgs {
    RamseyConfig cfg{0.0, 0.1, 1.0, 0.0, 4};
    bool optimize = false;
    bool sweep = false;
    double t_min = 1e-3;
    double t_max = 1.0;
    int points = 50;
    std::string csv_path;
    int grid = 24;
};

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "t,delta_omega0,scheme\n";
    os << std::setprecision(12);
    for (const auto& r : rows) os << r.t << ',' << r.delta_omega0 << ',' << r.scheme << '\n';
}

inline void cmd_metrology(Context& ctx, const MetrologyArgs& a, std::ostream& out, bool& csv_to_stdout) {
    const RamseyConfig& c = a.cfg;
    c.validate();
    ctx.report.inputs.push_back({"ramsey_config", io::digest(io::to_json(c).dump())});
    ctx.report.parameters["ramsey"] = io::to_json(c);
    ctx.add("shot_noise_limit", io::to_json(shot_noise_limit(c)));
    ctx.add("ghz_limit", io::to_json(ghz_limit(c)));
    if (c.n <= 10) {
        const double f_plus = quantum_fisher_information(states::plus(c.n), c.t, c.gamma);
        ctx.add("uncorrelated_qfi", io::to_json(make_report(f_plus, "uncorrelated", c)));
        if (c.n >= 2) {
            const double f_ghz = quantum_fisher_information(states::ghz(c.n), c.t, c.gamma);
            ctx.add("ghz_qfi", io::to_json(make_report(f_ghz, "ghz", c)));
        }
    }
    if (c.gamma > 0 && c.n <= 10) {
        const TimeOptimum tp = optimize_time(states::plus(c.n), c.gamma, c.T);
        ctx.add("uncorrelated_optimal_t", {{"t", tp.t}, {"delta_omega0", tp.delta_omega0}});
        if (c.n >= 2) {
            const TimeOptimum tg = optimize_time(states::ghz(c.n), c.gamma, c.T);
            ctx.add("ghz_optimal_t", {{"t", tg.t}, {"delta_omega0", tg.delta_omega0}});
        }
    }
    std::optional<ProbeFamily4> best;
    if (a.optimize) {
        ProbeBudget budget;
        budget.grid = a.grid;
        if (ctx.g.restarts) budget.restarts = *ctx.g.restarts;
        if (ctx.g.tol) budget.refine_tol = *ctx.g.tol;
        ctx.report.parameters["probe_budget"] = {{"grid", budget.grid}, {"restarts", budget.restarts},
                                                 {"refine_tol", budget.refine_tol}};
        const ProbeOptimization po = optimize_probe(c, budget, ctx.g.seed);
        best = po.family;
        ctx.add("probe_optimization",
                {{"lambdas", {po.family.lambda0, po.family.lambda1, po.family.lambda2}},
                 {"best", io::to_json(po.report)},
                 {"baseline", io::to_json(po.baseline)},
                 {"improvement", po.improvement},
                 {"target_improvement", 0.06},
                 {"meets_target", po.improvement >= 0.06}},
                {{"grid", budget.grid}, {"restarts", budget.restarts}});
        if (po.improvement < 0.06)
            ctx.flag("metrology: improvement " + std::to_string(po.improvement * 100) +
                     "% is below the 6% target under this dephasing model");
        if (!po.converged) {
            ctx.flag("metrology: probe refinement did not converge");
            ctx.non_converged = true;
        }
    }
    if (a.sweep) {
        const double t_max = std::min(a.t_max, c.T);
        std::vector<SweepRow> rows = uncertainty_sweep(states::plus(c.n), "uncorrelated", c.gamma, c.T, a.t_min, t_max, a.points);
        if (c.n >= 2) {
            auto r = uncertainty_sweep(states::ghz(c.n), "ghz", c.gamma, c.T, a.t_min, t_max, a.points);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        if (best) {
            auto r = uncertainty_sweep(probe_state_4(*best), "family4", c.gamma, c.T, a.t_min, t_max, a.points);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        if (!a.csv_path.empty()) {
            std::ofstream f(a.csv_path);
            if (!f) throw InputError("cannot write '" + a.csv_path + "'");
            write_csv(f, rows);
            ctx.add("sweep_csv", a.csv_path);
        } else if (ctx.g.json_output) {
            json arr = json::array();
            for (const auto& r : rows) arr.push_back({{"t", r.t}, {"delta_omega0", r.delta_omega0}, {"scheme", r.scheme}});
            ctx.add("sweep", arr);
        } else {
            write_csv(out, rows);
            csv_to_stdout = true;
        }
    }
}

inline void cmd_splits(Context& ctx, int n) {
    const std::vector<Split> sp = enumerate_splits(n);
    json labels = json::array();
    for (const auto& s : sp) labels.push_back(s.label());
    ctx.report.inputs.push_back({"n=" + std::to_string(n), io::digest(std::to_string(n))});
    ctx.add("count", sp.size());
    ctx.add("splits", labels);
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_value(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream ss;
        ss << std::setprecision(12) << v.get<double>();
        return ss.str();
    }
    return v.dump();
}

inline void render_text(const io::Report& r, std::ostream& out) {
    out << "command: " << r.command << '\n';
    for (const auto& in : r.inputs) out << "input: " << in.path << " (" << in.digest << ")\n";
    for (const auto& e : r.results) {
        if (e["name"] == "splits") {
            std::string line;
            for (const auto& s : e["value"]) line += (line.empty() ? "" : ", ") + s.get<std::string>();
            out << "splits: " << line << '\n';
            continue;
        }
        out << e["name"].get<std::string>() << ": " << render_value(e["value"]);
        if (e.contains("lower") && e["lower"] != e["upper"])
            out << " [" << render_value(e["lower"]) << ", " << render_value(e["upper"]) << "]";
        out << '\n';
    }
    if (!r.parameters.empty()) out << "parameters: " << r.parameters.dump() << '\n';
    for (const auto& f : r.flags) out << "flag: " << f << '\n';
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"mpent: multipartite entanglement toolkit", "mpent"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::optional<double> tol;
    std::optional<int> restarts;
    app.add_flag("--json", g.json_output, "Emit the report as JSON");
    app.add_option("--seed", g.seed, "Seed for every randomized search");
    app.add_option("--tol", tol, "Override the command's decision tolerance");
    app.add_option("--restarts", restarts, "Override optimizer restart counts");
    app.add_option("--builtin", g.builtin, "Built-in input state")->check(CLI::IsMember(builtin_names()));
    app.add_option("--file-tol", g.file_tol, "Norm/trace tolerance for state files");

    std::string path;
    auto* classify = app.add_subcommand("classify", "SLOCC class, tensor rank and separability report");
    classify->add_option("state", path, "State file");

    MeasureArgs ma;
    auto* measure = app.add_subcommand("measure", "Entanglement measures");
    measure->add_option("state", path, "State file");
    measure->add_flag("--all", ma.all, "Every measure applicable to the input");
    measure->add_option("--measure", ma.which, "Measure name (repeatable)")->check(CLI::IsMember(measure_names()));
    measure->add_option("--split", ma.split, "Bipartition for the entropy, e.g. 1-23");
    measure->add_option("--pair", ma.pair, "Pair for localizable entanglement, e.g. 2,3");
    measure->add_option("--grid", ma.grid, "Grid points per angle for localizable entanglement");
    measure->add_option("--components", ma.components, "Separable ansatz size for the relative entropy (0: 2^N)");

    std::string which = "all";
    bool decompose = false;
    auto* witness = app.add_subcommand("witness", "GHZ and W witness expectations");
    witness->add_option("state", path, "State file");
    witness->add_option("--which", which, "ghz, w or all");
    witness->add_flag("--decompose", decompose, "Include the Pauli decomposition");

    std::string split;
    auto* nf = app.add_subcommand("normal-form", "Three-qubit normal form or bipartite Schmidt form");
    nf->add_option("state", path, "State file");
    nf->add_option("--split", split, "Bipartition, e.g. 12-3");

    GraphArgs ga;
    auto* graph = app.add_subcommand("graph", "Graph state from a graph file or a named shape");
    graph->add_option("graph", path, "Graph file");
    graph->add_option("--shape", ga.shape, "linear, ring, star or complete");
    graph->add_option("--vertices", ga.vertices, "Vertex count for --shape");
    graph->add_option("--cut", ga.cut, "Only this bipartition, e.g. 12-34");

    std::vector<std::string> gens;
    auto* stab = app.add_subcommand("stabilizer", "Stabilizer state from Pauli generators");
    stab->add_option("generators", gens, "Generators such as XXX ZZI IZZ");

    MetrologyArgs mt;
    auto* metro = app.add_subcommand("metrology", "Ramsey frequency-estimation limits, optimization and sweeps");
    metro->add_option("--n", mt.cfg.n, "Probe qubits");
    metro->add_option("--t", mt.cfg.t, "Interrogation time");
    metro->add_option("--T", mt.cfg.T, "Total time");
    metro->add_option("--gamma", mt.cfg.gamma, "Dephasing rate");
    metro->add_option("--omega0", mt.cfg.omega0, "Atomic frequency");
    metro->add_flag("--optimize", mt.optimize, "Optimize the four-qubit probe family (needs gamma > 0)");
    metro->add_option("--grid", mt.grid, "Grid points per angle for --optimize");
    metro->add_flag("--sweep", mt.sweep, "Sweep t and emit CSV (t, delta_omega0, scheme)");
    metro->add_option("--t-min", mt.t_min, "Sweep start");
    metro->add_option("--t-max", mt.t_max, "Sweep end (capped at T)");
    metro->add_option("--points", mt.points, "Sweep points");
    metro->add_option("--csv", mt.csv_path, "Write the sweep CSV to this file");

    int split_n = 3;
    auto* splits = app.add_subcommand("splits", "Enumerate the splits of N parties");
    splits->add_option("--n", split_n, "Number of parties");

    // First bare word must name a subcommand.
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("-", 0) == 0) {
            if (a.find('=') == std::string::npos && a != "--json" && a != "-h" && a != "--help") ++i;
            continue;
        }
        if (!app.get_subcommand_no_throw(a)) {
            err << "error: unknown subcommand '" << a << "'\n\n" << app.help();
            return kInputError;
        }
        break;
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kInputError;
    }

    Context ctx;
    g.tol = tol;
    g.restarts = restarts;
    ctx.g = g;
    ctx.report.command = app.get_subcommands().front()->get_name();
    ctx.report.parameters["seed"] = g.seed;
    ctx.report.parameters["file_check_tol"] = g.file_tol;
    if (tol) ctx.report.parameters["tol_override"] = *tol;
    if (restarts) ctx.report.parameters["restarts_override"] = *restarts;
    bool csv_to_stdout = false;
    try {
        if (classify->parsed()) cmd_classify(ctx, path);
        else if (measure->parsed()) cmd_measure(ctx, path, ma);
        else if (witness->parsed()) cmd_witness(ctx, path, which, decompose);
        else if (nf->parsed()) cmd_normal_form(ctx, path, split);
        else if (graph->parsed()) cmd_graph(ctx, path, ga);
        else if (stab->parsed()) cmd_stabilizer(ctx, gens);
        else if (metro->parsed()) cmd_metrology(ctx, mt, out, csv_to_stdout);
        else if (splits->parsed()) cmd_splits(ctx, split_n);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNonConvergence;
    }

    if (g.json_output) out << ctx.report.to_json().dump(2) << '\n';
    else if (csv_to_stdout) render_text(ctx.report, err);
    else render_text(ctx.report, out);
    return ctx.non_converged ? kNonConvergence : kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace mpent::cli
