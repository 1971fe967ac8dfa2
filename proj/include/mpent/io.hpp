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

// JSON file formats and report serialization.
//
// State file:
//   {"n_qubits": N, "kind": "pure",  "amplitudes": [[re, im], ...]}      (2^N entries)
//   {"n_qubits": N, "kind": "mixed", "matrix": [[[re, im], ...], ...]}   (2^N rows)
// Graph file:
//   {"n_vertices": N, "edges": [[a, b], ...]}                            (1-based)
//
// Reports:
//   {"command": ..., "inputs": [{"path", "digest"}], "parameters": {...},
//    "results": [{"name", "value", ...}], "flags": [...]}

#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "mpent/classification.hpp"
#include "mpent/core_states.hpp"
#include "mpent/measures.hpp"
#include "mpent/metrology.hpp"
#include "mpent/normal_forms.hpp"
#include "mpent/stabilizer_graph.hpp"
#include "mpent/witnesses.hpp"

namespace mpent::io {

using json = nlohmann::json;

/// A state read from a file: pure states also carry their projector.
struct LoadedState {
    std::optional<PureState> pure;
    DensityOperator rho;

    int n_qubits() const { return rho.n_qubits(); }
};

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json vector_to_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
    return a;
}

inline json state_to_json(const PureState& psi) {
    return {{"n_qubits", psi.n_qubits()}, {"kind", "pure"}, {"amplitudes", vector_to_json(psi.amplitudes())}};
}

inline json state_to_json(const DensityOperator& rho) {
    return {{"n_qubits", rho.n_qubits()}, {"kind", "mixed"}, {"matrix", matrix_to_json(rho.matrix())}};
}

/// Parses the state file format. Norm and trace deviations up to `tol` are
/// renormalized away; larger ones are rejected.
inline LoadedState state_from_json(const json& j, double tol = kDefaultTol.file_check) {
    if (!j.is_object()) throw InputError("state file: top level must be an object");
    if (!j.contains("n_qubits") || !j["n_qubits"].is_number_integer()) throw InputError("state file: missing integer n_qubits");
    if (!j.contains("kind") || !j["kind"].is_string()) throw InputError("state file: missing kind");
    const int n = j["n_qubits"].get<int>();
    if (n < 1 || n > 14) throw InputError("state file: n_qubits must be in [1, 14]");
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "pure") {
        if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) throw InputError("state file: missing amplitudes");
        const json& a = j["amplitudes"];
        if (static_cast<Eigen::Index>(a.size()) != d)
            throw InputError("state file: expected " + std::to_string(d) + " amplitudes, got " + std::to_string(a.size()));
        Vec v(d);
        for (Eigen::Index i = 0; i < d; ++i) v(i) = complex_from_json(a[static_cast<std::size_t>(i)]);
        const double nrm = v.norm();
        if (std::abs(nrm - 1.0) > tol)
            throw InputError("state file: amplitude norm is " + std::to_string(nrm) + ", outside 1 +- " + std::to_string(tol));
        PureState psi = PureState::normalized(n, v);
        return {psi, DensityOperator(psi)};
    }
    if (kind == "mixed") {
        if (!j.contains("matrix") || !j["matrix"].is_array()) throw InputError("state file: missing matrix");
        const json& rows = j["matrix"];
        if (static_cast<Eigen::Index>(rows.size()) != d) throw InputError("state file: matrix must have 2^n rows");
        Mat m(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            const json& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
                throw InputError("state file: matrix must have 2^n columns");
            for (Eigen::Index c = 0; c < d; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
        const double tr = m.trace().real();
        if (std::abs(tr - 1.0) > tol)
            throw InputError("state file: trace is " + std::to_string(tr) + ", outside 1 +- " + std::to_string(tol));
        if (hermiticity_defect(m) > tol) throw InputError("state file: matrix is not Hermitian");
        m = 0.5 * (m + m.adjoint());
        m /= m.trace().real();
        Tolerances t;
        t.positivity = tol;
        return {std::nullopt, DensityOperator(n, m, t)};
    }
    throw InputError("state file: kind must be \"pure\" or \"mixed\"");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(what + ": invalid JSON: " + e.what());
    }
}

inline json graph_to_json(const Graph& g) {
    json e = json::array();
    for (auto [a, b] : g.edges()) e.push_back({a, b});
    return {{"n_vertices", g.n_vertices()}, {"edges", e}};
}

inline Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n_vertices") || !j["n_vertices"].is_number_integer())
        throw InputError("graph file: missing integer n_vertices");
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw InputError("graph file: edges must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw InputError("graph file: each edge must be [a, b]");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    return Graph(j["n_vertices"].get<int>(), edges);
}

/// FNV-1a 64-bit digest, hex encoded; used to identify input files in reports.
inline std::string digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream ss;
    ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

// ---------------------------------------------------------------------------
// Result serialization

inline json to_json(const MeasureResult& m) {
    return {{"name", m.name}, {"measure_name", m.name}, {"value", m.value},
            {"lower", m.lower}, {"upper", m.upper}, {"flags", m.flags}};
}

inline json to_json(const AcinForm& f) {
    json u = json::array();
    for (const auto& m : f.local_unitaries) u.push_back(matrix_to_json(m));
    return {{"lambdas", f.lambdas}, {"phi", f.phi}, {"unitaries", u},
            {"reconstruction_fidelity", f.reconstruction_fidelity}};
}

inline json to_json(const SchmidtForm2& s) {
    json j{{"side_a", s.side_a}, {"side_b", s.side_b}, {"coefficients", s.coefficients},
           {"unitaries", json::array({matrix_to_json(s.local_unitaries[0]), matrix_to_json(s.local_unitaries[1])})}};
    j["theta"] = s.theta ? json(*s.theta) : json(nullptr);
    return j;
}

inline json to_json(const SloccReport& r) {
    return {{"label", to_string(r.label)}, {"local_ranks", r.local_ranks}, {"tangle", r.tangle}, {"boundary", r.boundary}};
}

inline json to_json(const TensorRankBounds& b) {
    json j{{"lower", b.lower}, {"upper", b.upper}, {"schmidt_lower", b.schmidt_lower},
           {"search_exhausted", b.search_exhausted}};
    j["exact"] = b.exact ? json(*b.exact) : json(nullptr);
    return j;
}

inline json to_json(const SeparabilityReport& r) {
    json splits = json::array();
    for (const auto& s : r.splits) {
        json e{{"split", s.split.label()}, {"verdict", to_string(s.verdict)}, {"min_ppt_eigenvalue", s.min_ppt_eigenvalue}};
        if (!s.certified_via.empty()) e["certified_via"] = s.certified_via;
        splits.push_back(std::move(e));
    }
    json j{{"splits", splits}, {"hierarchy_label", to_string(r.hierarchy)}, {"notes", r.notes}};
    if (r.ghz_witness_value) j["ghz_witness_value"] = *r.ghz_witness_value;
    if (r.w_witness_value) j["w_witness_value"] = *r.w_witness_value;
    return j;
}

inline json to_json(const PauliDecomposition& p) {
    json terms = json::array();
    for (const auto& t : p.terms) terms.push_back({{"coefficient", t.coefficient}, {"labels", t.labels}});
    return terms;
}

inline json to_json(const RamseyConfig& c) {
    return {{"omega0", c.omega0}, {"t", c.t}, {"T", c.T}, {"gamma", c.gamma}, {"n", c.n}};
}

inline json to_json(const UncertaintyReport& r) {
    return {{"delta_omega0", r.delta_omega0}, {"fisher_information", r.fisher_information},
            {"scheme", r.scheme}, {"resources", to_json(r.resources)}};
}

inline json to_json(const ProductAnsatz& a) {
    json v = json::array();
    for (const auto& x : a.local_vectors) v.push_back(vector_to_json(x));
    return v;
}

// ---------------------------------------------------------------------------
// Reports

struct InputRecord {
    std::string path;
    std::string digest;
};

struct Report {
    std::string command;
    std::vector<InputRecord> inputs;
    json parameters = json::object();
    json results = json::array();
    std::vector<std::string> flags;

    void add(const std::string& name, json value) {
        results.push_back({{"name", name}, {"value", std::move(value)}});
    }

    void add_entry(json entry) { results.push_back(std::move(entry)); }

    json to_json() const {
        json in = json::array();
        for (const auto& r : inputs) in.push_back({{"path", r.path}, {"digest", r.digest}});
        return {{"command", command}, {"inputs", in}, {"parameters", parameters}, {"results", results}, {"flags", flags}};
    }
};

/// Checks the report schema; returns a description of the first problem, or
/// nullopt if the document is a valid report.
inline std::optional<std::string> validate_report(const json& j) {
    if (!j.is_object()) return "report must be an object";
    for (const char* key : {"command", "inputs", "parameters", "results", "flags"})
        if (!j.contains(key)) return std::string("missing field ") + key;
    if (!j["command"].is_string()) return "command must be a string";
    if (!j["inputs"].is_array()) return "inputs must be an array";
    for (const auto& in : j["inputs"])
        if (!in.is_object() || !in.contains("path") || !in.contains("digest") || !in["path"].is_string() ||
            !in["digest"].is_string())
            return "each input needs string path and digest";
    if (!j["parameters"].is_object()) return "parameters must be an object";
    if (!j["results"].is_array()) return "results must be an array";
    for (const auto& r : j["results"]) {
        if (!r.is_object() || !r.contains("name") || !r["name"].is_string() || !r.contains("value"))
            return "each result needs a string name and a value";
        if (r.contains("measure_name"))
            for (const char* key : {"lower", "upper", "flags"})
                if (!r.contains(key)) return std::string("measure result missing ") + key;
    }
    if (!j["flags"].is_array()) return "flags must be an array";
    for (const auto& f : j["flags"])
        if (!f.is_string()) return "flags must be strings";
    return std::nullopt;
}

inline Report report_from_json(const json& j) {
    if (auto err = validate_report(j)) throw InputError("report: " + *err);
    Report r;
    r.command = j["command"].get<std::string>();
    for (const auto& in : j["inputs"]) r.inputs.push_back({in["path"].get<std::string>(), in["digest"].get<std::string>()});
    r.parameters = j["parameters"];
    r.results = j["results"];
    r.flags = j["flags"].get<std::vector<std::string>>();
    return r;
}

}  // namespace mpent::io
