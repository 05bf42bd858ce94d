// Copyright 2026 The QMV Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmv/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qmv/errors.hpp"

namespace qmv {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
    throw InputError(path + ": " + msg);
}

std::string child(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

std::string item(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const json &object_at(const json &j, const std::string &path,
                      std::initializer_list<const char *> allowed) {
    if (!j.is_object()) fail(path.empty() ? "config" : path, "expected an object");
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto &[k, v] : j.items()) {
        if (!keys.count(k)) fail(child(path, k), "unknown field");
    }
    return j;
}

const json *find(const json &j, const char *key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

const json &require(const json &j, const char *key, const std::string &path) {
    const json *v = find(j, key);
    if (!v) fail(child(path, key), "required field missing");
    return *v;
}

double number(const json &j, const std::string &path) {
    if (!j.is_number()) fail(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

int integer(const json &j, const std::string &path, int min_value) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    auto v = j.get<long long>();
    if (v < min_value || v > 1'000'000'000) {
        fail(path, "must be an integer >= " + std::to_string(min_value));
    }
    return static_cast<int>(v);
}

std::string text(const json &j, const std::string &path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

Site site_at(const json &j, const std::string &path, const Lattice &lattice) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
    Site s{integer(j[0], item(path, 0), 0), integer(j[1], item(path, 1), 0)};
    if (!lattice.contains(s)) {
        fail(path, "site (" + std::to_string(s.x) + ", " + std::to_string(s.y) +
                       ") lies outside the " + std::to_string(lattice.nx()) + "x" +
                       std::to_string(lattice.ny()) + " lattice");
    }
    return s;
}

Schedule schedule_at(const json &j, const std::string &path) {
    if (!j.is_object()) fail(path, "expected an object");
    const std::string type = text(require(j, "type", path), child(path, "type"));
    if (type == "constant") {
        object_at(j, path, {"type", "value"});
        return Schedule::constant(number(require(j, "value", path), child(path, "value")));
    }
    if (type == "harmonic") {
        object_at(j, path, {"type", "a", "b", "omega", "phi"});
        auto opt = [&](const char *k) {
            const json *v = find(j, k);
            return v ? number(*v, child(path, k)) : 0.0;
        };
        return Schedule::harmonic(opt("a"), opt("b"), opt("omega"), opt("phi"));
    }
    if (type == "piecewise_linear") {
        object_at(j, path, {"type", "knots"});
        const std::string kp = child(path, "knots");
        const json &knots = require(j, "knots", path);
        if (!knots.is_array() || knots.empty()) fail(kp, "expected a non-empty array of [t, value]");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const json &k = knots[i];
            if (!k.is_array() || k.size() != 2) fail(item(kp, i), "expected [t, value]");
            pts.emplace_back(number(k[0], item(kp, i)), number(k[1], item(kp, i)));
        }
        try {
            return Schedule::piecewise_linear(std::move(pts));
        } catch (const InputError &e) {
            fail(kp, e.what());
        }
    }
    fail(child(path, "type"), "unknown schedule type '" + type +
                                  "' (expected constant, harmonic or piecewise_linear)");
}

TwoSiteTerm pauli_at(const json &j, const std::string &path) {
    if (!j.is_object() || j.empty()) fail(path, "expected an object of two-letter Pauli labels");
    TwoSiteTerm t;
    for (const auto &[k, v] : j.items()) {
        const std::string kp = child(path, k);
        if (k.size() != 2 || k.find_first_not_of("IXYZ") != std::string::npos) {
            fail(kp, "expected a two-letter label over I, X, Y, Z");
        }
        t += TwoSiteTerm::pauli(k.c_str(), number(v, kp));
    }
    return t;
}

SiteOperator site_operator_at(const json &j, const std::string &path) {
    if (j.is_string()) {
        const std::string label = j.get<std::string>();
        if (label.size() != 1 || label.find_first_not_of("IXYZ") != std::string::npos) {
            fail(path, "expected one of I, X, Y, Z");
        }
        return SiteOperator::from_label(label[0]);
    }
    object_at(j, path, {"I", "X", "Y", "Z"});
    auto opt = [&](const char *k) {
        const json *v = find(j, k);
        return v ? number(*v, child(path, k)) : 0.0;
    };
    SiteOperator op{opt("I"), opt("X"), opt("Y"), opt("Z")};
    if (op.norm() > 1.0 + 1e-12) {
        fail(path, "operator norm " + std::to_string(op.norm()) + " exceeds 1");
    }
    return op;
}

Hamiltonian hamiltonian_at(const json &j, const std::string &path, const Lattice &lattice) {
    object_at(j, path, {"terms", "default_term"});
    Hamiltonian h(lattice);
    std::set<Edge> listed;
    if (const json *terms = find(j, "terms")) {
        const std::string tp = child(path, "terms");
        if (!terms->is_array()) fail(tp, "expected an array");
        for (std::size_t i = 0; i < terms->size(); ++i) {
            const std::string p = item(tp, i);
            const json &t = object_at((*terms)[i], p, {"edge", "pauli", "schedule"});
            const json &edge = require(t, "edge", p);
            const std::string ep = child(p, "edge");
            if (!edge.is_array() || edge.size() != 2) fail(ep, "expected [[x, y], [x, y]]");
            const int a = lattice.index(site_at(edge[0], item(ep, 0), lattice));
            const int b = lattice.index(site_at(edge[1], item(ep, 1), lattice));
            if (!lattice.is_edge(a, b)) fail(ep, "sites are not nearest neighbours");
            const TwoSiteTerm term = pauli_at(require(t, "pauli", p), child(p, "pauli"));
            const json *sched = find(t, "schedule");
            h.add_term(a, b, sched ? schedule_at(*sched, child(p, "schedule")) : Schedule::constant(1.0),
                       term);
            listed.insert(Edge{std::min(a, b), std::max(a, b)});
        }
    }
    if (const json *def = find(j, "default_term")) {
        const std::string p = child(path, "default_term");
        object_at(*def, p, {"pauli", "schedule"});
        const TwoSiteTerm term = pauli_at(require(*def, "pauli", p), child(p, "pauli"));
        const json *sched = find(*def, "schedule");
        const Schedule s = sched ? schedule_at(*sched, child(p, "schedule")) : Schedule::constant(1.0);
        for (const Edge &e : lattice.edges()) {
            if (!listed.count(e)) h.add_term(e.first, e.second, s, term);
        }
    }
    return h;
}

Observable observable_at(const json *j, const Lattice &lattice) {
    const std::string path = "observable";
    if (!j) return Observable(lattice, SiteOperator::from_label('Z'));
    object_at(*j, path, {"default", "sites"});
    const json *def = find(*j, "default");
    Observable obs(lattice, def ? site_operator_at(*def, child(path, "default")) : SiteOperator::from_label('Z'));
    if (const json *sites = find(*j, "sites")) {
        const std::string sp = child(path, "sites");
        if (!sites->is_array()) fail(sp, "expected an array");
        for (std::size_t i = 0; i < sites->size(); ++i) {
            const std::string p = item(sp, i);
            const json &s = object_at((*sites)[i], p, {"site", "op"});
            const int idx = lattice.index(site_at(require(s, "site", p), child(p, "site"), lattice));
            obs.set(idx, site_operator_at(require(s, "op", p), child(p, "op")));
        }
    }
    return obs;
}

void solver_at(const json &j, SolverOptions &solver) {
    const std::string path = "solver";
    object_at(j, path, {"method", "steps", "tol", "sampling"});
    if (const json *m = find(j, "method")) {
        try {
            solver.method = parse_method(text(*m, child(path, "method")));
        } catch (const InputError &e) {
            fail(child(path, "method"), e.what());
        }
    }
    if (const json *s = find(j, "steps")) solver.steps = integer(*s, child(path, "steps"), 1);
    if (const json *t = find(j, "tol")) {
        double tol = number(*t, child(path, "tol"));
        if (!(tol > 0.0)) fail(child(path, "tol"), "must be positive");
        solver.tol = tol;
    }
    if (const json *s = find(j, "sampling")) {
        const std::string v = text(*s, child(path, "sampling"));
        if (v == "right") {
            solver.sampling = TrotterSampling::kRightEndpoint;
        } else if (v == "midpoint") {
            solver.sampling = TrotterSampling::kMidpoint;
        } else {
            fail(child(path, "sampling"), "expected right or midpoint");
        }
    }
}

void backend_at(const json &j, MeanValueOptions &opt, int &oracle_cap) {
    const std::string path = "backend";
    object_at(j, path,
              {"contraction", "lightcone_cap", "dense_cap", "oracle_cap", "lr_fraction", "radius",
               "truncation"});
    if (const json *c = find(j, "contraction")) {
        try {
            opt.backend = parse_backend(text(*c, child(path, "contraction")));
        } catch (const InputError &e) {
            fail(child(path, "contraction"), e.what());
        }
    }
    if (const json *v = find(j, "lightcone_cap")) opt.lightcone_cap = integer(*v, child(path, "lightcone_cap"), 1);
    if (const json *v = find(j, "dense_cap")) opt.dense_cap = integer(*v, child(path, "dense_cap"), 1);
    if (const json *v = find(j, "oracle_cap")) oracle_cap = integer(*v, child(path, "oracle_cap"), 1);
    if (const json *v = find(j, "lr_fraction")) {
        opt.lr_fraction = number(*v, child(path, "lr_fraction"));
        if (!(opt.lr_fraction > 0.0 && opt.lr_fraction < 1.0)) {
            fail(child(path, "lr_fraction"), "must lie strictly between 0 and 1");
        }
    }
    if (const json *v = find(j, "radius")) opt.radius = integer(*v, child(path, "radius"), 1);
    if (const json *v = find(j, "truncation")) {
        opt.truncation.rel_cutoff = number(*v, child(path, "truncation"));
        if (!(opt.truncation.rel_cutoff >= 0.0 && opt.truncation.rel_cutoff < 1.0)) {
            fail(child(path, "truncation"), "must lie in [0, 1)");
        }
    }
}

BenchConfig bench_at(const json &j) {
    const std::string path = "bench";
    object_at(j, path,
              {"qubits", "instances", "repetitions", "trotter_steps", "rk4_steps", "dp5_tol", "time",
               "seed"});
    BenchConfig b;
    if (const json *q = find(j, "qubits")) {
        const std::string qp = child(path, "qubits");
        if (!q->is_array() || q->empty()) fail(qp, "expected a non-empty array of qubit counts");
        b.qubits.clear();
        for (std::size_t i = 0; i < q->size(); ++i) {
            int m = integer((*q)[i], item(qp, i), 2);
            if (m > 12) fail(item(qp, i), "at most 12 qubits");
            b.qubits.push_back(m);
        }
    }
    if (const json *v = find(j, "instances")) b.instances = integer(*v, child(path, "instances"), 1);
    if (const json *v = find(j, "repetitions")) b.repetitions = integer(*v, child(path, "repetitions"), 1);
    if (const json *v = find(j, "trotter_steps")) b.trotter_steps = integer(*v, child(path, "trotter_steps"), 1);
    if (const json *v = find(j, "rk4_steps")) b.rk4_steps = integer(*v, child(path, "rk4_steps"), 1);
    if (const json *v = find(j, "dp5_tol")) {
        b.dp5_tol = number(*v, child(path, "dp5_tol"));
        if (!(b.dp5_tol > 0.0)) fail(child(path, "dp5_tol"), "must be positive");
    }
    if (const json *v = find(j, "time")) {
        b.time = number(*v, child(path, "time"));
        if (!(b.time > 0.0)) fail(child(path, "time"), "must be positive");
    }
    if (const json *v = find(j, "seed")) b.seed = static_cast<unsigned long long>(integer(*v, child(path, "seed"), 0));
    return b;
}

}  // namespace

RunConfig parse_config(const std::string &source) {
    json root;
    try {
        root = json::parse(source);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("config: malformed JSON: ") + e.what());
    }
    object_at(root, "", {"lattice", "time", "delta", "hamiltonian", "observable", "solver", "backend", "bench"});

    const json &lat = object_at(require(root, "lattice", ""), "lattice", {"nx", "ny"});
    const int nx = integer(require(lat, "nx", "lattice"), "lattice.nx", 1);
    const int ny = integer(require(lat, "ny", "lattice"), "lattice.ny", 1);
    if (static_cast<long long>(nx) * ny > 4096) fail("lattice", "at most 4096 sites");
    const Lattice lattice(nx, ny);

    MeanValueOptions opt;
    opt.time = number(require(root, "time", ""), "time");
    if (opt.time < 0.0) fail("time", "must be non-negative");
    if (const json *d = find(root, "delta")) {
        opt.delta = number(*d, "delta");
        if (!(opt.delta > 0.0)) fail("delta", "must be positive");
    }

    const json *hj = find(root, "hamiltonian");
    Hamiltonian h = hj ? hamiltonian_at(*hj, "hamiltonian", lattice) : Hamiltonian(lattice);
    Observable obs = observable_at(find(root, "observable"), lattice);
    if (const json *s = find(root, "solver")) solver_at(*s, opt.solver);
    int oracle_cap = kDefaultOracleCap;
    if (const json *b = find(root, "backend")) backend_at(*b, opt, oracle_cap);
    BenchConfig bench;
    if (const json *b = find(root, "bench")) bench = bench_at(*b);

    return RunConfig{std::move(h), std::move(obs), opt, oracle_cap, std::move(bench)};
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string result_json(const MeanValueReport &r) {
    json j;
    j["mu_estimate"] = r.mu;
    j["im_residual"] = r.im_residual;
    j["lightcone_radius"] = r.radius;
    j["budget"] = {
        {"lr", r.certified_lr},
        {"cs", r.certified_cs},
        {"ssc", r.budget.eps_ssc},
        {"certified_total", r.certified_total()},
        {"delta", r.budget.delta_total},
        {"lr_allocated", r.budget.eps_lr_total},
        {"cs_allocated", r.budget.eps_cs_total},
        {"cs_heuristic", r.cs_heuristic},
    };
    j["per_stage_timings_seconds"] = {
        {"lightcones", r.timings.lightcones},
        {"strip_states", r.timings.strip_states},
        {"contraction", r.timings.contraction},
        {"total", r.timings.total},
    };
    j["backend"] = {{"contraction", to_string(r.backend)}, {"max_bond", r.max_bond}};
    j["solver"] = {
        {"method", to_string(r.method)},
        {"max_steps", r.max_steps},
        {"total_steps", r.total_steps},
        {"max_unitarity_defect", r.max_unitarity_defect},
        {"max_lightcone_qubits", r.max_support},
        {"coupling_bound", r.coupling},
        {"degree", r.degree},
    };
    return j.dump(2) + "\n";
}

std::string oracle_json(const OracleResult &r) {
    json j;
    j["mu_exact"] = r.mu;
    j["im_residual"] = r.mu_complex.imag();
    j["norm_residual"] = r.norm_residual;
    j["components"] = r.components;
    j["largest_component"] = r.largest_component;
    return j.dump(2) + "\n";
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

}  // namespace qmv
