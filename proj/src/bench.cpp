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

#include "qmv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qmv/errors.hpp"

namespace qmv {

const std::vector<std::string> &bench_columns() {
    static const std::vector<std::string> cols{"method",           "qubits",
                                               "repetitions",      "min_wall_seconds",
                                               "mean_wall_seconds", "error_vs_reference",
                                               "peak_matrix_bytes"};
    return cols;
}

RegionHamiltonian random_chain(int qubits, std::mt19937_64 &rng) {
    if (qubits < 2) throw InputError("bench instances need at least 2 qubits");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const Lattice line(qubits, 1);
    Hamiltonian h(line);
    for (const Edge &e : line.edges()) {
        std::array<double, 16> c{};
        for (std::size_t k = 1; k < c.size(); ++k) c[k] = unit(rng);
        TwoSiteTerm t(c);
        const double norm = t.op_norm();
        for (auto &v : c) v /= norm;
        const double a = unit(rng);
        const double b = unit(rng);
        const double omega = freq(rng);
        const double phi = phase(rng);
        h.add_term(e.first, e.second, Schedule::harmonic(a, b, omega, phi), TwoSiteTerm(c));
    }
    return on_region(h, Region::whole(line));
}

std::size_t peak_matrix_bytes(Method method, int qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    const std::size_t mat = dim * dim * sizeof(Complex);
    switch (method) {
    case Method::kTrotter:
        // product, step exponential, eigenvectors, Hamiltonian
        return 4 * mat;
    case Method::kRk4:
        // state, four stages, scratch
        return 6 * mat;
    case Method::kDp5:
        // state, seven stages, scratch, candidate, error estimate
        return 11 * mat;
    }
    return 0;
}

PropagatorResult bench_propagate(const RegionHamiltonian &h, Method method, const BenchConfig &config) {
    switch (method) {
    case Method::kTrotter:
        return trotter_propagate(h, config.time, config.trotter_steps, TrotterSampling::kRightEndpoint,
                                 h.num_qubits());
    case Method::kRk4:
        return ode_propagate(h, config.time, OdeOptions{Method::kRk4, config.rk4_steps, 0.0},
                             h.num_qubits());
    case Method::kDp5:
        return ode_propagate(h, config.time, OdeOptions{Method::kDp5, 0, config.dp5_tol},
                             h.num_qubits());
    }
    throw InputError("unknown method");
}

std::vector<BenchRow> run_bench(const BenchConfig &config, const std::vector<Method> &methods) {
    using Clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    for (int m : config.qubits) {
        std::mt19937_64 rng(config.seed + static_cast<unsigned long long>(m));
        std::vector<RegionHamiltonian> instances;
        std::vector<Matrix> references;
        for (int i = 0; i < config.instances; ++i) {
            instances.push_back(random_chain(m, rng));
            references.push_back(ode_propagate(instances.back(), config.time,
                                               OdeOptions{Method::kDp5, 0, kBenchReferenceTol}, m)
                                     .matrix);
        }
        for (Method method : methods) {
            BenchRow row;
            row.method = method;
            row.qubits = m;
            row.repetitions = config.repetitions;
            row.peak_matrix_bytes = peak_matrix_bytes(method, m);
            const bool is_reference = method == Method::kDp5 && config.dp5_tol == kBenchReferenceTol;
            double total = 0.0;
            row.min_wall_seconds = 1e300;
            for (int r = 0; r < config.repetitions; ++r) {
                const auto idx = static_cast<std::size_t>(r % config.instances);
                const auto start = Clock::now();
                PropagatorResult res = bench_propagate(instances[idx], method, config);
                const double wall = std::chrono::duration<double>(Clock::now() - start).count();
                total += wall;
                row.min_wall_seconds = std::min(row.min_wall_seconds, wall);
                if (!is_reference && r < config.instances) {
                    row.error_vs_reference =
                        std::max(row.error_vs_reference, operator_norm(res.matrix - references[idx]));
                }
            }
            row.mean_wall_seconds = total / config.repetitions;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow> &rows) {
    std::ostringstream out;
    const auto &cols = bench_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    char buf[256];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%.9e,%.9e,%.9e,%zu\n", to_string(r.method).c_str(),
                      r.qubits, r.repetitions, r.min_wall_seconds, r.mean_wall_seconds,
                      r.error_vs_reference, r.peak_matrix_bytes);
        out << buf;
    }
    return out.str();
}

}  // namespace qmv
