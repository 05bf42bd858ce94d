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

/**
 * @file
 * Solver benchmark on random time-dependent chains: wall time, error against
 * a tight adaptive reference, and an analytic memory estimate per method.
 */

#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "qmv/config.hpp"
#include "qmv/hamiltonian.hpp"
#include "qmv/propagator.hpp"

namespace qmv {

/// Tolerance of the reference solution.
inline constexpr double kBenchReferenceTol = 1e-12;

struct BenchRow {
    Method method = Method::kTrotter;
    int qubits = 0;
    int repetitions = 0;
    double min_wall_seconds = 0.0;
    double mean_wall_seconds = 0.0;
    double error_vs_reference = 0.0;  ///< max over instances of ||U - U_ref||
    std::size_t peak_matrix_bytes = 0;
};

/// Column names of the CSV, in order.
const std::vector<std::string> &bench_columns();

/**
 * Chain of `qubits` sites with one random two-site term per bond (unit
 * operator norm) under a random harmonic schedule.
 */
RegionHamiltonian random_chain(int qubits, std::mt19937_64 &rng);

/// Dominant dense buffers held by one propagation, in bytes.
std::size_t peak_matrix_bytes(Method method, int qubits);

/// Propagates `h` with `method` using the step count or tolerance from `config`.
PropagatorResult bench_propagate(const RegionHamiltonian &h, Method method, const BenchConfig &config);

std::vector<BenchRow> run_bench(const BenchConfig &config, const std::vector<Method> &methods);

std::string bench_csv(const std::vector<BenchRow> &rows);

}  // namespace qmv
