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
 * JSON run configurations and result documents. The schema is documented in
 * README.md. Every validation failure throws InputError whose message starts
 * with the dotted path of the offending field, e.g.
 * "hamiltonian.terms[2].edge: sites are not nearest neighbours".
 */

#pragma once

#include <string>
#include <vector>

#include "qmv/hamiltonian.hpp"
#include "qmv/mean_value.hpp"
#include "qmv/observable.hpp"
#include "qmv/oracle.hpp"

namespace qmv {

struct BenchConfig {
    std::vector<int> qubits{2, 3, 4, 5};
    int instances = 20;
    int repetitions = 100;
    int trotter_steps = 30;
    int rk4_steps = 200;
    double dp5_tol = 1e-12;
    double time = 1.0;
    unsigned long long seed = 7;
};

struct RunConfig {
    Hamiltonian hamiltonian;
    Observable observable;
    MeanValueOptions options;
    int oracle_cap = kDefaultOracleCap;
    BenchConfig bench;

    const Lattice &lattice() const { return hamiltonian.lattice(); }
};

RunConfig parse_config(const std::string &text);
/// Reads and parses a file; unreadable files throw InputError.
RunConfig load_config(const std::string &path);

std::string result_json(const MeanValueReport &report);
std::string oracle_json(const OracleResult &result);

/// Writes text to path, or to stdout when path is empty or "-".
void write_output(const std::string &path, const std::string &text);

}  // namespace qmv
