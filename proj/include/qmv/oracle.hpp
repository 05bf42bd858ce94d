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
 * Brute-force reference for <0| U^dagger(T) O U(T) |0>: the Schrodinger
 * equation is integrated on the state vector with no lightcone truncation.
 * Sites that never share a term evolve independently, so the state factorizes
 * over the connected components of the interaction graph and each component
 * is simulated on its own.
 */

#pragma once

#include "qmv/hamiltonian.hpp"
#include "qmv/observable.hpp"

namespace qmv {

inline constexpr int kDefaultOracleCap = 20;

struct OracleOptions {
    int cap = kDefaultOracleCap;  ///< qubits per component
    double tol = 1e-12;
};

struct OracleResult {
    double mu = 0.0;
    Complex mu_complex{};
    /// Largest | ||psi_c(T)|| - 1 | over components.
    double norm_residual = 0.0;
    int components = 0;
    int largest_component = 0;
};

/// Throws ResourceError when a component exceeds the cap.
OracleResult oracle_mean_value(const Hamiltonian &h, const Observable &obs, double time,
                               const OracleOptions &options = {});

}  // namespace qmv
