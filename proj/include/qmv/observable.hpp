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
 * Product observables O = O_1 x ... x O_n and their Heisenberg-evolved,
 * lightcone-restricted factors V^dagger O_j V.
 */

#pragma once

#include <optional>
#include <vector>

#include "qmv/hamiltonian.hpp"
#include "qmv/propagator.hpp"

namespace qmv {

/// c_I I + c_X X + c_Y Y + c_Z Z with real coefficients.
struct SiteOperator {
    double c_i = 1.0;
    double c_x = 0.0;
    double c_y = 0.0;
    double c_z = 0.0;

    /// 'I', 'X', 'Y' or 'Z'.
    static SiteOperator from_label(char label);

    Matrix matrix() const;
    /// |c_I| + |(c_X, c_Y, c_Z)|
    double norm() const;
    bool is_identity_multiple() const { return c_x == 0.0 && c_y == 0.0 && c_z == 0.0; }
    /// <0|O|0>
    double vacuum_expectation() const { return c_i + c_z; }
};

class Observable {
  public:
    /// Every site gets `fill`. Throws InputError if its norm exceeds 1.
    Observable(const Lattice &lattice, const SiteOperator &fill);

    void set(int site, const SiteOperator &op);
    const SiteOperator &at(int site) const { return ops_.at(static_cast<std::size_t>(site)); }
    int size() const { return static_cast<int>(ops_.size()); }

  private:
    std::vector<SiteOperator> ops_;
};

struct SolverOptions {
    Method method = Method::kTrotter;
    std::optional<int> steps;  ///< trotter/rk4; chosen from the budget when empty
    std::optional<double> tol; ///< dp5; chosen from the budget when empty
    TrotterSampling sampling = TrotterSampling::kRightEndpoint;
};

/// Constants shared by all lightcones of one run.
struct LightconeSetup {
    int radius = 1;
    double time = 0.0;
    double coupling = 0.0;  ///< g
    int degree = 2;         ///< lattice degree used in the LR formula (>= 2)
    double cs_budget = 0.0; ///< per-site share of the propagator error budget
    int cap = kDefaultLightconeCap;
};

struct EvolvedObservable {
    int site = 0;
    Region region;   ///< ball(site, L)
    Region support;  ///< sites the matrix acts on; identity on region \ support
    Matrix matrix;   ///< Hermitian, on `support`
    double lr_error_share = 0.0;
    double cs_error_share = 0.0;
    int steps = 0;
    double tol = 0.0;
    double unitarity_defect = 0.0;
    /// True when the cs share is a heuristic estimate, not a proven bound.
    bool cs_heuristic = false;
};

/**
 * V^dagger O_j V for V the propagator of H restricted to ball(j, L).
 *
 * Terms inside the ball that are not connected to j through other terms
 * commute with the rest and drop out of the conjugation, so the propagator is
 * computed on the interaction component of j only. Identity-like O_j and
 * T = 0 are returned exactly.
 */
EvolvedObservable evolved_observable(const Hamiltonian &h, int site, const SiteOperator &op,
                                     const LightconeSetup &setup, const SolverOptions &solver);

/// Largest Trotter step count chosen automatically before giving up.
inline constexpr int kMaxAutoTrotterSteps = 1'000'000;

}  // namespace qmv
