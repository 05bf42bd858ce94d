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
 * Time-ordered propagators V(T) of a region Hamiltonian, computed either as a
 * product of short-time exponentials or by integrating i dU/dt = H(t) U.
 */

#pragma once

#include <optional>
#include <string>

#include "qmv/hamiltonian.hpp"
#include "qmv/ode.hpp"

namespace qmv {

enum class Method { kTrotter, kRk4, kDp5 };

std::string to_string(Method m);
/// Accepts "trotter", "rk4", "dp5"; throws InputError otherwise.
Method parse_method(const std::string &name);

/// Where each Trotter factor samples H. kRightEndpoint uses H(j dt) for step
/// j = 1..N; kMidpoint uses H((j - 1/2) dt) and is second order in dt.
enum class TrotterSampling { kRightEndpoint, kMidpoint };

struct PropagatorResult {
    Region region;
    Matrix matrix;
    Method method = Method::kTrotter;
    int steps = 0;     ///< Trotter factors or RK4 steps; accepted steps for dp5
    double tol = 0.0;  ///< dp5 only
    /// ||U^dagger U - I|| of the raw result, before any re-unitarization.
    double unitarity_defect = 0.0;
    /// Certified conjugation-error bound for a unit-norm observable.
    /// Only the right-endpoint Trotter product has one.
    std::optional<double> cs_error_bound;
    OdeStats stats;
};

/// W = prod_{j=1..N} exp(-i dt H_A(j dt)), dt = T / N, with j = 1 acting first.
PropagatorResult trotter_propagate(const RegionHamiltonian &h, double time, int steps,
                                   TrotterSampling sampling = TrotterSampling::kRightEndpoint,
                                   int cap = kDefaultLightconeCap);

struct OdeOptions {
    Method method = Method::kDp5;  ///< kRk4 or kDp5
    int steps = 100;               ///< kRk4
    double tol = 1e-10;            ///< kDp5
};

/// Integrates dU/dt = -i H_A(t) U from U(0) = I, then projects onto the
/// nearest unitary (polar factor). The pre-projection defect is recorded.
PropagatorResult ode_propagate(const RegionHamiltonian &h, double time, const OdeOptions &options,
                               int cap = kDefaultLightconeCap);

/// (6 T^2 / N) ||O_A|| max_t ||H_A'(t)||, with the derivative norm bounded by
/// RegionHamiltonian::derivative_bound.
double trotter_error_bound(const RegionHamiltonian &h, double obs_norm, double time, int steps);

/// V^dagger O V, Hermitized.
Matrix conjugate(const PropagatorResult &v, const Matrix &obs);

/// Re-unitarization threshold below which a raw Trotter product is kept as is.
inline constexpr double kUnitarityTolerance = 1e-12;

}  // namespace qmv
