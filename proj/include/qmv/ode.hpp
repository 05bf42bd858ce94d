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
 * Explicit Runge-Kutta integrators for y' = f(t, y) where y is an Eigen dense
 * object (state vector or propagator matrix). The right-hand side has the
 * signature `void f(double t, const State &y, State &dy)`.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qmv/errors.hpp"

namespace qmv {

struct OdeStats {
    int accepted_steps = 0;
    int rejected_steps = 0;
    int rhs_evaluations = 0;
};

/// Classical fourth-order Runge-Kutta with `steps` equal steps on [t0, t1].
template <class State, class Rhs>
State integrate_rk4(Rhs &&f, double t0, double t1, State y, int steps, OdeStats *stats = nullptr) {
    if (steps < 1) throw InputError("RK4 needs at least one step");
    const double h = (t1 - t0) / steps;
    State k1(y), k2(y), k3(y), k4(y), tmp(y);
    for (int s = 0; s < steps; ++s) {
        const double t = t0 + s * h;
        f(t, y, k1);
        tmp = y + (0.5 * h) * k1;
        f(t + 0.5 * h, tmp, k2);
        tmp = y + (0.5 * h) * k2;
        f(t + 0.5 * h, tmp, k3);
        tmp = y + h * k3;
        f(t + h, tmp, k4);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (stats) {
        stats->accepted_steps += steps;
        stats->rhs_evaluations += 4 * steps;
    }
    return y;
}

/**
 * Dormand-Prince 5(4) with first-same-as-last and standard step-size control.
 * The local error estimate is measured entrywise against
 * tol * (1 + max(|y|, |y_new|)) in the max norm.
 *
 * Throws ResourceError when the step size underflows.
 */
template <class State, class Rhs>
State integrate_dp5(Rhs &&f, double t0, double t1, State y, double tol, OdeStats *stats = nullptr) {
    if (!(tol > 0.0)) throw InputError("adaptive tolerance must be positive");
    if (t1 == t0) return y;

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    // b - b_hat
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = t1 - t0;
    const double dir = span > 0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(std::abs(span), 0.01 * std::abs(span) + 1e-3);

    State k1(y), k2(y), k3(y), k4(y), k5(y), k6(y), k7(y), tmp(y), ynew(y), err(y);
    f(t, y, k1);
    int evals = 1;
    int accepted = 0, rejected = 0;

    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(span))) {
            throw ResourceError("stiffness failure: tighten cap or use Trotter");
        }
        tmp = y + h * (a21 * k1);
        f(t + c2 * h, tmp, k2);
        tmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, tmp, k3);
        tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, tmp, k4);
        tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, tmp, k5);
        tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, tmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h, ynew, k7);
        evals += 6;
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const auto scale =
            (tol * (1.0 + y.array().abs().max(ynew.array().abs()))).eval();
        const double enorm = (err.array().abs() / scale).maxCoeff();

        if (enorm <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);
            ++accepted;
        } else {
            ++rejected;
        }
        const double factor =
            enorm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(enorm, -0.2), 0.2, 5.0);
        h *= enorm <= 1.0 ? factor : std::min(1.0, factor);
    }
    if (stats) {
        stats->accepted_steps += accepted;
        stats->rejected_steps += rejected;
        stats->rhs_evaluations += evals;
    }
    return y;
}

}  // namespace qmv
