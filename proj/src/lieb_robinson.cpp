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

#include "qmv/lieb_robinson.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmv/errors.hpp"

namespace qmv {

double lr_error(int radius, double time, double coupling, int degree, int region_size,
                double obs_norm) {
    if (radius < 1) throw InputError("lightcone radius must be at least 1");
    if (coupling < 0.0) throw InputError("coupling bound must be non-negative");
    if (degree < 2) throw InputError("graph degree must be at least 2");
    if (region_size < 0 || obs_norm < 0.0) throw InputError("region size and norm must be non-negative");
    if (time <= 0.0 || coupling == 0.0 || region_size == 0 || obs_norm == 0.0) return 0.0;

    const double l = radius;
    const double log_rate = std::log(time) + std::log(4.0 * coupling * (degree - 1));
    const double exponent = -l * (std::log(l) - log_rate) - 0.5 * std::log(l);
    return std::sqrt(2.0 / std::numbers::pi) * region_size * obs_norm * std::exp(exponent);
}

long long max_ball_size(int radius) {
    const long long l = radius;
    return 2 * l * l + 2 * l + 1;
}

int min_radius(double time, double coupling, int degree, int sites, double lr_budget,
               int qubit_cap) {
    if (!(lr_budget > 0.0)) throw InputError("lightcone error budget must be positive");
    if (sites < 1) throw InputError("site count must be positive");
    for (int l = 1; max_ball_size(l) <= qubit_cap; ++l) {
        if (sites * lr_error(l, time, coupling, degree, 1, 1.0) <= lr_budget) return l;
    }
    throw InfeasibleError("infeasible: increase delta, decrease T, or raise the qubit cap (cap " +
                          std::to_string(qubit_cap) + ")");
}

ErrorBudget split_budget(double delta, int sites, double lr_fraction) {
    if (!(delta > 0.0)) throw InputError("total error delta must be positive");
    if (sites < 1) throw InputError("site count must be positive");
    if (!(lr_fraction > 0.0 && lr_fraction < 1.0)) {
        throw InputError("lr_fraction must lie strictly between 0 and 1");
    }
    ErrorBudget b;
    b.delta_total = delta;
    b.eps_lr_total = lr_fraction * delta;
    b.eps_cs_total = delta - b.eps_lr_total;
    b.eps_ssc = 0.0;
    b.per_site_lr = b.eps_lr_total / sites;
    b.per_site_cs = b.eps_cs_total / sites;
    return b;
}

}  // namespace qmv
