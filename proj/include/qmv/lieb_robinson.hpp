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
 * Lightcone truncation error, radius selection, and the split of the total
 * error budget between lightcone truncation (LR), classical propagator
 * simulation (CS) and contraction (SSC, zero here: contraction is exact).
 */

#pragma once

namespace qmv {

struct ErrorBudget {
    double delta_total = 0.0;
    double eps_lr_total = 0.0;
    double eps_cs_total = 0.0;
    double eps_ssc = 0.0;
    double per_site_lr = 0.0;
    double per_site_cs = 0.0;
};

/**
 * Single-region Lieb-Robinson error after time T for lightcone radius L:
 *
 *   sqrt(2/pi) |A| ||O_A|| (4 g T (degree - 1) / L)^L / sqrt(L)
 *
 * evaluated in log space. Returns 0 for T <= 0, g == 0, |A| == 0 or
 * ||O_A|| == 0. Throws InputError for L < 1, g < 0 or degree < 2.
 */
double lr_error(int radius, double time, double coupling, int degree, int region_size,
                double obs_norm);

/// Largest ball size 2L^2 + 2L + 1 on an unbounded grid.
long long max_ball_size(int radius);

/**
 * Smallest L >= 1 with sites * lr_error(L, T, g, degree, 1, 1) <= lr_budget
 * and max_ball_size(L) <= qubit_cap. Throws InfeasibleError when the cap is
 * reached first, InputError for a non-positive budget.
 */
int min_radius(double time, double coupling, int degree, int sites, double lr_budget,
               int qubit_cap);

/// eps_lr = lr_fraction * delta, eps_cs = the rest, eps_ssc = 0.
ErrorBudget split_budget(double delta, int sites, double lr_fraction = 0.5);

}  // namespace qmv
