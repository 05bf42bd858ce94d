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
 * The lightcone mean-value pipeline: evolved observables on Manhattan balls,
 * grouped by the strip whose center owns their site, applied to |0...0> strip
 * by strip, and contracted into mu = <0| U^dagger O U |0>.
 *
 * Partition A strips hold P_A |0> with P_A the product of their evolved
 * observables in ascending site order. Partition B strips hold P_B^dagger |0>
 * so that <B|A> = <0| P_B P_A |0>.
 */

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmv/hamiltonian.hpp"
#include "qmv/lattice.hpp"
#include "qmv/lieb_robinson.hpp"
#include "qmv/mps.hpp"
#include "qmv/observable.hpp"

namespace qmv {

enum class Backend { kDense, kMps };

std::string to_string(Backend b);
/// "dense" or "mps"; throws InputError otherwise.
Backend parse_backend(const std::string &name);

inline constexpr int kDefaultDenseCap = 20;

struct MeanValueOptions {
    double time = 0.0;
    double delta = 0.1;
    SolverOptions solver;
    Backend backend = Backend::kMps;
    int lightcone_cap = kDefaultLightconeCap;
    int dense_cap = kDefaultDenseCap;
    double lr_fraction = 0.5;
    std::optional<int> radius;  ///< skips the radius search when set
    Truncation truncation;
    int threads = 1;
};

struct StageTimings {
    double lightcones = 0.0;
    double strip_states = 0.0;
    double contraction = 0.0;
    double total = 0.0;
};

struct MeanValueReport {
    double mu = 0.0;  ///< real part of the estimate
    double im_residual = 0.0;
    int radius = 0;
    ErrorBudget budget;
    double coupling = 0.0;
    int degree = 2;
    double certified_lr = 0.0;  ///< sum of per-site LR shares
    double certified_cs = 0.0;  ///< sum of per-site propagator shares
    bool cs_heuristic = false;
    int max_steps = 0;
    long long total_steps = 0;
    double max_unitarity_defect = 0.0;
    int max_support = 0;
    Eigen::Index max_bond = 1;
    Backend backend = Backend::kMps;
    Method method = Method::kTrotter;
    StageTimings timings;

    double certified_total() const { return certified_lr + certified_cs + budget.eps_ssc; }
};

struct StripState {
    Partition partition = Partition::kA;
    int index = 0;
    int col_begin = 0;
    int col_end = 0;
    Region sites;
    std::optional<Vector> dense;
    std::optional<RowMps> mps;
};

/**
 * Applies `ops` to |0...0> on the strip, in ascending site order, or in
 * descending order when `reversed` is set. Throws std::logic_error if an
 * operator's support leaves the strip.
 */
StripState strip_state(const Lattice &lattice, const Strip &strip,
                       std::span<const EvolvedObservable *const> ops, Backend backend,
                       const Truncation &trunc, bool reversed = false);

/// <B|A> over the whole lattice. Throws InputError unless each side covers
/// every site exactly once.
Complex contract(const Lattice &lattice, const std::vector<StripState> &a,
                 const std::vector<StripState> &b, Backend backend, const Truncation &trunc);

MeanValueReport mean_value(const Hamiltonian &h, const Observable &obs,
                           const MeanValueOptions &options);

/// Runs body(0..count-1) on up to `threads` workers and rethrows the first
/// exception in index order.
void parallel_for(int count, int threads, const std::function<void(int)> &body);

}  // namespace qmv
