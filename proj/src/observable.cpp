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

#include "qmv/observable.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmv/errors.hpp"
#include "qmv/lieb_robinson.hpp"

namespace qmv {

SiteOperator SiteOperator::from_label(char label) {
    switch (label) {
    case 'I':
        return {1.0, 0.0, 0.0, 0.0};
    case 'X':
        return {0.0, 1.0, 0.0, 0.0};
    case 'Y':
        return {0.0, 0.0, 1.0, 0.0};
    case 'Z':
        return {0.0, 0.0, 0.0, 1.0};
    default:
        throw InputError(std::string("unknown single-site operator '") + label + "'");
    }
}

Matrix SiteOperator::matrix() const {
    return c_i * pauli('I') + c_x * pauli('X') + c_y * pauli('Y') + c_z * pauli('Z');
}

double SiteOperator::norm() const {
    return std::abs(c_i) + std::sqrt(c_x * c_x + c_y * c_y + c_z * c_z);
}

namespace {

void check_norm(const SiteOperator &op) {
    if (op.norm() > 1.0 + 1e-12) {
        throw InputError("site operator norm " + std::to_string(op.norm()) + " exceeds 1");
    }
}

}  // namespace

Observable::Observable(const Lattice &lattice, const SiteOperator &fill) {
    check_norm(fill);
    ops_.assign(static_cast<std::size_t>(lattice.size()), fill);
}

void Observable::set(int site, const SiteOperator &op) {
    if (site < 0 || site >= size()) throw InputError("observable site out of range");
    check_norm(op);
    ops_[static_cast<std::size_t>(site)] = op;
}

EvolvedObservable evolved_observable(const Hamiltonian &h, int site, const SiteOperator &op,
                                     const LightconeSetup &setup, const SolverOptions &solver) {
    const Lattice &lattice = h.lattice();
    EvolvedObservable out;
    out.site = site;
    out.region = ball(lattice, site, setup.radius);
    out.support = interaction_component(h, out.region, site);

    const double obs_norm = op.norm();
    if (op.is_identity_multiple() || setup.time == 0.0 || out.support.size() == 1) {
        out.support = Region(lattice, {site});
        out.matrix = op.matrix();
        return out;
    }
    if (static_cast<int>(out.support.size()) > setup.cap) {
        throw ResourceError("lightcone too large: " + std::to_string(out.support.size()) +
                            " qubits around site " + std::to_string(site) + " exceeds cap " +
                            std::to_string(setup.cap));
    }

    const RegionHamiltonian local = on_region(h, out.support);
    out.lr_error_share =
        lr_error(setup.radius, setup.time, setup.coupling, setup.degree, 1, obs_norm);

    PropagatorResult v;
    switch (solver.method) {
    case Method::kTrotter: {
        int steps = 1;
        if (solver.steps) {
            steps = *solver.steps;
        } else if (setup.cs_budget > 0.0) {
            double needed = std::ceil(trotter_error_bound(local, obs_norm, setup.time, 1) /
                                      setup.cs_budget);
            if (needed > kMaxAutoTrotterSteps) {
                throw InfeasibleError("infeasible: Trotter error budget for site " +
                                      std::to_string(site) + " needs more than " +
                                      std::to_string(kMaxAutoTrotterSteps) + " steps");
            }
            steps = std::max(1, static_cast<int>(needed));
        }
        v = trotter_propagate(local, setup.time, steps, solver.sampling, setup.cap);
        if (v.cs_error_bound) {
            out.cs_error_share = *v.cs_error_bound * obs_norm;
        } else {
            // Midpoint sampling has no certified bound here; report the
            // right-endpoint bound for the same step count as an estimate.
            out.cs_error_share = trotter_error_bound(local, obs_norm, setup.time, steps);
            out.cs_heuristic = true;
        }
        break;
    }
    case Method::kRk4: {
        int steps = solver.steps.value_or(
            std::max(4, static_cast<int>(std::ceil(20.0 * setup.time * local.norm_bound(setup.time)))));
        OdeOptions coarse{Method::kRk4, steps, 0.0};
        OdeOptions fine{Method::kRk4, 2 * steps, 0.0};
        PropagatorResult rough = ode_propagate(local, setup.time, coarse, setup.cap);
        v = ode_propagate(local, setup.time, fine, setup.cap);
        // Step-doubling estimate; the coarse error is ~15x the fine one.
        out.cs_error_share = 2.0 * obs_norm * operator_norm(v.matrix - rough.matrix);
        out.cs_heuristic = true;
        break;
    }
    case Method::kDp5: {
        double tol = solver.tol.value_or(
            std::clamp(setup.cs_budget / (20.0 * std::max(obs_norm, 1e-300)), 1e-12, 1e-6));
        v = ode_propagate(local, setup.time, OdeOptions{Method::kDp5, 0, tol}, setup.cap);
        out.cs_error_share = 10.0 * tol * 2.0 * obs_norm;
        out.cs_heuristic = true;
        break;
    }
    }
    out.steps = v.steps;
    out.tol = v.tol;
    out.unitarity_defect = v.unitarity_defect;

    const int pos = out.support.position(site);
    const Matrix embedded = embed(op.matrix(), std::span<const int>(&pos, 1), local.num_qubits());
    out.matrix = conjugate(v, embedded);
    return out;
}

}  // namespace qmv
