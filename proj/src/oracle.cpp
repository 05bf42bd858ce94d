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

#include "qmv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmv/errors.hpp"
#include "qmv/ode.hpp"

namespace qmv {

OracleResult oracle_mean_value(const Hamiltonian &h, const Observable &obs, double time,
                               const OracleOptions &options) {
    const Lattice &lattice = h.lattice();
    if (obs.size() != lattice.size()) throw InputError("observable size does not match the lattice");
    if (!(time >= 0.0) || !std::isfinite(time)) throw InputError("time must be finite and non-negative");

    OracleResult res;
    Complex mu{1.0, 0.0};
    for (const Region &comp : interaction_components(h)) {
        ++res.components;
        const int k = static_cast<int>(comp.size());
        res.largest_component = std::max(res.largest_component, k);
        if (k == 1) {
            mu *= obs.at(comp[0]).vacuum_expectation();
            continue;
        }
        if (k > options.cap) {
            throw ResourceError("oracle component of " + std::to_string(k) +
                                " qubits exceeds oracle cap " + std::to_string(options.cap));
        }
        const RegionHamiltonian local = on_region(h, comp);
        Vector psi = Vector::Zero(Eigen::Index{1} << k);
        psi(0) = 1.0;
        if (time > 0.0) {
            auto rhs = [&local](double t, const Vector &y, Vector &dy) {
                local.apply(t, y, dy);
                dy *= -kI;
            };
            psi = integrate_dp5(rhs, 0.0, time, std::move(psi), options.tol);
        }
        res.norm_residual = std::max(res.norm_residual, std::abs(psi.norm() - 1.0));
        Vector phi = psi;
        for (int q = 0; q < k; ++q) {
            const SiteOperator &op = obs.at(comp[static_cast<std::size_t>(q)]);
            if (op.is_identity_multiple()) {
                phi *= op.c_i;
            } else {
                apply_local(phi, std::span<const int>(&q, 1), op.matrix());
            }
        }
        mu *= psi.dot(phi);
    }
    res.mu_complex = mu;
    res.mu = mu.real();
    return res;
}

}  // namespace qmv
