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

#include "qmv/propagator.hpp"

#include "qmv/errors.hpp"

namespace qmv {

std::string to_string(Method m) {
    switch (m) {
    case Method::kTrotter:
        return "trotter";
    case Method::kRk4:
        return "rk4";
    case Method::kDp5:
        return "dp5";
    }
    return "unknown";
}

Method parse_method(const std::string &name) {
    if (name == "trotter") return Method::kTrotter;
    if (name == "rk4") return Method::kRk4;
    if (name == "dp5") return Method::kDp5;
    throw InputError("unknown solver method '" + name + "' (expected trotter, rk4 or dp5)");
}

namespace {

void check_inputs(const RegionHamiltonian &h, double time, int cap) {
    if (time < 0.0) throw InputError("evolution time must be non-negative");
    if (h.num_qubits() > cap) {
        throw ResourceError("lightcone too large: " + std::to_string(h.num_qubits()) +
                            " qubits exceeds cap " + std::to_string(cap));
    }
}

}  // namespace

PropagatorResult trotter_propagate(const RegionHamiltonian &h, double time, int steps,
                                   TrotterSampling sampling, int cap) {
    check_inputs(h, time, cap);
    if (steps < 1) throw InputError("Trotter step count must be at least 1");

    const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
    const double dt = time / steps;
    const double offset = sampling == TrotterSampling::kMidpoint ? 0.5 : 0.0;
    Matrix w = Matrix::Identity(dim, dim);
    if (time > 0.0 && !h.terms().empty()) {
        for (int j = 1; j <= steps; ++j) {
            Matrix factor = expm_hermitian(h.assemble((j - offset) * dt, cap), dt);
            w = factor * w;
        }
    }

    PropagatorResult r;
    r.region = h.region();
    r.method = Method::kTrotter;
    r.steps = steps;
    r.unitarity_defect = unitarity_defect(w);
    if (sampling == TrotterSampling::kRightEndpoint) {
        r.cs_error_bound = trotter_error_bound(h, 1.0, time, steps);
    }
    r.matrix = r.unitarity_defect > kUnitarityTolerance ? polar_unitary(w) : std::move(w);
    return r;
}

PropagatorResult ode_propagate(const RegionHamiltonian &h, double time, const OdeOptions &options,
                               int cap) {
    check_inputs(h, time, cap);
    const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();

    auto rhs = [&h](double t, const Matrix &u, Matrix &du) {
        du.noalias() = h.assemble_sparse(t) * u;
        du *= -kI;
    };

    PropagatorResult r;
    r.region = h.region();
    r.method = options.method;
    Matrix u = Matrix::Identity(dim, dim);
    if (time > 0.0 && !h.terms().empty()) {
        switch (options.method) {
        case Method::kRk4:
            u = integrate_rk4(rhs, 0.0, time, std::move(u), options.steps, &r.stats);
            r.steps = options.steps;
            break;
        case Method::kDp5:
            u = integrate_dp5(rhs, 0.0, time, std::move(u), options.tol, &r.stats);
            r.steps = r.stats.accepted_steps;
            r.tol = options.tol;
            break;
        case Method::kTrotter:
            throw InputError("ode_propagate needs rk4 or dp5");
        }
    } else if (options.method == Method::kTrotter) {
        throw InputError("ode_propagate needs rk4 or dp5");
    }
    if (options.method == Method::kDp5) r.tol = options.tol;
    if (options.method == Method::kRk4) r.steps = options.steps;
    r.unitarity_defect = unitarity_defect(u);
    r.matrix = polar_unitary(u);
    return r;
}

double trotter_error_bound(const RegionHamiltonian &h, double obs_norm, double time, int steps) {
    if (obs_norm < 0.0) throw InputError("observable norm must be non-negative");
    if (steps < 1) throw InputError("Trotter step count must be at least 1");
    return 6.0 * time * time / steps * obs_norm * h.derivative_bound(time);
}

Matrix conjugate(const PropagatorResult &v, const Matrix &obs) {
    if (obs.rows() != v.matrix.rows() || obs.cols() != v.matrix.cols()) {
        throw InputError("observable dimension does not match the propagator");
    }
    return hermitize(v.matrix.adjoint() * obs * v.matrix);
}

}  // namespace qmv
