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

#include <gtest/gtest.h>

#include <cmath>

#include "qmv/errors.hpp"
#include "qmv/lieb_robinson.hpp"
#include "test_support.hpp"

using namespace qmv;
using namespace qmv::testing;

namespace {

LightconeSetup setup_for(const Hamiltonian &h, int radius, double time, double cs_budget) {
    LightconeSetup s;
    s.radius = radius;
    s.time = time;
    s.coupling = h.coupling_bound(time);
    s.degree = std::max(2, h.lattice().max_degree());
    s.cs_budget = cs_budget;
    return s;
}

/// Embeds a matrix on `sub` (a subset of `full`) into the qubits of `full`.
Matrix widen(const Matrix &m, const Region &sub, const Region &full) {
    std::vector<int> pos;
    for (int s : sub) pos.push_back(full.position(s));
    return embed(m, pos, static_cast<int>(full.size()));
}

}  // namespace

TEST(SiteOperator, labels_and_norm) {
    EXPECT_EQ(SiteOperator::from_label('Y').matrix(), pauli_matrix(2));
    EXPECT_THROW(SiteOperator::from_label('Q'), InputError);
    SiteOperator op{0.2, 0.3, 0.0, 0.4};
    Eigen::JacobiSVD<Matrix> svd(op.matrix());
    EXPECT_NEAR(op.norm(), svd.singularValues()(0), 1e-15);
    EXPECT_NEAR(op.norm(), 0.7, 1e-15);
    EXPECT_DOUBLE_EQ(op.vacuum_expectation(), 0.6);
}

TEST(Observable, rejects_norm_above_one) {
    Lattice lat(2, 2);
    EXPECT_THROW(Observable(lat, SiteOperator{0.5, 0.6, 0.0, 0.0}), InputError);
    Observable obs(lat, SiteOperator::from_label('Z'));
    EXPECT_THROW(obs.set(1, SiteOperator{0.0, 0.8, 0.8, 0.0}), InputError);
    EXPECT_THROW(obs.set(4, SiteOperator::from_label('X')), InputError);
}

TEST(EvolvedObservable, trivial_cases) {
    Lattice lat(3, 3);
    Hamiltonian zero(lat);
    SiteOperator op = random_site_operator();
    EvolvedObservable e = evolved_observable(zero, 4, op, setup_for(zero, 1, 0.5, 1e-3), {});
    EXPECT_EQ(e.matrix, op.matrix());
    EXPECT_EQ(e.support, Region(lat, {4}));
    EXPECT_EQ(e.region, ball(lat, 4, 1));
    EXPECT_EQ(e.lr_error_share, 0.0);

    Hamiltonian h = random_hamiltonian(lat, 0.5);
    e = evolved_observable(h, 4, op, setup_for(h, 1, 0.0, 1e-3), {});
    EXPECT_EQ(e.matrix, op.matrix());
}

TEST(EvolvedObservable, single_qubit_rotation) {
    // H(t) = f(t) X on site 0 only; O = Z evolves to cos(2 theta) Z + sin(2 theta) Y
    // with theta the integral of f.
    Lattice line(2, 1);
    Hamiltonian h(line);
    h.add_term(0, 1, Schedule::harmonic(0.3, 0.5, 2.0, 0.0), TwoSiteTerm::pauli("XI", 1.0));
    const double t = 0.9;
    const double theta = 0.3 * t + 0.25 * std::sin(2.0 * t);
    Matrix expect2 = std::cos(2 * theta) * pauli_matrix(3) + std::sin(2 * theta) * pauli_matrix(2);
    SolverOptions dp5{Method::kDp5, std::nullopt, 1e-12, TrotterSampling::kRightEndpoint};
    EvolvedObservable e = evolved_observable(h, 0, SiteOperator::from_label('Z'), setup_for(h, 1, t, 1e-3), dp5);
    ASSERT_EQ(e.support, Region::whole(line));
    EXPECT_LE((e.matrix - kron_chain({expect2, pauli_matrix(0)})).norm(), 1e-9);
}

TEST(EvolvedObservable, hermitian_and_norm_bounded) {
    Lattice lat(4, 3);
    for (Method m : {Method::kTrotter, Method::kRk4, Method::kDp5}) {
        Hamiltonian h = random_hamiltonian(lat, 1.0);
        for (int j : {0, 5, 11}) {
            SiteOperator op = random_site_operator();
            SolverOptions solver;
            solver.method = m;
            EvolvedObservable e = evolved_observable(h, j, op, setup_for(h, 1, 0.4, 1e-4), solver);
            EXPECT_LE((e.matrix - e.matrix.adjoint()).norm(), 1e-10);
            EXPECT_LE(operator_norm(e.matrix), op.norm() + 1e-9);
            EXPECT_EQ(e.cs_heuristic, m != Method::kTrotter);
        }
    }
}

TEST(EvolvedObservable, component_reduction_is_exact) {
    // Terms inside the ball that do not touch the component of j commute with
    // everything that does, so conjugating with the full-ball propagator gives
    // the same operator.
    Lattice lat(4, 2);
    Hamiltonian h(lat);
    h.add_term(1, 2, random_schedule(), random_term(1.0));
    h.add_term(0, 4, random_schedule(), random_term(1.0));
    h.add_term(4, 5, random_schedule(), random_term(1.0));
    SiteOperator op = random_site_operator();
    SolverOptions solver{Method::kTrotter, 40, std::nullopt, TrotterSampling::kRightEndpoint};
    EvolvedObservable e = evolved_observable(h, 1, op, setup_for(h, 2, 0.7, 1e-3), solver);
    EXPECT_EQ(e.region.size(), 7u);
    EXPECT_EQ(e.support, Region(lat, {1, 2}));

    RegionHamiltonian full = on_region(h, e.region);
    PropagatorResult v = trotter_propagate(full, 0.7, 40);
    const int pos = e.region.position(1);
    Matrix direct = conjugate(v, embed(op.matrix(), std::span<const int>(&pos, 1), static_cast<int>(e.region.size())));
    EXPECT_LE((direct - widen(e.matrix, e.support, e.region)).norm(), 1e-11);
}

TEST(EvolvedObservable, error_shares) {
    Lattice lat(4, 4);
    Hamiltonian h = random_hamiltonian(lat, 0.01);
    LightconeSetup s = setup_for(h, 1, 0.3, 2e-5);
    SiteOperator op{0.0, 0.0, 0.6, 0.0};
    EvolvedObservable e = evolved_observable(h, 5, op, s, {});
    EXPECT_NEAR(e.lr_error_share, lr_error(1, 0.3, s.coupling, 4, 1, 0.6), 1e-18);
    EXPECT_LE(e.cs_error_share, s.cs_budget);
    EXPECT_GE(e.steps, 1);
    RegionHamiltonian local = on_region(h, e.support);
    EXPECT_NEAR(e.cs_error_share, trotter_error_bound(local, 0.6, 0.3, e.steps), 1e-18);
    if (e.steps > 1) EXPECT_GT(trotter_error_bound(local, 0.6, 0.3, e.steps - 1), s.cs_budget);
}

TEST(EvolvedObservable, cap_enforced) {
    Lattice lat(5, 5);
    Hamiltonian h = random_hamiltonian(lat, 0.1);
    LightconeSetup s = setup_for(h, 2, 0.3, 1e-3);
    s.cap = 12;
    EXPECT_THROW(evolved_observable(h, 12, SiteOperator::from_label('Z'), s, {}), ResourceError);
}
