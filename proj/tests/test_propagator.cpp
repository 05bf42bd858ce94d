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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <unsupported/Eigen/MatrixFunctions>

#include "qmv/errors.hpp"
#include "test_support.hpp"

using namespace qmv;
using namespace qmv::testing;

namespace {

RegionHamiltonian whole(const Hamiltonian &h) { return on_region(h, Region::whole(h.lattice())); }

/// Random chain on `n` qubits whose terms do not commute and whose schedules vary.
RegionHamiltonian random_chain_instance(int n) {
    Lattice line(n, 1);
    Hamiltonian h(line);
    for (const Edge &e : line.edges()) {
        h.add_term(e.first, e.second,
                   Schedule::harmonic(uniform(-0.5, 0.5), uniform(0.3, 0.5) * (uniform(0, 1) < 0.5 ? -1 : 1),
                                      uniform(1.0, 3.0), uniform(0.0, 6.0)),
                   random_term(1.0));
    }
    return whole(h);
}

/// Fixed-step RK4 on the propagator, independent of the library integrators.
Matrix rk4_reference(const RegionHamiltonian &h, double time, int steps) {
    const double dt = time / steps;
    const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
    Matrix u = Matrix::Identity(dim, dim);
    auto f = [&](double t, const Matrix &y) -> Matrix { return -kI * (h.assemble(t) * y); };
    for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        Matrix k1 = f(t, u);
        Matrix k2 = f(t + dt / 2, u + dt / 2 * k1);
        Matrix k3 = f(t + dt / 2, u + dt / 2 * k2);
        Matrix k4 = f(t + dt, u + dt * k3);
        u += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return u;
}

Matrix z_phase(double phase) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(Complex(0, -phase));
    m(1, 1) = std::exp(Complex(0, phase));
    return m;
}

/// 2-site Hamiltonian cos(t) * (Z on qubit 0); a commuting family.
RegionHamiltonian cos_z() {
    Lattice line(2, 1);
    Hamiltonian h(line);
    h.add_term(0, 1, Schedule::harmonic(0.0, 1.0, 1.0, 0.0), TwoSiteTerm::pauli("ZI", 1.0));
    return whole(h);
}

double conj_error(const Matrix &w, const Matrix &v, const Matrix &o) {
    return operator_norm(w.adjoint() * o * w - v.adjoint() * o * v);
}

}  // namespace

TEST(Trotter, constant_schedule_is_exact) {
    Lattice lat(3, 1);
    Hamiltonian h(lat);
    h.add_term(0, 1, Schedule::constant(0.8), random_term(1.0));
    h.add_term(1, 2, Schedule::constant(-0.4), random_term(1.0));
    RegionHamiltonian r = whole(h);
    Matrix exact = (Matrix(-kI * 1.3 * r.assemble(0.0))).exp();
    for (int n : {1, 3, 17}) EXPECT_LE((trotter_propagate(r, 1.3, n).matrix - exact).norm(), 1e-12);
}

TEST(Trotter, commuting_family_converges_to_integral_phase) {
    const Matrix expect = kron_chain({z_phase(std::sin(1.0)), pauli_matrix(0)});
    double prev = 1.0;
    for (int n : {100, 1000, 10000}) {
        const double err = (trotter_propagate(cos_z(), 1.0, n).matrix - expect).norm();
        EXPECT_LT(err, prev / 5);
        prev = err;
    }
    EXPECT_LT(prev, 1e-4);
}

TEST(Trotter, error_slope_is_minus_one) {
    for (int trial = 0; trial < 5; ++trial) {
        RegionHamiltonian r = random_chain_instance(2);
        Matrix v = ode_propagate(r, 1.0, OdeOptions{Method::kDp5, 0, 1e-12}).matrix;
        Matrix o = site_oracle(pauli_matrix(1 + trial % 3), 0, 2);
        std::vector<double> xs, ys;
        for (int n : {10, 20, 40, 80, 160}) {
            xs.push_back(std::log(n));
            ys.push_back(std::log(conj_error(trotter_propagate(r, 1.0, n).matrix, v, o)));
        }
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        EXPECT_NEAR(sxy / sxx, -1.0, 0.2);
    }
}

TEST(Trotter, rejects_bad_input) {
    RegionHamiltonian r = cos_z();
    EXPECT_THROW(trotter_propagate(r, -1.0, 4), InputError);
    EXPECT_THROW(trotter_propagate(r, 1.0, 0), InputError);
    Lattice lat(4, 4);
    Hamiltonian big = random_hamiltonian(lat, 1.0);
    EXPECT_THROW(trotter_propagate(whole(big), 1.0, 2, TrotterSampling::kRightEndpoint, 14), ResourceError);
}

TEST(Ode, zero_hamiltonian_is_identity) {
    Lattice line(2, 1);
    Hamiltonian h(line);
    for (Method m : {Method::kRk4, Method::kDp5}) {
        PropagatorResult r = ode_propagate(whole(h), 1.0, OdeOptions{m, 10, 1e-10});
        EXPECT_EQ(r.matrix, Matrix::Identity(4, 4));
    }
}

TEST(Ode, commuting_family_analytic) {
    const Matrix expect = kron_chain({z_phase(std::sin(1.0)), pauli_matrix(0)});
    PropagatorResult dp5 = ode_propagate(cos_z(), 1.0, OdeOptions{Method::kDp5, 0, 1e-10});
    EXPECT_LE((dp5.matrix - expect).norm(), 1e-8);
    PropagatorResult rk4 = ode_propagate(cos_z(), 1.0, OdeOptions{Method::kRk4, 200, 0.0});
    EXPECT_LE((rk4.matrix - expect).norm(), 1e-9);
    EXPECT_EQ(rk4.steps, 200);
}

TEST(Ode, adaptive_beats_trotter_by_three_orders) {
    for (int trial = 0; trial < 5; ++trial) {
        RegionHamiltonian r = random_chain_instance(3);
        Matrix ref = rk4_reference(r, 1.0, 4000);
        Matrix o = site_oracle(pauli_matrix(3), 1, 3);
        const double ode = conj_error(ode_propagate(r, 1.0, OdeOptions{Method::kDp5, 0, 1e-12}).matrix, ref, o);
        const double trot = conj_error(trotter_propagate(r, 1.0, 30).matrix, ref, o);
        EXPECT_GE(trot, 1e3 * ode) << trot << " " << ode;
    }
}

TEST(Ode, stiffness_failure_is_reported) {
    auto blowup = [](double, const Eigen::VectorXd &y, Eigen::VectorXd &dy) { dy = y.array().square(); };
    Eigen::VectorXd y0 = Eigen::VectorXd::Ones(1);
    try {
        integrate_dp5(blowup, 0.0, 2.0, y0, 1e-10);
        FAIL() << "expected ResourceError";
    } catch (const ResourceError &e) {
        EXPECT_NE(std::string(e.what()).find("stiffness failure"), std::string::npos);
    }
}

TEST(Propagator, unitarity_after_projection) {
    for (int trial = 0; trial < 10; ++trial) {
        RegionHamiltonian r = random_chain_instance(3);
        for (const PropagatorResult &p :
             {trotter_propagate(r, 1.0, 7), trotter_propagate(r, 1.0, 7, TrotterSampling::kMidpoint),
              ode_propagate(r, 1.0, OdeOptions{Method::kRk4, 5, 0.0}),
              ode_propagate(r, 1.0, OdeOptions{Method::kDp5, 0, 1e-6})}) {
            EXPECT_LE(unitarity_defect(p.matrix), 1e-10);
        }
    }
}

TEST(Propagator, pre_projection_defect_monotone) {
    for (int trial = 0; trial < 5; ++trial) {
        RegionHamiltonian r = random_chain_instance(3);
        for (int n : {5, 20, 80}) EXPECT_LE(trotter_propagate(r, 1.0, n).unitarity_defect, 1e-12);
        double prev = 1e300;
        for (int steps : {10, 20, 40, 80}) {
            const double d = ode_propagate(r, 1.0, OdeOptions{Method::kRk4, steps, 0.0}).unitarity_defect;
            EXPECT_LE(d, prev);
            prev = d;
        }
        prev = 1e300;
        for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
            const double d = ode_propagate(r, 1.0, OdeOptions{Method::kDp5, 0, tol}).unitarity_defect;
            EXPECT_LE(d, prev * 1.0000001);
            prev = d;
        }
    }
}

TEST(Propagator, composition_over_half_intervals) {
    for (int trial = 0; trial < 5; ++trial) {
        RegionHamiltonian r = random_chain_instance(2);
        const double tol = 1e-11;
        Matrix full = ode_propagate(r, 1.0, OdeOptions{Method::kDp5, 0, tol}).matrix;
        Matrix first = ode_propagate(r, 0.5, OdeOptions{Method::kDp5, 0, tol}).matrix;
        Matrix second = ode_propagate(r.shifted(0.5), 0.5, OdeOptions{Method::kDp5, 0, tol}).matrix;
        EXPECT_LE(operator_norm(second * first - full), 10 * tol);

        Matrix w = trotter_propagate(r, 1.0, 20).matrix;
        Matrix w1 = trotter_propagate(r, 0.5, 10).matrix;
        Matrix w2 = trotter_propagate(r.shifted(0.5), 0.5, 10).matrix;
        EXPECT_LE(operator_norm(w2 * w1 - w), 1e-12);
    }
}

TEST(TrotterBound, examples) {
    Lattice line(2, 1);
    Hamiltonian c(line);
    c.add_term(0, 1, Schedule::constant(1.0), random_term(1.0));
    EXPECT_EQ(trotter_error_bound(whole(c), 1.0, 1.0, 100), 0.0);
    Hamiltonian h(line);
    h.add_term(0, 1, Schedule::harmonic(0.0, 1.0, 2.0, 0.0), TwoSiteTerm::pauli("XX", 1.0));
    EXPECT_NEAR(trotter_error_bound(whole(h), 1.0, 1.0, 100), 0.12, 1e-15);
    EXPECT_THROW(trotter_error_bound(whole(h), -1.0, 1.0, 100), InputError);
}

TEST(TrotterBound, dominates_measured_error) {
    for (int trial = 0; trial < 100; ++trial) {
        RegionHamiltonian r = random_chain_instance(2);
        Matrix v = ode_propagate(r, 1.0, OdeOptions{Method::kDp5, 0, 1e-12}).matrix;
        SiteOperator op = random_site_operator();
        Matrix o = site_oracle(op.matrix(), trial % 2, 2);
        const int n = 10 + trial;
        PropagatorResult w = trotter_propagate(r, 1.0, n);
        ASSERT_TRUE(w.cs_error_bound.has_value());
        EXPECT_LE(conj_error(w.matrix, v, o), *w.cs_error_bound * op.norm());
        EXPECT_NEAR(*w.cs_error_bound, trotter_error_bound(r, 1.0, 1.0, n), 1e-15);
    }
}

TEST(Conjugate, properties) {
    RegionHamiltonian r = random_chain_instance(2);
    PropagatorResult v = trotter_propagate(r, 0.8, 9);
    EXPECT_LE((conjugate(v, Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm(), 1e-13);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix o = site_oracle(random_site_operator().matrix(), trial % 2, 2) +
                   0.3 * term_oracle(random_term(1.0), 0, 1, 2);
        Matrix c = conjugate(v, o);
        EXPECT_LE((c - v.matrix.adjoint() * o * v.matrix).norm(), 1e-13);
        EXPECT_LE((c - c.adjoint()).norm(), 1e-15);
        Eigen::SelfAdjointEigenSolver<Matrix> a(o), b(c);
        EXPECT_LE((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
    }
    EXPECT_THROW(conjugate(v, Matrix::Identity(2, 2)), InputError);
}
