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

#include "qmv/mean_value.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qmv/errors.hpp"
#include "qmv/oracle.hpp"
#include "test_support.hpp"

using namespace qmv;
using namespace qmv::testing;

namespace {

MeanValueOptions options(double time, Backend backend) {
    MeanValueOptions o;
    o.time = time;
    o.delta = 0.1;
    o.backend = backend;
    return o;
}

/// Horizontal bonds everywhere, vertical bonds only inside row pairs (0,1), (2,3), ...
Hamiltonian ladder_hamiltonian(const Lattice &lat, double scale) {
    Hamiltonian h(lat);
    for (const Edge &e : lat.edges()) {
        const Site a = lat.site(e.first), b = lat.site(e.second);
        if (a.y != b.y && std::min(a.y, b.y) % 2 == 1) continue;
        h.add_term(e.first, e.second, random_schedule(), random_term(scale));
    }
    return h;
}

}  // namespace

TEST(MeanValue, identity_observable_is_one) {
    Lattice lat(4, 4);
    Hamiltonian h = random_hamiltonian(lat, 0.5);
    Observable obs(lat, SiteOperator::from_label('I'));
    for (Backend b : {Backend::kDense, Backend::kMps}) {
        MeanValueOptions o = options(0.3, b);
        o.radius = 1;
        MeanValueReport r = mean_value(h, obs, o);
        EXPECT_NEAR(r.mu, 1.0, 1e-10);
        EXPECT_NEAR(r.im_residual, 0.0, 1e-10);
    }
}

TEST(MeanValue, zero_time_is_product_of_vacuum_values) {
    Lattice lat(4, 3);
    Hamiltonian h = random_hamiltonian(lat, 1.0);
    Observable z(lat, SiteOperator::from_label('Z'));
    Observable obs = random_observable(lat);
    double expect = 1.0;
    for (int s = 0; s < lat.size(); ++s) expect *= obs.at(s).vacuum_expectation();
    for (Backend b : {Backend::kDense, Backend::kMps}) {
        EXPECT_NEAR(mean_value(h, z, options(0.0, b)).mu, 1.0, 1e-12);
        EXPECT_NEAR(mean_value(h, obs, options(0.0, b)).mu, expect, 1e-12);
    }
}

TEST(MeanValue, oracle_envelope_on_small_lattices) {
    for (auto [nx, ny] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {4, 4}}) {
        Lattice lat(nx, ny);
        for (int trial = 0; trial < 3; ++trial) {
            Hamiltonian h = random_hamiltonian(lat, 5e-4);
            Observable obs = random_observable(lat);
            MeanValueReport r = mean_value(h, obs, options(0.3, Backend::kMps));
            const double exact = oracle_mean_value(h, obs, 0.3).mu;
            EXPECT_LE(std::abs(r.mu - exact), r.certified_lr + r.certified_cs);
            EXPECT_LE(r.certified_lr, r.budget.eps_lr_total);
            EXPECT_LE(r.certified_cs, r.budget.eps_cs_total);
            EXPECT_LE(std::abs(r.im_residual), std::max(1e-8, r.certified_total()));
            EXPECT_LE(std::abs(r.mu), 1.0 + r.budget.delta_total);
        }
    }
}

TEST(MeanValue, backends_agree) {
    for (auto [nx, ny] : std::vector<std::pair<int, int>>{{4, 4}, {8, 4}}) {
        Lattice lat(nx, ny);
        Hamiltonian h = random_hamiltonian(lat, 0.3);
        Observable obs = random_observable(lat);
        MeanValueOptions o = options(0.4, Backend::kDense);
        o.radius = 1;
        MeanValueReport dense = mean_value(h, obs, o);
        o.backend = Backend::kMps;
        MeanValueReport mps = mean_value(h, obs, o);
        EXPECT_NEAR(dense.mu, mps.mu, 1e-8);
        EXPECT_NEAR(dense.im_residual, mps.im_residual, 1e-8);
    }
}

TEST(MeanValue, term_order_invariance) {
    Lattice lat(4, 4);
    Hamiltonian h = random_hamiltonian(lat, 0.3);
    std::vector<std::pair<Edge, TermComponent>> terms;
    for (const auto &t : h.terms()) {
        for (const auto &c : t.components) terms.emplace_back(t.edge, c);
    }
    std::shuffle(terms.begin(), terms.end(), rng());
    Hamiltonian shuffled(lat);
    for (const auto &[e, c] : terms) {
        if (uniform(0, 1) < 0.5) {
            shuffled.add_term(e.first, e.second, c.schedule, c.term);
        } else {
            shuffled.add_term(e.second, e.first, c.schedule, c.term.swapped());
        }
    }
    Observable obs = random_observable(lat);
    MeanValueOptions o = options(0.3, Backend::kMps);
    o.radius = 1;
    EXPECT_NEAR(mean_value(h, obs, o).mu, mean_value(shuffled, obs, o).mu, 1e-12);
}

TEST(MeanValue, thread_count_does_not_change_result) {
    Lattice lat(4, 4);
    Hamiltonian h = random_hamiltonian(lat, 0.3);
    Observable obs = random_observable(lat);
    MeanValueOptions o = options(0.3, Backend::kMps);
    o.radius = 1;
    const double one = mean_value(h, obs, o).mu;
    o.threads = 3;
    EXPECT_EQ(mean_value(h, obs, o).mu, one);
}

TEST(MeanValue, radius_convergence) {
    Lattice lat(5, 4);
    Hamiltonian h = ladder_hamiltonian(lat, 2e-3);
    Observable obs = random_observable(lat);
    const double exact = oracle_mean_value(h, obs, 0.3).mu;
    MeanValueOptions o = options(0.3, Backend::kMps);
    o.solver.method = Method::kDp5;
    o.solver.tol = 1e-12;
    o.radius = 1;
    MeanValueReport r1 = mean_value(h, obs, o);
    o.radius = 2;
    MeanValueReport r2 = mean_value(h, obs, o);
    EXPECT_LT(r2.certified_total(), r1.certified_total());
    EXPECT_LE(std::abs(r1.mu - exact), r1.certified_total());
    EXPECT_LE(std::abs(r2.mu - exact), r2.certified_total());
}

TEST(MeanValue, errors) {
    Lattice lat(4, 4);
    Hamiltonian h = random_hamiltonian(lat, 1.0);
    Observable obs(lat, SiteOperator::from_label('Z'));
    EXPECT_THROW(mean_value(h, obs, options(0.3, Backend::kMps)), InfeasibleError);
    MeanValueOptions o = options(0.3, Backend::kDense);
    o.radius = 1;
    o.dense_cap = 12;
    EXPECT_THROW(mean_value(h, obs, o), ResourceError);
    o = options(-1.0, Backend::kMps);
    EXPECT_THROW(mean_value(h, obs, o), InputError);
    EXPECT_THROW(parse_backend("gpu"), InputError);
}

TEST(StripState, empty_and_identity_give_vacuum) {
    Lattice lat(4, 2);
    StripDecomposition d = strip_partition(lat, 1);
    const Strip &strip = d.strips_a[0];
    for (Backend b : {Backend::kDense, Backend::kMps}) {
        StripState s = strip_state(lat, strip, {}, b, {});
        Vector v = b == Backend::kDense ? *s.dense : s.mps->to_dense();
        Vector expect = Vector::Zero(v.size());
        expect(0) = 1.0;
        EXPECT_LE((v - expect).norm(), 1e-15);
    }
    Hamiltonian h = random_hamiltonian(lat, 0.5);
    LightconeSetup setup;
    setup.time = 0.5;
    setup.coupling = h.coupling_bound(0.5);
    std::vector<EvolvedObservable> ev;
    for (int s : strip.center) ev.push_back(evolved_observable(h, s, SiteOperator::from_label('I'), setup, {}));
    std::vector<const EvolvedObservable *> ptrs;
    for (const auto &e : ev) ptrs.push_back(&e);
    StripState s = strip_state(lat, strip, ptrs, Backend::kMps, {});
    EXPECT_NEAR(std::abs(s.mps->to_dense()(0)), 1.0, 1e-15);
    EXPECT_NEAR(s.mps->to_dense().norm(), 1.0, 1e-14);
}

TEST(StripState, dense_and_mps_agree_on_random_strip) {
    // A 2-row, 4-column strip of a wider lattice.
    Lattice lat(6, 2);
    Hamiltonian h = random_hamiltonian(lat, 0.8);
    StripDecomposition d = strip_partition(lat, 1);
    LightconeSetup setup;
    setup.time = 0.6;
    setup.coupling = h.coupling_bound(0.6);
    setup.degree = 3;
    for (Partition p : {Partition::kA, Partition::kB}) {
        for (const Strip &strip : d.strips(p)) {
            std::vector<EvolvedObservable> ev;
            for (int s : strip.center) {
                ev.push_back(evolved_observable(h, s, random_site_operator(), setup,
                                                SolverOptions{Method::kTrotter, 20, std::nullopt, {}}));
            }
            std::vector<const EvolvedObservable *> ptrs;
            for (const auto &e : ev) ptrs.push_back(&e);
            for (bool reversed : {false, true}) {
                StripState a = strip_state(lat, strip, ptrs, Backend::kDense, {}, reversed);
                StripState b = strip_state(lat, strip, ptrs, Backend::kMps, {}, reversed);
                EXPECT_LE((*a.dense - b.mps->to_dense()).norm(), 1e-8);
            }
        }
    }
}

TEST(Contract, vacuum_and_self_overlap) {
    Lattice lat(4, 3);
    StripDecomposition d = strip_partition(lat, 1);
    for (Backend b : {Backend::kDense, Backend::kMps}) {
        std::vector<StripState> a, bs;
        for (const auto &s : d.strips_a) a.push_back(strip_state(lat, s, {}, b, {}));
        for (const auto &s : d.strips_b) bs.push_back(strip_state(lat, s, {}, b, {}));
        EXPECT_NEAR(std::abs(contract(lat, a, bs, b, {}) - Complex(1.0)), 0.0, 1e-15);
        std::vector<StripState> missing(bs.begin(), bs.end() - 1);
        EXPECT_THROW(contract(lat, a, missing, b, {}), InputError);
    }

    // A random product state paired with itself gives its squared norm.
    Lattice line(4, 1);
    StripDecomposition dl = strip_partition(line, 1);
    Hamiltonian zero(line);
    std::vector<SiteOperator> ops;
    double norm2 = 1.0;
    for (int s = 0; s < line.size(); ++s) {
        ops.push_back(random_site_operator());
        norm2 *= (ops.back().matrix().col(0)).squaredNorm();
    }
    LightconeSetup setup;
    std::vector<EvolvedObservable> ev;
    for (int s = 0; s < line.size(); ++s) ev.push_back(evolved_observable(zero, s, ops[static_cast<std::size_t>(s)], setup, {}));
    std::vector<const EvolvedObservable *> all;
    for (const auto &e : ev) all.push_back(&e);
    Strip whole = dl.strips_a[0];
    ASSERT_EQ(whole.sites.size(), 4u);
    for (Backend b : {Backend::kDense, Backend::kMps}) {
        std::vector<StripState> side{strip_state(line, whole, all, b, {})};
        EXPECT_NEAR(std::abs(contract(line, side, side, b, {}) - Complex(norm2)), 0.0, 1e-12);
    }
}
