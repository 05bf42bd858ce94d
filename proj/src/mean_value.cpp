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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iterator>
#include <stdexcept>
#include <thread>

#include "qmv/errors.hpp"

namespace qmv {

std::string to_string(Backend b) { return b == Backend::kDense ? "dense" : "mps"; }

Backend parse_backend(const std::string &name) {
    if (name == "dense") return Backend::kDense;
    if (name == "mps") return Backend::kMps;
    throw InputError("unknown contraction backend '" + name + "' (expected dense or mps)");
}

void parallel_for(int count, int threads, const std::function<void(int)> &body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> positions_in(const Region &strip, const Region &support) {
    std::vector<int> pos;
    for (int s : support) {
        int p = strip.position(s);
        if (p < 0) throw std::logic_error("evolved observable escapes its strip");
        pos.push_back(p);
    }
    return pos;
}

struct DenseTensor {
    Region sites;
    Vector v;
};

std::vector<Eigen::Index> bit_table(const std::vector<int> &bits) {
    std::vector<Eigen::Index> t(std::size_t{1} << bits.size(), 0);
    for (std::size_t l = 0; l < t.size(); ++l) {
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if ((l >> i) & 1U) t[l] |= Eigen::Index{1} << bits[i];
        }
    }
    return t;
}

DenseTensor contract_pair(const Lattice &lattice, const DenseTensor &a, const DenseTensor &b) {
    std::vector<int> out_sites, a_only, b_only, shared;
    std::set_symmetric_difference(a.sites.begin(), a.sites.end(), b.sites.begin(), b.sites.end(),
                                  std::back_inserter(out_sites));
    std::set_difference(a.sites.begin(), a.sites.end(), b.sites.begin(), b.sites.end(),
                        std::back_inserter(a_only));
    std::set_difference(b.sites.begin(), b.sites.end(), a.sites.begin(), a.sites.end(),
                        std::back_inserter(b_only));
    std::set_intersection(a.sites.begin(), a.sites.end(), b.sites.begin(), b.sites.end(),
                          std::back_inserter(shared));
    Region out_region(lattice, out_sites);

    auto bits = [](const Region &r, const std::vector<int> &sites) {
        std::vector<int> out;
        for (int s : sites) out.push_back(r.position(s));
        return out;
    };
    const auto a_free = bit_table(bits(a.sites, a_only));
    const auto a_sh = bit_table(bits(a.sites, shared));
    const auto b_free = bit_table(bits(b.sites, b_only));
    const auto b_sh = bit_table(bits(b.sites, shared));
    const auto out_a = bit_table(bits(out_region, a_only));
    const auto out_b = bit_table(bits(out_region, b_only));

    const auto na = static_cast<Eigen::Index>(a_free.size());
    const auto nb = static_cast<Eigen::Index>(b_free.size());
    const auto ns = static_cast<Eigen::Index>(a_sh.size());
    Matrix ma(na, ns);
    Matrix mb(ns, nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index s = 0; s < ns; ++s) {
            ma(i, s) = a.v(a_free[static_cast<std::size_t>(i)] | a_sh[static_cast<std::size_t>(s)]);
        }
    }
    for (Eigen::Index s = 0; s < ns; ++s) {
        for (Eigen::Index j = 0; j < nb; ++j) {
            mb(s, j) = b.v(b_free[static_cast<std::size_t>(j)] | b_sh[static_cast<std::size_t>(s)]);
        }
    }
    const Matrix g = ma * mb;
    DenseTensor out{out_region, Vector::Zero(Eigen::Index{1} << out_sites.size())};
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < nb; ++j) {
            out.v(out_a[static_cast<std::size_t>(i)] | out_b[static_cast<std::size_t>(j)]) = g(i, j);
        }
    }
    return out;
}

void check_coverage(const Lattice &lattice, const std::vector<StripState> &states, const char *side) {
    std::vector<int> count(static_cast<std::size_t>(lattice.size()), 0);
    for (const auto &s : states) {
        for (int site : s.sites) ++count[static_cast<std::size_t>(site)];
    }
    for (int c : count) {
        if (c != 1) {
            throw InputError(std::string("coverage mismatch: ") + side +
                             " strips must cover every site exactly once");
        }
    }
}

}  // namespace

StripState strip_state(const Lattice &lattice, const Strip &strip,
                       std::span<const EvolvedObservable *const> ops, Backend backend,
                       const Truncation &trunc, bool reversed) {
    StripState st;
    st.col_begin = strip.col_begin;
    st.col_end = strip.col_end;
    st.sites = strip.sites;

    std::vector<const EvolvedObservable *> order(ops.begin(), ops.end());
    std::sort(order.begin(), order.end(),
              [](const auto *x, const auto *y) { return x->site < y->site; });
    if (reversed) std::reverse(order.begin(), order.end());

    if (backend == Backend::kDense) {
        Vector v = Vector::Zero(Eigen::Index{1} << strip.sites.size());
        v(0) = 1.0;
        for (const auto *op : order) apply_local(v, positions_in(strip.sites, op->support), op->matrix);
        st.dense = std::move(v);
    } else {
        std::vector<int> columns;
        for (int c = strip.col_begin; c < strip.col_end; ++c) columns.push_back(c);
        RowMps mps(columns, lattice.ny());
        for (const auto *op : order) {
            positions_in(strip.sites, op->support);
            mps.apply(to_mpo(lattice, op->support, op->matrix, trunc), trunc);
        }
        st.mps = std::move(mps);
    }
    return st;
}

Complex contract(const Lattice &lattice, const std::vector<StripState> &a,
                 const std::vector<StripState> &b, Backend backend, const Truncation &trunc) {
    check_coverage(lattice, a, "A");
    check_coverage(lattice, b, "B");

    struct Item {
        const StripState *state;
        bool bra;
    };
    std::vector<Item> items;
    for (const auto &s : a) items.push_back({&s, false});
    for (const auto &s : b) items.push_back({&s, true});
    std::stable_sort(items.begin(), items.end(), [](const Item &x, const Item &y) {
        if (x.state->col_end != y.state->col_end) return x.state->col_end < y.state->col_end;
        return x.state->col_begin < y.state->col_begin;
    });

    if (backend == Backend::kDense) {
        auto load = [](const Item &it) {
            if (!it.state->dense) throw std::logic_error("strip state has no dense representation");
            DenseTensor t{it.state->sites, *it.state->dense};
            if (it.bra) t.v = t.v.conjugate();
            return t;
        };
        DenseTensor acc = load(items.front());
        for (std::size_t i = 1; i < items.size(); ++i) acc = contract_pair(lattice, acc, load(items[i]));
        if (!acc.sites.empty()) throw std::logic_error("contraction left open sites");
        return acc.v(0);
    }

    auto load = [](const Item &it) {
        if (!it.state->mps) throw std::logic_error("strip state has no MPS representation");
        RowMps m = *it.state->mps;
        if (it.bra) m.conjugate_in_place();
        return m;
    };
    RowMps acc = load(items.front());
    for (std::size_t i = 1; i < items.size(); ++i) acc = contract_shared(acc, load(items[i]), trunc);
    return acc.scalar();
}

MeanValueReport mean_value(const Hamiltonian &h, const Observable &obs,
                           const MeanValueOptions &options) {
    const auto start = Clock::now();
    const Lattice &lattice = h.lattice();
    const int n = lattice.size();
    if (obs.size() != n) throw InputError("observable size does not match the lattice");
    if (!(options.time >= 0.0) || !std::isfinite(options.time)) {
        throw InputError("time must be finite and non-negative");
    }

    MeanValueReport rep;
    rep.backend = options.backend;
    rep.method = options.solver.method;
    rep.budget = split_budget(options.delta, n, options.lr_fraction);
    rep.coupling = h.coupling_bound(options.time);
    rep.degree = std::max(2, lattice.max_degree());
    if (options.radius) {
        if (*options.radius < 1) throw InputError("radius must be at least 1");
        rep.radius = *options.radius;
    } else {
        rep.radius = min_radius(options.time, rep.coupling, rep.degree, n, rep.budget.eps_lr_total,
                                options.lightcone_cap);
    }

    const StripDecomposition decomp = strip_partition(lattice, rep.radius);
    if (options.backend == Backend::kDense) {
        for (Partition p : {Partition::kA, Partition::kB}) {
            for (const auto &s : decomp.strips(p)) {
                if (static_cast<int>(s.sites.size()) > options.dense_cap) {
                    throw ResourceError("dense strip of " + std::to_string(s.sites.size()) +
                                        " qubits exceeds dense cap " +
                                        std::to_string(options.dense_cap) + "; use the mps backend");
                }
            }
        }
    }

    LightconeSetup setup;
    setup.radius = rep.radius;
    setup.time = options.time;
    setup.coupling = rep.coupling;
    setup.degree = rep.degree;
    setup.cs_budget = rep.budget.per_site_cs;
    setup.cap = options.lightcone_cap;

    auto stage = Clock::now();
    std::vector<EvolvedObservable> evolved(static_cast<std::size_t>(n));
    parallel_for(n, options.threads, [&](int j) {
        evolved[static_cast<std::size_t>(j)] = evolved_observable(h, j, obs.at(j), setup, options.solver);
    });
    rep.timings.lightcones = seconds_since(stage);

    for (const auto &e : evolved) {
        rep.certified_lr += e.lr_error_share;
        rep.certified_cs += e.cs_error_share;
        rep.cs_heuristic = rep.cs_heuristic || e.cs_heuristic;
        rep.max_steps = std::max(rep.max_steps, e.steps);
        rep.total_steps += e.steps;
        rep.max_unitarity_defect = std::max(rep.max_unitarity_defect, e.unitarity_defect);
        rep.max_support = std::max(rep.max_support, static_cast<int>(e.support.size()));
    }

    stage = Clock::now();
    std::vector<std::vector<const EvolvedObservable *>> groups_a(decomp.strips_a.size());
    std::vector<std::vector<const EvolvedObservable *>> groups_b(decomp.strips_b.size());
    for (int j = 0; j < n; ++j) {
        const StripSlot &slot = decomp.assignment[static_cast<std::size_t>(j)];
        auto &groups = slot.partition == Partition::kA ? groups_a : groups_b;
        groups[static_cast<std::size_t>(slot.strip)].push_back(&evolved[static_cast<std::size_t>(j)]);
    }
    const auto na = static_cast<int>(decomp.strips_a.size());
    const auto nb = static_cast<int>(decomp.strips_b.size());
    std::vector<StripState> states_a(static_cast<std::size_t>(na));
    std::vector<StripState> states_b(static_cast<std::size_t>(nb));
    parallel_for(na + nb, options.threads, [&](int k) {
        const bool is_b = k >= na;
        const auto i = static_cast<std::size_t>(is_b ? k - na : k);
        const Partition p = is_b ? Partition::kB : Partition::kA;
        auto &groups = is_b ? groups_b : groups_a;
        StripState st = strip_state(lattice, decomp.strips(p)[i], groups[i], options.backend,
                                    options.truncation, is_b);
        st.partition = p;
        st.index = static_cast<int>(i);
        (is_b ? states_b : states_a)[i] = std::move(st);
    });
    for (const auto *side : {&states_a, &states_b}) {
        for (const auto &s : *side) {
            if (s.mps) rep.max_bond = std::max(rep.max_bond, s.mps->max_bond());
        }
    }
    rep.timings.strip_states = seconds_since(stage);

    stage = Clock::now();
    const Complex mu = contract(lattice, states_a, states_b, options.backend, options.truncation);
    rep.timings.contraction = seconds_since(stage);

    rep.mu = mu.real();
    rep.im_residual = mu.imag();
    const double certified = rep.certified_total();
    if (std::abs(mu.imag()) > std::max(1e-8, certified)) {
        throw std::logic_error("estimate has an imaginary part " + std::to_string(mu.imag()) +
                               " above the certified error");
    }
    if (std::abs(mu) > 1.0 + std::max(rep.budget.delta_total, certified)) {
        throw std::logic_error("estimate magnitude exceeds 1 + delta");
    }
    rep.timings.total = seconds_since(start);
    return rep;
}

}  // namespace qmv
