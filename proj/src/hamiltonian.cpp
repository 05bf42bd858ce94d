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

#include "qmv/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmv/errors.hpp"

namespace qmv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr char kPauliLabels[4] = {'I', 'X', 'Y', 'Z'};

int pauli_index(char c) {
    switch (c) {
    case 'I':
        return 0;
    case 'X':
        return 1;
    case 'Y':
        return 2;
    case 'Z':
        return 3;
    default:
        throw InputError(std::string("unknown Pauli label '") + c + "'");
    }
}

}  // namespace

Schedule Schedule::constant(double value) {
    Schedule s;
    s.form_ = Constant{value};
    return s;
}

Schedule Schedule::harmonic(double a, double b, double omega, double phi) {
    Schedule s;
    s.form_ = Harmonic{a, b, omega, phi};
    return s;
}

Schedule Schedule::piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw InputError("piecewise-linear schedule needs at least one knot");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].first > knots[i - 1].first)) {
            throw InputError("piecewise-linear knots must be strictly increasing in time");
        }
    }
    Schedule s;
    s.form_ = PiecewiseLinear{std::move(knots)};
    return s;
}

double Schedule::value(double t) const {
    return std::visit(
        Overloaded{
            [](const Constant &c) { return c.value; },
            [t](const Harmonic &h) { return h.a + h.b * std::cos(h.omega * t + h.phi); },
            [t](const PiecewiseLinear &p) {
                const auto &k = p.knots;
                if (t <= k.front().first) return k.front().second;
                if (t >= k.back().first) return k.back().second;
                auto it = std::upper_bound(k.begin(), k.end(), t,
                                           [](double v, const auto &knot) { return v < knot.first; });
                const auto &hi = *it;
                const auto &lo = *(it - 1);
                double w = (t - lo.first) / (hi.first - lo.first);
                return lo.second + w * (hi.second - lo.second);
            },
        },
        form_);
}

double Schedule::derivative(double t) const {
    return std::visit(
        Overloaded{
            [](const Constant &) { return 0.0; },
            [t](const Harmonic &h) { return -h.b * h.omega * std::sin(h.omega * t + h.phi); },
            [t](const PiecewiseLinear &p) {
                const auto &k = p.knots;
                if (t < k.front().first || t >= k.back().first) return 0.0;
                auto it = std::upper_bound(k.begin(), k.end(), t,
                                           [](double v, const auto &knot) { return v < knot.first; });
                const auto &hi = *it;
                const auto &lo = *(it - 1);
                return (hi.second - lo.second) / (hi.first - lo.first);
            },
        },
        form_);
}

double Schedule::sup_norm(double horizon) const {
    return std::visit(
        Overloaded{
            [](const Constant &c) { return std::abs(c.value); },
            [](const Harmonic &h) { return std::abs(h.a) + std::abs(h.b); },
            [this, horizon](const PiecewiseLinear &p) {
                double best = std::max(std::abs(value(0.0)), std::abs(value(horizon)));
                for (const auto &[t, v] : p.knots) {
                    if (t >= 0.0 && t <= horizon) best = std::max(best, std::abs(v));
                }
                return best;
            },
        },
        form_);
}

double Schedule::deriv_bound(double horizon) const {
    return std::visit(
        Overloaded{
            [](const Constant &) { return 0.0; },
            [](const Harmonic &h) { return std::abs(h.b * h.omega); },
            [horizon](const PiecewiseLinear &p) {
                double best = 0.0;
                const auto &k = p.knots;
                for (std::size_t i = 1; i < k.size(); ++i) {
                    if (k[i].first <= 0.0 || k[i - 1].first >= horizon) continue;
                    double slope = (k[i].second - k[i - 1].second) / (k[i].first - k[i - 1].first);
                    best = std::max(best, std::abs(slope));
                }
                return best;
            },
        },
        form_);
}

Schedule Schedule::shifted(double offset) const {
    Schedule s;
    s.form_ = std::visit(
        Overloaded{
            [](const Constant &c) -> decltype(form_) { return c; },
            [offset](const Harmonic &h) -> decltype(form_) {
                return Harmonic{h.a, h.b, h.omega, h.phi + h.omega * offset};
            },
            [offset](const PiecewiseLinear &p) -> decltype(form_) {
                PiecewiseLinear q = p;
                for (auto &knot : q.knots) knot.first -= offset;
                return q;
            },
        },
        form_);
    return s;
}

bool Schedule::is_constant() const {
    if (std::holds_alternative<Constant>(form_)) return true;
    if (const auto *h = std::get_if<Harmonic>(&form_)) return h->b == 0.0 || h->omega == 0.0;
    const auto &k = std::get<PiecewiseLinear>(form_).knots;
    return std::all_of(k.begin(), k.end(), [&](const auto &knot) { return knot.second == k.front().second; });
}

TwoSiteTerm TwoSiteTerm::pauli(const char labels[2], double coeff) {
    TwoSiteTerm t;
    t.set(pauli_index(labels[0]), pauli_index(labels[1]), coeff);
    return t;
}

TwoSiteTerm &TwoSiteTerm::operator+=(const TwoSiteTerm &other) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

TwoSiteTerm TwoSiteTerm::swapped() const {
    TwoSiteTerm t;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) t.set(b, a, coeff(a, b));
    }
    return t;
}

Matrix TwoSiteTerm::matrix() const {
    Matrix m = Matrix::Zero(4, 4);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            double c = coeff(a, b);
            if (c != 0.0) m += c * kron(qmv::pauli(kPauliLabels[b]), qmv::pauli(kPauliLabels[a]));
        }
    }
    return m;
}

double TwoSiteTerm::op_norm() const {
    return hermitian_norm(matrix());
}

Matrix EdgeTerm::matrix(double t) const {
    Matrix m = Matrix::Zero(4, 4);
    for (const auto &c : components) m += c.schedule.value(t) * c.local;
    return m;
}

double EdgeTerm::sup_bound(double horizon) const {
    double s = 0.0;
    for (const auto &c : components) s += c.schedule.sup_norm(horizon) * c.norm;
    return s;
}

double EdgeTerm::deriv_bound(double horizon) const {
    double s = 0.0;
    for (const auto &c : components) s += c.schedule.deriv_bound(horizon) * c.norm;
    return s;
}

void Hamiltonian::add_term(int a, int b, const Schedule &schedule, const TwoSiteTerm &term) {
    if (!lattice_.is_edge(a, b)) {
        throw InputError("sites " + std::to_string(a) + " and " + std::to_string(b) +
                         " are not nearest neighbours");
    }
    Edge e{std::min(a, b), std::max(a, b)};
    TermComponent comp{schedule, a < b ? term : term.swapped()};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const EdgeTerm &t, const Edge &key) { return t.edge < key; });
    if (it != terms_.end() && it->edge == e) {
        it->components.push_back(std::move(comp));
    } else {
        terms_.insert(it, EdgeTerm{e, {std::move(comp)}});
    }
}

double Hamiltonian::coupling_bound(double horizon) const {
    double g = 0.0;
    for (const auto &t : terms_) g = std::max(g, t.sup_bound(horizon));
    return g;
}

namespace {

void check_cap(int qubits, int cap) {
    if (qubits > cap) {
        throw ResourceError("lightcone too large: " + std::to_string(qubits) + " qubits exceeds cap " +
                            std::to_string(cap));
    }
}

template <class Local>
Matrix assemble_dense(const RegionHamiltonian &h, Local &&local) {
    const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto &term : h.terms()) {
        Matrix m = local(term.source);
        const Eigen::Index b0 = Eigen::Index{1} << term.first_qubit;
        const Eigen::Index b1 = Eigen::Index{1} << term.second_qubit;
        const Eigen::Index offs[4] = {0, b0, b1, b0 | b1};
        for (Eigen::Index base = 0; base < dim; ++base) {
            if (base & (b0 | b1)) continue;
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) out(base | offs[r], base | offs[c]) += m(r, c);
            }
        }
    }
    return out;
}

}  // namespace

Matrix RegionHamiltonian::assemble(double t, int cap) const {
    check_cap(num_qubits(), cap);
    return assemble_dense(*this, [t](const EdgeTerm &e) { return e.matrix(t); });
}

Matrix RegionHamiltonian::assemble_derivative(double t, int cap) const {
    check_cap(num_qubits(), cap);
    return assemble_dense(*this, [t](const EdgeTerm &e) {
        Matrix m = Matrix::Zero(4, 4);
        for (const auto &c : e.components) m += c.schedule.derivative(t) * c.local;
        return m;
    });
}

SparseMatrix RegionHamiltonian::assemble_sparse(double t) const {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(terms_.size() * static_cast<std::size_t>(dim) * 4);
    for (const auto &term : terms_) {
        Matrix m = term.source.matrix(t);
        const Eigen::Index b0 = Eigen::Index{1} << term.first_qubit;
        const Eigen::Index b1 = Eigen::Index{1} << term.second_qubit;
        const Eigen::Index offs[4] = {0, b0, b1, b0 | b1};
        for (Eigen::Index base = 0; base < dim; ++base) {
            if (base & (b0 | b1)) continue;
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    if (m(r, c) != 0.0) trips.emplace_back(base | offs[r], base | offs[c], m(r, c));
                }
            }
        }
    }
    SparseMatrix out(dim, dim);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

void RegionHamiltonian::apply(double t, const Vector &in, Vector &out) const {
    out.setZero(in.size());
    const Eigen::Index dim = in.size();
    for (const auto &term : terms_) {
        Matrix m = term.source.matrix(t);
        const Eigen::Index b0 = Eigen::Index{1} << term.first_qubit;
        const Eigen::Index b1 = Eigen::Index{1} << term.second_qubit;
        const Eigen::Index offs[4] = {0, b0, b1, b0 | b1};
        for (Eigen::Index base = 0; base < dim; ++base) {
            if (base & (b0 | b1)) continue;
            Complex v[4];
            for (int c = 0; c < 4; ++c) v[c] = in(base | offs[c]);
            for (int r = 0; r < 4; ++r) {
                out(base | offs[r]) += m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
            }
        }
    }
}

double RegionHamiltonian::derivative_bound(double horizon) const {
    double s = 0.0;
    for (const auto &t : terms_) s += t.source.deriv_bound(horizon);
    return s;
}

double RegionHamiltonian::norm_bound(double horizon) const {
    double s = 0.0;
    for (const auto &t : terms_) s += t.source.sup_bound(horizon);
    return s;
}

RegionHamiltonian RegionHamiltonian::shifted(double offset) const {
    std::vector<LocalTerm> terms = terms_;
    for (auto &t : terms) {
        for (auto &c : t.source.components) c.schedule = c.schedule.shifted(offset);
    }
    return RegionHamiltonian(region_, std::move(terms));
}

RegionHamiltonian on_region(const Hamiltonian &h, const Region &region) {
    std::vector<LocalTerm> terms;
    for (const auto &t : h.terms()) {
        int p0 = region.position(t.edge.first);
        int p1 = region.position(t.edge.second);
        if (p0 >= 0 && p1 >= 0) terms.push_back(LocalTerm{t, p0, p1});
    }
    return RegionHamiltonian(region, std::move(terms));
}

RegionHamiltonian restrict(const Hamiltonian &h, const Region &a, int radius) {
    if (a.empty()) throw InputError("cannot restrict a Hamiltonian to an empty region");
    if (radius < 0) throw InputError("restriction radius must be non-negative");
    return on_region(h, a.united(l_boundary(h.lattice(), a, radius)));
}

Region interaction_component(const Hamiltonian &h, const Region &within, int site) {
    if (!within.contains(site)) throw InputError("component seed is not inside the region");
    std::vector<int> found{site};
    std::vector<int> frontier{site};
    while (!frontier.empty()) {
        int s = frontier.back();
        frontier.pop_back();
        for (const auto &t : h.terms()) {
            int other = -1;
            if (t.edge.first == s) other = t.edge.second;
            if (t.edge.second == s) other = t.edge.first;
            if (other < 0 || !within.contains(other)) continue;
            if (std::find(found.begin(), found.end(), other) != found.end()) continue;
            found.push_back(other);
            frontier.push_back(other);
        }
    }
    return Region(h.lattice(), std::move(found));
}

std::vector<Region> interaction_components(const Hamiltonian &h) {
    const int n = h.lattice().size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto &t : h.terms()) {
        int a = find(t.edge.first);
        int b = find(t.edge.second);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) groups[static_cast<std::size_t>(find(s))].push_back(s);
    std::vector<Region> out;
    for (auto &g : groups) {
        if (!g.empty()) out.emplace_back(h.lattice(), std::move(g));
    }
    return out;
}

}  // namespace qmv
