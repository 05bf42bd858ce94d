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
 * Time-dependent edge-local Hamiltonians H(t) = sum_e u_e(t) h_e on a lattice,
 * their restriction to a region plus its L-boundary, and the norm bounds the
 * error analysis needs. Units have hbar = 1.
 */

#pragma once

#include <array>
#include <utility>
#include <variant>
#include <vector>

#include "qmv/lattice.hpp"
#include "qmv/linalg.hpp"

namespace qmv {

/// Default limit on the number of qubits of a dense lightcone object.
inline constexpr int kDefaultLightconeCap = 14;

/// Scalar coefficient u(t). Only families with closed-form sup and
/// derivative bounds are representable.
class Schedule {
  public:
    struct Constant {
        double value = 0.0;
    };
    /// a + b cos(omega t + phi)
    struct Harmonic {
        double a = 0.0;
        double b = 0.0;
        double omega = 0.0;
        double phi = 0.0;
    };
    /// Linear interpolation between knots; constant extrapolation outside.
    struct PiecewiseLinear {
        std::vector<std::pair<double, double>> knots;
    };

    Schedule() = default;
    static Schedule constant(double value);
    static Schedule harmonic(double a, double b, double omega, double phi);
    /// Throws InputError unless knots are non-empty and strictly increasing in t.
    static Schedule piecewise_linear(std::vector<std::pair<double, double>> knots);

    double value(double t) const;
    double derivative(double t) const;
    /// Upper bound on |u(t)| over [0, horizon].
    double sup_norm(double horizon) const;
    /// Upper bound on |u'(t)| over [0, horizon] (almost everywhere).
    double deriv_bound(double horizon) const;
    /// The schedule t -> u(t + offset).
    Schedule shifted(double offset) const;

    bool is_constant() const;
    const std::variant<Constant, Harmonic, PiecewiseLinear> &form() const { return form_; }

  private:
    std::variant<Constant, Harmonic, PiecewiseLinear> form_{Constant{}};
};

/// Two-qubit Hermitian term given by real coefficients over the Pauli basis.
/// coeff(a, b) multiplies sigma_a on the edge's first site times sigma_b on
/// its second site, with Pauli labels indexed I=0, X=1, Y=2, Z=3.
class TwoSiteTerm {
  public:
    TwoSiteTerm() { coeffs_.fill(0.0); }
    explicit TwoSiteTerm(const std::array<double, 16> &coeffs) : coeffs_(coeffs) {}

    /// E.g. pauli("XZ", 0.5): 0.5 X(first) Z(second).
    static TwoSiteTerm pauli(const char labels[2], double coeff);

    double coeff(int a, int b) const { return coeffs_[static_cast<std::size_t>(4 * a + b)]; }
    void set(int a, int b, double c) { coeffs_[static_cast<std::size_t>(4 * a + b)] = c; }
    const std::array<double, 16> &coeffs() const { return coeffs_; }

    TwoSiteTerm &operator+=(const TwoSiteTerm &other);
    /// Same operator with the roles of the two sites exchanged.
    TwoSiteTerm swapped() const;

    /// 4x4 matrix; bit 0 of the local index is the first site.
    Matrix matrix() const;
    double op_norm() const;

  private:
    std::array<double, 16> coeffs_;
};

struct TermComponent {
    TermComponent(Schedule s, TwoSiteTerm t)
        : schedule(std::move(s)), term(t), local(t.matrix()), norm(hermitian_norm(local)) {}

    Schedule schedule;
    TwoSiteTerm term;
    Matrix local;  ///< term.matrix(), cached
    double norm;   ///< term.op_norm(), cached
};

/// All interactions on one edge. Several components arise when an edge is
/// listed more than once; they are kept as a list and summed on evaluation.
struct EdgeTerm {
    Edge edge;
    std::vector<TermComponent> components;

    /// sum_k u_k(t) h_k as a 4x4 matrix.
    Matrix matrix(double t) const;
    double sup_bound(double horizon) const;
    double deriv_bound(double horizon) const;
};

class Hamiltonian {
  public:
    explicit Hamiltonian(Lattice lattice) : lattice_(lattice) {}

    /// Adds u(t) h on the edge (a, b). The term is interpreted with `a` as
    /// its first site. Throws InputError if (a, b) is not a lattice edge.
    void add_term(int a, int b, const Schedule &schedule, const TwoSiteTerm &term);

    const Lattice &lattice() const { return lattice_; }
    /// Sorted by edge.
    const std::vector<EdgeTerm> &terms() const { return terms_; }

    /// g: max over edges of the sup-norm bound of u_e(t) h_e on [0, horizon].
    double coupling_bound(double horizon) const;

  private:
    Lattice lattice_;
    std::vector<EdgeTerm> terms_;
};

struct LocalTerm {
    EdgeTerm source;
    int first_qubit = 0;
    int second_qubit = 0;
};

/// Hamiltonian terms whose edges lie inside `region`, in region-local qubit
/// numbering.
class RegionHamiltonian {
  public:
    RegionHamiltonian() = default;
    RegionHamiltonian(Region region, std::vector<LocalTerm> terms)
        : region_(std::move(region)), terms_(std::move(terms)) {}

    const Region &region() const { return region_; }
    const std::vector<LocalTerm> &terms() const { return terms_; }
    int num_qubits() const { return static_cast<int>(region_.size()); }

    /// Dense H_A(t). Throws ResourceError("lightcone too large") above `cap` qubits.
    Matrix assemble(double t, int cap = kDefaultLightconeCap) const;
    SparseMatrix assemble_sparse(double t) const;
    /// out = H_A(t) in, term by term without assembling H_A.
    void apply(double t, const Vector &in, Vector &out) const;
    /// Dense dH_A/dt at t.
    Matrix assemble_derivative(double t, int cap = kDefaultLightconeCap) const;

    /// Triangle-inequality bound sum_e max|u_e'| ||h_e|| on [0, horizon].
    double derivative_bound(double horizon) const;
    /// Triangle-inequality bound on ||H_A(t)|| over [0, horizon].
    double norm_bound(double horizon) const;

    /// The same Hamiltonian with every schedule advanced by `offset`.
    RegionHamiltonian shifted(double offset) const;

  private:
    Region region_;
    std::vector<LocalTerm> terms_;
};

/// Terms of H with both endpoints in `region`.
RegionHamiltonian on_region(const Hamiltonian &h, const Region &region);

/// H_A: region = A united with its L-boundary; keeps the terms inside it.
RegionHamiltonian restrict(const Hamiltonian &h, const Region &a, int radius);

/// Sites connected to `site` through edges that carry a term of `h`.
/// Terms outside this component commute with everything supported on it.
Region interaction_component(const Hamiltonian &h, const Region &within, int site);

/// Connected components of the interaction graph, each sorted row-major.
std::vector<Region> interaction_components(const Hamiltonian &h);

}  // namespace qmv
