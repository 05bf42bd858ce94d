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
 * Dense complex linear algebra shared by the propagator, mean-value and
 * oracle code.
 *
 * Qubit convention: in a dense object over m qubits, qubit k is bit k of the
 * basis index (qubit 0 is the least significant bit). A matrix acting on
 * qubits (q_0, ..., q_{k-1}) uses local index sum_i bit(q_i) << i.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qmv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// 2x2 Pauli matrix for 'I', 'X', 'Y' or 'Z'.
Matrix pauli(char p);

Matrix kron(const Matrix &a, const Matrix &b);

/// Largest singular value.
double operator_norm(const Matrix &m);
/// Largest |eigenvalue| of a Hermitian matrix (only the lower triangle is read).
double hermitian_norm(const Matrix &h);

/// exp(-i * dt * H) for Hermitian H, by eigendecomposition.
Matrix expm_hermitian(const Matrix &h, double dt);

/// ||U^dagger U - I|| in operator norm.
double unitarity_defect(const Matrix &u);

/// Nearest unitary in the polar decomposition A = W P, computed from an SVD.
Matrix polar_unitary(const Matrix &a);

/// (M + M^dagger) / 2
Matrix hermitize(const Matrix &m);

/// Embed `op` (acting on `qubits`, local ordering as in the file comment)
/// into the full 2^num_qubits space.
Matrix embed(const Matrix &op, std::span<const int> qubits, int num_qubits);

/// state <- op applied on `qubits` of a num_qubits register.
void apply_local(Vector &state, std::span<const int> qubits, const Matrix &op);

/// Columns of `m` each treated as a register; m <- (op on qubits) * m.
void apply_local_left(Matrix &m, std::span<const int> qubits, const Matrix &op);

/// Sorted ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_spectrum(const Matrix &h);

}  // namespace qmv
