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

#include "qmv/linalg.hpp"

#include <stdexcept>
#include <vector>

namespace qmv {

Matrix pauli(char p) {
    Matrix m = Matrix::Zero(2, 2);
    switch (p) {
    case 'I':
        m(0, 0) = 1.0;
        m(1, 1) = 1.0;
        break;
    case 'X':
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        break;
    case 'Y':
        m(0, 1) = -kI;
        m(1, 0) = kI;
        break;
    case 'Z':
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    default:
        throw std::invalid_argument(std::string("unknown Pauli label '") + p + "'");
    }
    return m;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double operator_norm(const Matrix &m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double hermitian_norm(const Matrix &h) {
    if (h.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix expm_hermitian(const Matrix &h, double dt) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    Vector phases = (-kI * dt * es.eigenvalues().cast<Complex>().array()).exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double unitarity_defect(const Matrix &u) {
    Matrix g = u.adjoint() * u;
    g -= Matrix::Identity(u.cols(), u.cols());
    return hermitian_norm(hermitize(g));
}

Matrix polar_unitary(const Matrix &a) {
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix hermitize(const Matrix &m) {
    return 0.5 * (m + m.adjoint());
}

namespace {

// Offsets of the 2^k local basis states inside the full index space.
std::vector<std::uint64_t> local_offsets(std::span<const int> qubits) {
    std::vector<std::uint64_t> offs(std::size_t{1} << qubits.size(), 0);
    for (std::size_t l = 0; l < offs.size(); ++l) {
        std::uint64_t o = 0;
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            if ((l >> i) & 1U) o |= std::uint64_t{1} << qubits[i];
        }
        offs[l] = o;
    }
    return offs;
}

std::uint64_t mask_of(std::span<const int> qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= std::uint64_t{1} << q;
    return mask;
}

}  // namespace

Matrix embed(const Matrix &op, std::span<const int> qubits, int num_qubits) {
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    const auto offs = local_offsets(qubits);
    const std::uint64_t mask = mask_of(qubits);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & mask) continue;
        for (std::size_t r = 0; r < offs.size(); ++r) {
            for (std::size_t c = 0; c < offs.size(); ++c) {
                out(static_cast<Eigen::Index>(base | offs[r]),
                    static_cast<Eigen::Index>(base | offs[c])) =
                    op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return out;
}

void apply_local(Vector &state, std::span<const int> qubits, const Matrix &op) {
    const auto dim = static_cast<std::uint64_t>(state.size());
    const auto offs = local_offsets(qubits);
    const std::uint64_t mask = mask_of(qubits);
    const auto k = static_cast<Eigen::Index>(offs.size());
    Vector in(k);
    Vector out(k);
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & mask) continue;
        for (Eigen::Index l = 0; l < k; ++l) {
            in(l) = state(static_cast<Eigen::Index>(base | offs[static_cast<std::size_t>(l)]));
        }
        out.noalias() = op * in;
        for (Eigen::Index l = 0; l < k; ++l) {
            state(static_cast<Eigen::Index>(base | offs[static_cast<std::size_t>(l)])) = out(l);
        }
    }
}

void apply_local_left(Matrix &m, std::span<const int> qubits, const Matrix &op) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        Vector col = m.col(c);
        apply_local(col, qubits, op);
        m.col(c) = col;
    }
}

Eigen::VectorXd hermitian_spectrum(const Matrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace qmv
