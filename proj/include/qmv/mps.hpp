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
 * Matrix product states whose sites are lattice rows restricted to a set of
 * columns, and the operations the strip contraction needs: conversion of a
 * dense local operator to an MPO, MPO application with SVD compression, and
 * partial overlaps of two such states over their shared columns.
 *
 * The physical index of row y packs the row's sites in column order, bit k
 * being columns[k]. Flattening all rows gives the dense vector over the
 * row-major region (row y occupies bits y*w .. y*w + w - 1).
 */

#pragma once

#include <vector>

#include "qmv/lattice.hpp"
#include "qmv/linalg.hpp"

namespace qmv {

struct Truncation {
    /// Singular values below rel_cutoff * (largest) are dropped.
    double rel_cutoff = 1e-12;
};

/// Rank-3 tensor (left bond, physical, right bond), row-major.
struct Tensor3 {
    Eigen::Index left = 1;
    Eigen::Index phys = 1;
    Eigen::Index right = 1;
    std::vector<Complex> data;

    Tensor3() = default;
    Tensor3(Eigen::Index l, Eigen::Index p, Eigen::Index r)
        : left(l), phys(p), right(r), data(static_cast<std::size_t>(l * p * r), Complex{}) {}

    Complex &operator()(Eigen::Index l, Eigen::Index p, Eigen::Index r) {
        return data[static_cast<std::size_t>((l * phys + p) * right + r)];
    }
    const Complex &operator()(Eigen::Index l, Eigen::Index p, Eigen::Index r) const {
        return data[static_cast<std::size_t>((l * phys + p) * right + r)];
    }
};

/// One row of an MPO: acts on `columns` of lattice row `row`.
struct MpoRow {
    int row = 0;
    std::vector<int> columns;
    Eigen::Index left = 1;
    Eigen::Index dim = 1;  ///< 2^columns.size()
    Eigen::Index right = 1;
    std::vector<Complex> data;  ///< (left, out, in, right), row-major

    const Complex &operator()(Eigen::Index l, Eigen::Index o, Eigen::Index i, Eigen::Index r) const {
        return data[static_cast<std::size_t>(((l * dim + o) * dim + i) * right + r)];
    }
};

/**
 * Splits `op`, a dense operator on the row-major sites of `support`, into one
 * MPO tensor per lattice row by sequential SVDs. Rows between the first and
 * last support row that hold no support site become bond-only identities.
 */
std::vector<MpoRow> to_mpo(const Lattice &lattice, const Region &support, const Matrix &op,
                           const Truncation &trunc = {});

class RowMps {
  public:
    RowMps() = default;
    /// |0...0> on the given columns of rows 0..rows-1.
    RowMps(std::vector<int> columns, int rows);

    const std::vector<int> &columns() const { return columns_; }
    int rows() const { return static_cast<int>(sites_.size()); }
    const std::vector<Tensor3> &sites() const { return sites_; }
    std::vector<Tensor3> &sites() { return sites_; }

    Eigen::Index max_bond() const;

    /// Applies the MPO and recompresses.
    void apply(const std::vector<MpoRow> &mpo, const Truncation &trunc);

    /// Left-canonical QR sweep followed by a truncating right-to-left SVD sweep.
    void compress(const Truncation &trunc);

    void conjugate_in_place();

    /// Dense amplitudes; bit (y * w + k) is row y, column columns[k].
    Vector to_dense() const;

    /// Value of a state with no columns left (all physical dims 1).
    Complex scalar() const;

  private:
    std::vector<int> columns_;
    std::vector<Tensor3> sites_;

    friend RowMps contract_shared(const RowMps &a, const RowMps &b, const Truncation &trunc);
};

/**
 * Row-by-row contraction of two states over their shared columns. The result
 * lives on the columns present in exactly one of them. No conjugation is
 * applied; pass a conjugated bra explicitly.
 */
RowMps contract_shared(const RowMps &a, const RowMps &b, const Truncation &trunc);

}  // namespace qmv
