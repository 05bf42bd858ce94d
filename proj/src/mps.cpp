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

#include "qmv/mps.hpp"

#include <algorithm>
#include <stdexcept>

#include "qmv/errors.hpp"

namespace qmv {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<Eigen::Index> deposit_table(const std::vector<int> &positions) {
    std::vector<Eigen::Index> offs(std::size_t{1} << positions.size(), 0);
    for (std::size_t l = 0; l < offs.size(); ++l) {
        Eigen::Index o = 0;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if ((l >> i) & 1U) o |= Eigen::Index{1} << positions[i];
        }
        offs[l] = o;
    }
    return offs;
}

Eigen::Index kept_rank(const Eigen::VectorXd &s, double rel_cutoff) {
    if (s.size() == 0 || s(0) == 0.0) return 1;
    Eigen::Index keep = 0;
    while (keep < s.size() && s(keep) > rel_cutoff * s(0)) ++keep;
    return std::max<Eigen::Index>(keep, 1);
}

Eigen::Map<RowMajorMatrix> as_matrix(std::vector<Complex> &data, Eigen::Index rows, Eigen::Index cols) {
    return {data.data(), rows, cols};
}

void store(std::vector<Complex> &data, const Matrix &m) {
    data.resize(static_cast<std::size_t>(m.size()));
    as_matrix(data, m.rows(), m.cols()) = m;
}

}  // namespace

std::vector<MpoRow> to_mpo(const Lattice &lattice, const Region &support, const Matrix &op,
                           const Truncation &trunc) {
    const auto m = static_cast<int>(support.size());
    if (m == 0) throw InputError("cannot build an MPO on an empty region");
    if (op.rows() != (Eigen::Index{1} << m) || op.cols() != op.rows()) {
        throw InputError("operator dimension does not match its support");
    }

    const int row_lo = lattice.site(support[0]).y;
    const int row_hi = lattice.site(support[support.size() - 1]).y;
    const int nrows = row_hi - row_lo + 1;
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(nrows));
    for (int s : support) {
        Site p = lattice.site(s);
        cols[static_cast<std::size_t>(p.y - row_lo)].push_back(p.x);
    }
    std::vector<int> bit_offset(static_cast<std::size_t>(nrows), 0);
    std::vector<Eigen::Index> pair_dim(static_cast<std::size_t>(nrows));
    for (int k = 0, off = 0; k < nrows; ++k) {
        auto ku = static_cast<std::size_t>(k);
        bit_offset[ku] = off;
        off += static_cast<int>(cols[ku].size());
        pair_dim[ku] = Eigen::Index{1} << (2 * cols[ku].size());
    }
    std::vector<Eigen::Index> stride(static_cast<std::size_t>(nrows), 1);
    for (int k = nrows - 2; k >= 0; --k) {
        auto ku = static_cast<std::size_t>(k);
        stride[ku] = stride[ku + 1] * pair_dim[ku + 1];
    }

    // Regroup op(out, in) so that row k's (out_k, in_k) pair is the k-th
    // most significant index.
    const Eigen::Index dim = op.rows();
    std::vector<Complex> rem(static_cast<std::size_t>(dim * dim));
    for (Eigen::Index o = 0; o < dim; ++o) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            Eigen::Index pos = 0;
            for (int k = 0; k < nrows; ++k) {
                auto ku = static_cast<std::size_t>(k);
                const auto n = static_cast<int>(cols[ku].size());
                const Eigen::Index mask = (Eigen::Index{1} << n) - 1;
                const Eigen::Index ok = (o >> bit_offset[ku]) & mask;
                const Eigen::Index ik = (i >> bit_offset[ku]) & mask;
                pos += ((ok << n) | ik) * stride[ku];
            }
            rem[static_cast<std::size_t>(pos)] = op(o, i);
        }
    }

    std::vector<MpoRow> out;
    Eigen::Index chi = 1;
    Eigen::Index rest = dim * dim;
    for (int k = 0; k < nrows; ++k) {
        auto ku = static_cast<std::size_t>(k);
        MpoRow w;
        w.row = row_lo + k;
        w.columns = cols[ku];
        w.left = chi;
        w.dim = Eigen::Index{1} << cols[ku].size();
        rest /= pair_dim[ku];
        const Eigen::Index rows = chi * pair_dim[ku];
        if (k == nrows - 1) {
            w.right = 1;
            w.data = rem;
        } else {
            Matrix mat = as_matrix(rem, rows, rest);
            Eigen::BDCSVD<Matrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const Eigen::Index keep = kept_rank(svd.singularValues(), trunc.rel_cutoff);
            w.right = keep;
            store(w.data, svd.matrixU().leftCols(keep));
            Matrix next = svd.singularValues().head(keep).cast<Complex>().asDiagonal() *
                          svd.matrixV().leftCols(keep).adjoint();
            store(rem, next);
            chi = keep;
        }
        out.push_back(std::move(w));
    }
    return out;
}

RowMps::RowMps(std::vector<int> columns, int rows) : columns_(std::move(columns)) {
    std::sort(columns_.begin(), columns_.end());
    const Eigen::Index phys = Eigen::Index{1} << columns_.size();
    sites_.assign(static_cast<std::size_t>(rows), Tensor3(1, phys, 1));
    for (auto &t : sites_) t(0, 0, 0) = 1.0;
}

Eigen::Index RowMps::max_bond() const {
    Eigen::Index b = 1;
    for (const auto &t : sites_) b = std::max(b, t.right);
    return b;
}

void RowMps::apply(const std::vector<MpoRow> &mpo, const Truncation &trunc) {
    for (const auto &w : mpo) {
        if (w.row < 0 || w.row >= rows()) {
            throw std::logic_error("operator row outside the strip");
        }
        std::vector<int> positions;
        for (int c : w.columns) {
            auto it = std::lower_bound(columns_.begin(), columns_.end(), c);
            if (it == columns_.end() || *it != c) {
                throw std::logic_error("operator region escapes the strip");
            }
            positions.push_back(static_cast<int>(it - columns_.begin()));
        }
        const auto offs = deposit_table(positions);
        Eigen::Index mask = 0;
        for (int p : positions) mask |= Eigen::Index{1} << p;

        const Tensor3 &a = sites_[static_cast<std::size_t>(w.row)];
        const Eigen::Index cols = a.left * a.right;
        Matrix flat(a.phys, cols);
        for (Eigen::Index l = 0; l < a.left; ++l) {
            for (Eigen::Index p = 0; p < a.phys; ++p) {
                for (Eigen::Index r = 0; r < a.right; ++r) flat(p, l * a.right + r) = a(l, p, r);
            }
        }
        Tensor3 b(a.left * w.left, a.phys, a.right * w.right);
        Matrix block(w.dim, cols);
        Matrix wm(w.dim, w.dim);
        for (Eigen::Index bl = 0; bl < w.left; ++bl) {
            for (Eigen::Index br = 0; br < w.right; ++br) {
                for (Eigen::Index o = 0; o < w.dim; ++o) {
                    for (Eigen::Index i = 0; i < w.dim; ++i) wm(o, i) = w(bl, o, i, br);
                }
                for (Eigen::Index rest = 0; rest < a.phys; ++rest) {
                    if (rest & mask) continue;
                    for (Eigen::Index i = 0; i < w.dim; ++i) {
                        block.row(i) = flat.row(rest | offs[static_cast<std::size_t>(i)]);
                    }
                    const Matrix res = wm * block;
                    for (Eigen::Index o = 0; o < w.dim; ++o) {
                        const Eigen::Index p = rest | offs[static_cast<std::size_t>(o)];
                        for (Eigen::Index l = 0; l < a.left; ++l) {
                            for (Eigen::Index r = 0; r < a.right; ++r) {
                                b(l * w.left + bl, p, r * w.right + br) = res(o, l * a.right + r);
                            }
                        }
                    }
                }
            }
        }
        sites_[static_cast<std::size_t>(w.row)] = std::move(b);
    }
    compress(trunc);
}

void RowMps::compress(const Truncation &trunc) {
    const auto n = sites_.size();
    if (n < 2) return;
    for (std::size_t y = 0; y + 1 < n; ++y) {
        Tensor3 &a = sites_[y];
        const Eigen::Index rows = a.left * a.phys;
        Matrix mat = as_matrix(a.data, rows, a.right);
        Eigen::HouseholderQR<Matrix> qr(mat);
        const Eigen::Index k = std::min(rows, a.right);
        Matrix q = qr.householderQ() * Matrix::Identity(rows, k);
        Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        a.right = k;
        store(a.data, q);

        Tensor3 &next = sites_[y + 1];
        Matrix nm = as_matrix(next.data, next.left, next.phys * next.right);
        Matrix absorbed = r * nm;
        next.left = k;
        store(next.data, absorbed);
    }
    for (std::size_t y = n - 1; y >= 1; --y) {
        Tensor3 &a = sites_[y];
        Matrix mat = as_matrix(a.data, a.left, a.phys * a.right);
        Eigen::BDCSVD<Matrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::Index keep = kept_rank(svd.singularValues(), trunc.rel_cutoff);
        a.left = keep;
        store(a.data, svd.matrixV().leftCols(keep).adjoint());

        Tensor3 &prev = sites_[y - 1];
        Matrix pm = as_matrix(prev.data, prev.left * prev.phys, prev.right);
        Matrix us = svd.matrixU().leftCols(keep) *
                    svd.singularValues().head(keep).cast<Complex>().asDiagonal();
        Matrix absorbed = pm * us;
        prev.right = keep;
        store(prev.data, absorbed);
    }
}

void RowMps::conjugate_in_place() {
    for (auto &t : sites_) {
        for (auto &v : t.data) v = std::conj(v);
    }
}

Vector RowMps::to_dense() const {
    // cur(n, r): n indexes the rows absorbed so far, row 0 least significant.
    Eigen::Index count = 1;
    Matrix cur = Matrix::Ones(1, 1);
    for (const auto &t : sites_) {
        Matrix next = Matrix::Zero(count * t.phys, t.right);
        for (Eigen::Index n = 0; n < count; ++n) {
            for (Eigen::Index l = 0; l < t.left; ++l) {
                const Complex c = cur(n, l);
                if (c == Complex{}) continue;
                for (Eigen::Index p = 0; p < t.phys; ++p) {
                    for (Eigen::Index r = 0; r < t.right; ++r) next(n + p * count, r) += c * t(l, p, r);
                }
            }
        }
        count *= t.phys;
        cur = std::move(next);
    }
    return cur.col(0);
}

Complex RowMps::scalar() const {
    Matrix acc = Matrix::Identity(1, 1);
    for (const auto &t : sites_) {
        if (t.phys != 1) throw std::logic_error("scalar() on a state with open columns");
        Matrix m(t.left, t.right);
        for (Eigen::Index l = 0; l < t.left; ++l) {
            for (Eigen::Index r = 0; r < t.right; ++r) m(l, r) = t(l, 0, r);
        }
        acc = acc * m;
    }
    return acc(0, 0);
}

RowMps contract_shared(const RowMps &a, const RowMps &b, const Truncation &trunc) {
    if (a.rows() != b.rows()) throw std::logic_error("row count mismatch in strip contraction");
    const auto &ca = a.columns();
    const auto &cb = b.columns();
    std::vector<int> out_cols;
    std::set_symmetric_difference(ca.begin(), ca.end(), cb.begin(), cb.end(),
                                  std::back_inserter(out_cols));
    std::vector<int> shared;
    std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(shared));

    auto pos_in = [](const std::vector<int> &cols, int c) {
        return static_cast<int>(std::lower_bound(cols.begin(), cols.end(), c) - cols.begin());
    };
    std::vector<int> out_a_pos, out_b_pos;  // out bit -> (which side, position)
    std::vector<int> a_only_bits, b_only_bits;
    for (std::size_t k = 0; k < out_cols.size(); ++k) {
        int c = out_cols[k];
        if (std::binary_search(ca.begin(), ca.end(), c)) {
            a_only_bits.push_back(static_cast<int>(k));
            out_a_pos.push_back(pos_in(ca, c));
        } else {
            b_only_bits.push_back(static_cast<int>(k));
            out_b_pos.push_back(pos_in(cb, c));
        }
    }
    std::vector<int> sh_a, sh_b;
    for (int c : shared) {
        sh_a.push_back(pos_in(ca, c));
        sh_b.push_back(pos_in(cb, c));
    }

    const Eigen::Index out_dim = Eigen::Index{1} << out_cols.size();
    const Eigen::Index sh_dim = Eigen::Index{1} << shared.size();
    std::vector<Eigen::Index> a_part(static_cast<std::size_t>(out_dim), 0);
    std::vector<Eigen::Index> b_part(static_cast<std::size_t>(out_dim), 0);
    for (Eigen::Index o = 0; o < out_dim; ++o) {
        for (std::size_t i = 0; i < a_only_bits.size(); ++i) {
            if ((o >> a_only_bits[i]) & 1) a_part[static_cast<std::size_t>(o)] |= Eigen::Index{1} << out_a_pos[i];
        }
        for (std::size_t i = 0; i < b_only_bits.size(); ++i) {
            if ((o >> b_only_bits[i]) & 1) b_part[static_cast<std::size_t>(o)] |= Eigen::Index{1} << out_b_pos[i];
        }
    }
    const auto a_sh = deposit_table(sh_a);
    const auto b_sh = deposit_table(sh_b);

    RowMps result;
    result.columns_ = out_cols;
    result.sites_.resize(static_cast<std::size_t>(a.rows()));
    for (int y = 0; y < a.rows(); ++y) {
        const Tensor3 &ta = a.sites()[static_cast<std::size_t>(y)];
        const Tensor3 &tb = b.sites()[static_cast<std::size_t>(y)];
        Tensor3 t(ta.left * tb.left, out_dim, ta.right * tb.right);
        Matrix ma(ta.left * ta.right, sh_dim);
        Matrix mb(sh_dim, tb.left * tb.right);
        for (Eigen::Index o = 0; o < out_dim; ++o) {
            for (Eigen::Index s = 0; s < sh_dim; ++s) {
                const Eigen::Index pa = a_part[static_cast<std::size_t>(o)] | a_sh[static_cast<std::size_t>(s)];
                const Eigen::Index pb = b_part[static_cast<std::size_t>(o)] | b_sh[static_cast<std::size_t>(s)];
                for (Eigen::Index l = 0; l < ta.left; ++l) {
                    for (Eigen::Index r = 0; r < ta.right; ++r) ma(l * ta.right + r, s) = ta(l, pa, r);
                }
                for (Eigen::Index l = 0; l < tb.left; ++l) {
                    for (Eigen::Index r = 0; r < tb.right; ++r) mb(s, l * tb.right + r) = tb(l, pb, r);
                }
            }
            Matrix g = ma * mb;
            for (Eigen::Index la = 0; la < ta.left; ++la) {
                for (Eigen::Index ra = 0; ra < ta.right; ++ra) {
                    for (Eigen::Index lb = 0; lb < tb.left; ++lb) {
                        for (Eigen::Index rb = 0; rb < tb.right; ++rb) {
                            t(la * tb.left + lb, o, ra * tb.right + rb) =
                                g(la * ta.right + ra, lb * tb.right + rb);
                        }
                    }
                }
            }
        }
        result.sites_[static_cast<std::size_t>(y)] = std::move(t);
    }
    result.compress(trunc);
    return result;
}

}  // namespace qmv
