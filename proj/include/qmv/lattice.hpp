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
 * Open-boundary square lattice geometry: sites, nearest-neighbour edges,
 * Manhattan balls, L-boundaries, and the two offset strip partitions used to
 * split the mean-value contraction into quasi one-dimensional pieces.
 *
 * Sites are addressed either as (x, y) pairs or by their row-major index
 * `y * nx + x`. Every ordered collection of sites in this library uses the
 * row-major order, and that order defines which qubit of a dense region
 * object a site corresponds to.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace qmv {

struct Site {
    int x = 0;
    int y = 0;

    friend bool operator==(const Site &, const Site &) = default;
};

/// Nearest-neighbour pair, stored with `first < second` (row-major indices).
struct Edge {
    int first = 0;
    int second = 0;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

class Lattice {
  public:
    Lattice(int nx, int ny);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int size() const { return nx_ * ny_; }

    bool contains(Site s) const { return s.x >= 0 && s.x < nx_ && s.y >= 0 && s.y < ny_; }
    bool contains(int index) const { return index >= 0 && index < size(); }

    /// Row-major index; throws InputError for sites outside the lattice.
    int index(Site s) const;
    Site site(int index) const;

    int distance(int a, int b) const;

    /// All nearest-neighbour edges, sorted.
    std::vector<Edge> edges() const;
    bool is_edge(int a, int b) const;
    std::size_t edge_count() const;

    int degree(int index) const;
    int max_degree() const;

    friend bool operator==(const Lattice &, const Lattice &) = default;

  private:
    int nx_;
    int ny_;
};

/// Duplicate-free set of sites in row-major order. The position of a site in
/// the ordering is its qubit slot in any dense object defined on the region.
class Region {
  public:
    Region() = default;
    /// Sorts and validates; throws InputError on duplicates or out-of-range sites.
    Region(const Lattice &lattice, std::vector<int> sites);

    static Region whole(const Lattice &lattice);

    std::size_t size() const { return sites_.size(); }
    bool empty() const { return sites_.empty(); }
    bool contains(int site) const;
    /// Qubit slot of `site`, or -1.
    int position(int site) const;

    std::span<const int> sites() const { return sites_; }
    int operator[](std::size_t i) const { return sites_[i]; }
    auto begin() const { return sites_.begin(); }
    auto end() const { return sites_.end(); }

    bool is_subset_of(const Region &other) const;
    Region united(const Region &other) const;

    friend bool operator==(const Region &, const Region &) = default;

  private:
    std::vector<int> sites_;
};

/// Sites at Manhattan distance <= radius from `center`.
Region ball(const Lattice &lattice, Site center, int radius);
Region ball(const Lattice &lattice, int center, int radius);

/// Sites at distance 1..radius from `region`, excluding the region itself.
Region l_boundary(const Lattice &lattice, const Region &region, int radius);

enum class Partition { kA, kB };

/// One strip: a contiguous band of columns spanning every row, together with
/// its central band. Column ranges are half-open and already clipped to the
/// lattice.
struct Strip {
    int col_begin = 0;
    int col_end = 0;
    int center_begin = 0;
    int center_end = 0;
    Region sites;
    Region center;

    int width() const { return col_end - col_begin; }
};

struct StripSlot {
    Partition partition = Partition::kA;
    int strip = 0;
    int slot = 0;  ///< position of the site inside the strip's central region
};

struct StripDecomposition {
    int radius = 0;
    std::vector<Strip> strips_a;
    std::vector<Strip> strips_b;
    /// Indexed by row-major site.
    std::vector<StripSlot> assignment;

    const std::vector<Strip> &strips(Partition p) const {
        return p == Partition::kA ? strips_a : strips_b;
    }
};

/**
 * Two partitions of the columns into strips of width 4L. Partition A starts at
 * column 0, partition B is shifted by 2L. The central 2L columns of each strip
 * are its center, and the centers of A and B together tile the lattice. Strips
 * that run off either edge of the lattice are clipped, which keeps every center
 * site at distance >= L from the inside edge of its strip.
 *
 * Throws InputError("lattice too narrow for this radius") when a single
 * lightcone (2L + 1 columns) does not fit across the lattice.
 */
StripDecomposition strip_partition(const Lattice &lattice, int radius);

/// Disjoint 2L x 2L blocks covering the lattice, truncated at the edges.
std::vector<Region> super_sites(const Lattice &lattice, int radius);

}  // namespace qmv
