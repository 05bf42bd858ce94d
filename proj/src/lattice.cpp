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

#include "qmv/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "qmv/errors.hpp"

namespace qmv {

Lattice::Lattice(int nx, int ny) : nx_(nx), ny_(ny) {
    if (nx < 1 || ny < 1) {
        throw InputError("lattice dimensions must be positive, got " + std::to_string(nx) +
                         "x" + std::to_string(ny));
    }
}

int Lattice::index(Site s) const {
    if (!contains(s)) {
        throw InputError("site (" + std::to_string(s.x) + "," + std::to_string(s.y) +
                         ") is outside the lattice");
    }
    return s.y * nx_ + s.x;
}

Site Lattice::site(int index) const {
    if (!contains(index)) {
        throw InputError("site index " + std::to_string(index) + " is outside the lattice");
    }
    return {index % nx_, index / nx_};
}

int Lattice::distance(int a, int b) const {
    Site sa = site(a);
    Site sb = site(b);
    return std::abs(sa.x - sb.x) + std::abs(sa.y - sb.y);
}

std::vector<Edge> Lattice::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (int y = 0; y < ny_; ++y) {
        for (int x = 0; x < nx_; ++x) {
            int i = y * nx_ + x;
            if (x + 1 < nx_) out.push_back({i, i + 1});
            if (y + 1 < ny_) out.push_back({i, i + nx_});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Lattice::is_edge(int a, int b) const {
    return contains(a) && contains(b) && distance(a, b) == 1;
}

std::size_t Lattice::edge_count() const {
    return static_cast<std::size_t>(nx_ * (ny_ - 1) + ny_ * (nx_ - 1));
}

int Lattice::degree(int index) const {
    Site s = site(index);
    return (s.x > 0) + (s.x + 1 < nx_) + (s.y > 0) + (s.y + 1 < ny_);
}

int Lattice::max_degree() const {
    int best = 0;
    for (int i = 0; i < size(); ++i) best = std::max(best, degree(i));
    return best;
}

Region::Region(const Lattice &lattice, std::vector<int> sites) : sites_(std::move(sites)) {
    std::sort(sites_.begin(), sites_.end());
    if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end()) {
        throw InputError("region contains a duplicate site");
    }
    for (int s : sites_) {
        if (!lattice.contains(s)) {
            throw InputError("region site " + std::to_string(s) + " is outside the lattice");
        }
    }
}

Region Region::whole(const Lattice &lattice) {
    std::vector<int> all(static_cast<std::size_t>(lattice.size()));
    for (int i = 0; i < lattice.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return Region(lattice, std::move(all));
}

bool Region::contains(int site) const {
    return std::binary_search(sites_.begin(), sites_.end(), site);
}

int Region::position(int site) const {
    auto it = std::lower_bound(sites_.begin(), sites_.end(), site);
    if (it == sites_.end() || *it != site) return -1;
    return static_cast<int>(it - sites_.begin());
}

bool Region::is_subset_of(const Region &other) const {
    return std::includes(other.sites_.begin(), other.sites_.end(), sites_.begin(), sites_.end());
}

Region Region::united(const Region &other) const {
    Region out;
    std::set_union(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                   std::back_inserter(out.sites_));
    return out;
}

Region ball(const Lattice &lattice, Site center, int radius) {
    return ball(lattice, lattice.index(center), radius);
}

Region ball(const Lattice &lattice, int center, int radius) {
    if (radius < 0) throw InputError("lightcone radius must be non-negative");
    Site c = lattice.site(center);
    std::vector<int> sites;
    for (int y = std::max(0, c.y - radius); y <= std::min(lattice.ny() - 1, c.y + radius); ++y) {
        int span = radius - std::abs(y - c.y);
        for (int x = std::max(0, c.x - span); x <= std::min(lattice.nx() - 1, c.x + span); ++x) {
            sites.push_back(y * lattice.nx() + x);
        }
    }
    return Region(lattice, std::move(sites));
}

Region l_boundary(const Lattice &lattice, const Region &region, int radius) {
    if (region.empty()) throw InputError("l_boundary needs a non-empty region");
    if (radius < 0) throw InputError("boundary radius must be non-negative");
    std::vector<int> sites;
    for (int s = 0; s < lattice.size(); ++s) {
        if (region.contains(s)) continue;
        int d = lattice.size();
        for (int r : region) d = std::min(d, lattice.distance(s, r));
        if (d <= radius) sites.push_back(s);
    }
    return Region(lattice, std::move(sites));
}

namespace {

Region columns(const Lattice &lattice, int begin, int end) {
    std::vector<int> sites;
    for (int y = 0; y < lattice.ny(); ++y) {
        for (int x = begin; x < end; ++x) sites.push_back(y * lattice.nx() + x);
    }
    return Region(lattice, std::move(sites));
}

// Strip k of a partition with offset `shift` covers columns
// [4Lk - shift, 4Lk - shift + 4L) and has center [.. + L, .. + 3L).
std::vector<Strip> make_strips(const Lattice &lattice, int radius, int shift) {
    const int width = 4 * radius;
    std::vector<Strip> out;
    for (int k = 0;; ++k) {
        int lo = width * k - shift;
        if (lo >= lattice.nx()) break;
        Strip s;
        s.col_begin = std::max(0, lo);
        s.col_end = std::min(lattice.nx(), lo + width);
        if (s.col_end <= s.col_begin) continue;
        s.center_begin = std::clamp(lo + radius, s.col_begin, s.col_end);
        s.center_end = std::clamp(lo + 3 * radius, s.col_begin, s.col_end);
        s.sites = columns(lattice, s.col_begin, s.col_end);
        s.center = columns(lattice, s.center_begin, s.center_end);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

StripDecomposition strip_partition(const Lattice &lattice, int radius) {
    if (radius < 1) throw InputError("strip radius must be positive");
    if (2 * radius + 1 > lattice.nx()) {
        throw InputError("lattice too narrow for this radius (nx=" + std::to_string(lattice.nx()) +
                         ", L=" + std::to_string(radius) + ")");
    }
    StripDecomposition d;
    d.radius = radius;
    d.strips_a = make_strips(lattice, radius, 0);
    d.strips_b = make_strips(lattice, radius, 2 * radius);
    d.assignment.assign(static_cast<std::size_t>(lattice.size()), StripSlot{});
    std::vector<int> seen(static_cast<std::size_t>(lattice.size()), 0);
    for (Partition p : {Partition::kA, Partition::kB}) {
        const auto &strips = d.strips(p);
        for (std::size_t i = 0; i < strips.size(); ++i) {
            const Region &c = strips[i].center;
            for (std::size_t slot = 0; slot < c.size(); ++slot) {
                auto site = static_cast<std::size_t>(c[slot]);
                d.assignment[site] = {p, static_cast<int>(i), static_cast<int>(slot)};
                ++seen[site];
            }
        }
    }
    // Centers of A and B must tile the lattice exactly once.
    for (int count : seen) {
        if (count != 1) throw std::logic_error("strip centers do not tile the lattice");
    }
    return d;
}

std::vector<Region> super_sites(const Lattice &lattice, int radius) {
    if (radius < 1) throw InputError("super-site radius must be positive");
    const int block = 2 * radius;
    std::vector<Region> out;
    for (int by = 0; by < lattice.ny(); by += block) {
        for (int bx = 0; bx < lattice.nx(); bx += block) {
            std::vector<int> sites;
            for (int y = by; y < std::min(lattice.ny(), by + block); ++y) {
                for (int x = bx; x < std::min(lattice.nx(), bx + block); ++x) {
                    sites.push_back(y * lattice.nx() + x);
                }
            }
            out.emplace_back(lattice, std::move(sites));
        }
    }
    return out;
}

}  // namespace qmv
