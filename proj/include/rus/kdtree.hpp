// Copyright 2026 The RUS Synthesis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <vector>

namespace rus {

/// Static k-d tree over points in R^D supporting radius queries.
template <std::size_t D>
class KdTree {
   public:
    using Point = std::array<double, D>;

    KdTree() = default;
    explicit KdTree(std::vector<Point> pts) : pts_(std::move(pts)), idx_(pts_.size()) {
        std::iota(idx_.begin(), idx_.end(), 0);
        build(0, idx_.size(), 0);
    }

    std::size_t size() const { return pts_.size(); }
    const Point &point(std::size_t i) const { return pts_[i]; }

    /// Calls fn(index) for every point within Euclidean distance r of q.
    template <class Fn>
    void radius(const Point &q, double r, Fn &&fn) const {
        if (!pts_.empty()) query(0, idx_.size(), 0, q, r * r, fn);
    }

   private:
    static constexpr std::size_t kLeaf = 8;

    void build(std::size_t lo, std::size_t hi, std::size_t depth) {
        if (hi - lo <= kLeaf) return;
        std::size_t axis = depth % D, mid = (lo + hi) / 2;
        std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi,
                         [&](std::size_t a, std::size_t b) { return pts_[a][axis] < pts_[b][axis]; });
        build(lo, mid, depth + 1);
        build(mid + 1, hi, depth + 1);
    }

    template <class Fn>
    void query(std::size_t lo, std::size_t hi, std::size_t depth, const Point &q, double r2, Fn &fn) const {
        if (hi - lo <= kLeaf) {
            for (std::size_t i = lo; i < hi; ++i)
                if (dist2(pts_[idx_[i]], q) <= r2) fn(idx_[i]);
            return;
        }
        std::size_t axis = depth % D, mid = (lo + hi) / 2;
        const Point &m = pts_[idx_[mid]];
        if (dist2(m, q) <= r2) fn(idx_[mid]);
        double diff = q[axis] - m[axis];
        if (diff <= 0 || diff * diff <= r2) query(lo, mid, depth + 1, q, r2, fn);
        if (diff >= 0 || diff * diff <= r2) query(mid + 1, hi, depth + 1, q, r2, fn);
    }

    static double dist2(const Point &a, const Point &b) {
        double s = 0;
        for (std::size_t i = 0; i < D; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return s;
    }

    std::vector<Point> pts_;
    std::vector<std::size_t> idx_;
};

}  // namespace rus
