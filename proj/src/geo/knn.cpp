#include "pointforge/geo/knn.hpp"

#include <algorithm>
#include <cmath>

namespace pf::geo {

namespace {

struct Cand {
    double d2;
    int idx;
    bool operator<(const Cand& o) const { return d2 < o.d2 || (d2 == o.d2 && idx < o.idx); }
};

}  // namespace

KnnIndex::KnnIndex(const std::vector<Vec3>& points, float cell_size) : points_(points) {
    if (points_.empty()) throw data_error("knn index: empty point set");
    if (cell_size <= 0.f) {
        PointCloud tmp;
        tmp.positions = points_;
        float r = bounding_sphere_radius(tmp);
        cell_size = r / std::cbrt(static_cast<float>(points_.size()));
    }
    if (!(cell_size > 0.f)) cell_size = 1.f;  // degenerate cloud: everything lands in one cell
    cell_ = cell_size;
    cells_.reserve(points_.size());
    for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
        int ix, iy, iz;
        cell_coords(points_[i], ix, iy, iz);
        lo_[0] = std::min(lo_[0], ix); hi_[0] = std::max(hi_[0], ix);
        lo_[1] = std::min(lo_[1], iy); hi_[1] = std::max(hi_[1], iy);
        lo_[2] = std::min(lo_[2], iz); hi_[2] = std::max(hi_[2], iz);
        cells_[cell_key(ix, iy, iz)].push_back(i);
    }
}

int64_t KnnIndex::cell_key(int ix, int iy, int iz) const {
    // pack 21-bit signed coordinates
    auto enc = [](int v) { return static_cast<int64_t>(v & 0x1fffff); };
    return enc(ix) | (enc(iy) << 21) | (enc(iz) << 42);
}

void KnnIndex::cell_coords(const Vec3& p, int& ix, int& iy, int& iz) const {
    ix = static_cast<int>(std::floor(p.x / cell_));
    iy = static_cast<int>(std::floor(p.y / cell_));
    iz = static_cast<int>(std::floor(p.z / cell_));
}

void KnnIndex::query_one(const Vec3& q, int k, int* idx_out, float* dist_out) const {
    if (k > size()) throw data_error("knn query: k exceeds point count");
    int cx, cy, cz;
    cell_coords(q, cx, cy, cz);

    // beyond this shell every occupied cell has been visited
    int max_reach = 0;
    int qc[3] = {cx, cy, cz};
    for (int a = 0; a < 3; ++a)
        max_reach = std::max({max_reach, std::abs(qc[a] - lo_[a]), std::abs(qc[a] - hi_[a])});

    std::vector<Cand> best;  // kept sorted, at most k entries
    best.reserve(k + 1);
    auto consider = [&](int i) {
        Cand c{dist2(q, points_[i]), i};
        if (static_cast<int>(best.size()) == k && !(c < best.back())) return;
        auto pos = std::lower_bound(best.begin(), best.end(), c);
        best.insert(pos, c);
        if (static_cast<int>(best.size()) > k) best.pop_back();
    };

    // expanding Chebyshev shells; shell r cannot hold anything closer than
    // (r-1) * cell, so once k candidates exist and that bound exceeds the kth
    // distance no further shell can improve or re-break a tie
    for (int r = 0; r <= max_reach; ++r) {
        if (static_cast<int>(best.size()) == k) {
            double lower = static_cast<double>(r - 1) * cell_;
            if (lower > 0 && lower * lower > best.back().d2) break;
        }
        for (int dz = -r; dz <= r; ++dz)
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r) continue;
                    auto it = cells_.find(cell_key(cx + dx, cy + dy, cz + dz));
                    if (it == cells_.end()) continue;
                    for (int i : it->second) consider(i);
                }
    }

    for (int j = 0; j < k; ++j) {
        idx_out[j] = best[j].idx;
        dist_out[j] = static_cast<float>(std::sqrt(best[j].d2));
    }
}

KnnResult KnnIndex::query(const std::vector<Vec3>& queries, int k) const {
    KnnResult res;
    res.k = k;
    res.indices.resize(queries.size() * k);
    res.distances.resize(queries.size() * k);
    for (size_t m = 0; m < queries.size(); ++m)
        query_one(queries[m], k, res.indices.data() + m * k, res.distances.data() + m * k);
    return res;
}

KnnResult knn_brute_force(const std::vector<Vec3>& points, const std::vector<Vec3>& queries, int k) {
    if (k > static_cast<int>(points.size())) throw data_error("knn query: k exceeds point count");
    KnnResult res;
    res.k = k;
    res.indices.resize(queries.size() * k);
    res.distances.resize(queries.size() * k);
    std::vector<Cand> all(points.size());
    for (size_t m = 0; m < queries.size(); ++m) {
        for (size_t i = 0; i < points.size(); ++i) all[i] = {dist2(queries[m], points[i]), static_cast<int>(i)};
        std::partial_sort(all.begin(), all.begin() + k, all.end());
        for (int j = 0; j < k; ++j) {
            res.indices[m * k + j] = all[j].idx;
            res.distances[m * k + j] = static_cast<float>(std::sqrt(all[j].d2));
        }
    }
    return res;
}

}  // namespace pf::geo
