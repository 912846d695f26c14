#pragma once

#include <unordered_map>
#include <vector>

#include "pointforge/geo/point_cloud.hpp"

namespace pf::geo {

struct KnnResult {
    std::vector<int> indices;     // M x k, row-major, ascending distance, ties by lower index
    std::vector<float> distances; // same layout, Euclidean
    int k = 0;
};

// Uniform spatial hash grid. Cell size defaults to bounding radius / cbrt(N).
// Queries return exactly what exhaustive search would (verified in tests).
class KnnIndex {
  public:
    explicit KnnIndex(const std::vector<Vec3>& points, float cell_size = 0.f);

    int size() const { return static_cast<int>(points_.size()); }
    float cell_size() const { return cell_; }

    // k nearest points to each query, ascending (d, index)
    KnnResult query(const std::vector<Vec3>& queries, int k) const;
    void query_one(const Vec3& q, int k, int* idx_out, float* dist_out) const;

  private:
    std::vector<Vec3> points_;
    float cell_ = 0.f;
    std::unordered_map<int64_t, std::vector<int>> cells_;
    int lo_[3] = {1 << 20, 1 << 20, 1 << 20};
    int hi_[3] = {-(1 << 20), -(1 << 20), -(1 << 20)};

    int64_t cell_key(int ix, int iy, int iz) const;
    void cell_coords(const Vec3& p, int& ix, int& iy, int& iz) const;
};

// reference implementation used by oracles and small-N callers
KnnResult knn_brute_force(const std::vector<Vec3>& points, const std::vector<Vec3>& queries, int k);

}  // namespace pf::geo
