#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pointforge/common.hpp"

namespace pf::geo {

struct Vec3 {
    float x = 0, y = 0, z = 0;

    Vec3() = default;
    Vec3(float x_, float y_, float z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(float s) const { return {x * s, y * s, z * s}; }
    float operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    float& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    float dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    float norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec3 normalized() const {
        float n = norm();
        return n > 0 ? Vec3{x / n, y / n, z / n} : Vec3{0, 0, 0};
    }
};

// squared distance in double; the one definition every spatial query and its
// oracle share, so exact-match comparisons are meaningful
inline double dist2(const Vec3& a, const Vec3& b) {
    double dx = static_cast<double>(a.x) - b.x;
    double dy = static_cast<double>(a.y) - b.y;
    double dz = static_cast<double>(a.z) - b.z;
    return dx * dx + dy * dy + dz * dz;
}

// N points with optional per-point channels (colors in [0,1] when channels==3,
// or learned features), row-major N x channels
struct PointCloud {
    std::vector<Vec3> positions;
    std::vector<float> features;
    int channels = 0;

    int size() const { return static_cast<int>(positions.size()); }
    bool has_features() const { return channels > 0; }

    const float* feature_row(int i) const { return features.data() + static_cast<long>(i) * channels; }
    float* feature_row(int i) { return features.data() + static_cast<long>(i) * channels; }

    void validate() const {
        if (positions.empty()) throw data_error("point cloud: empty");
        for (const auto& p : positions)
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                throw data_error("point cloud: non-finite position");
        if (channels > 0 && features.size() != positions.size() * static_cast<size_t>(channels))
            throw data_error("point cloud: feature rows do not match point count");
    }

    // subset preserving row order of `idx`
    PointCloud select(const std::vector<int>& idx) const {
        PointCloud out;
        out.positions.reserve(idx.size());
        out.channels = channels;
        out.features.reserve(idx.size() * channels);
        for (int i : idx) {
            out.positions.push_back(positions[i]);
            if (channels > 0)
                out.features.insert(out.features.end(), feature_row(i), feature_row(i) + channels);
        }
        return out;
    }
};

Vec3 centroid(const PointCloud& cloud);

// max distance from the centroid to any point (centroid-anchored sphere,
// not the minimal enclosing one)
float bounding_sphere_radius(const PointCloud& cloud);

// FNV-1a over positions+features; used for scene/dataset fingerprints
uint64_t cloud_hash(const PointCloud& cloud);

}  // namespace pf::geo
