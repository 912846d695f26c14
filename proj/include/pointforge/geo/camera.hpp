#pragma once

#include <array>
#include <vector>

#include "pointforge/geo/point_cloud.hpp"

namespace pf::geo {

// Pinhole camera: world -> camera via x_c = R x + t, then
// u = fx * x_c / z_c + cx, v = fy * y_c / z_c + cy.
struct Camera {
    float fx = 1, fy = 1, cx = 0, cy = 0;
    int width = 0, height = 0;
    std::array<float, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major
    Vec3 translation{0, 0, 0};

    Vec3 to_camera(const Vec3& p) const {
        const auto& r = rotation;
        Vec3 q{r[0] * p.x + r[1] * p.y + r[2] * p.z,
               r[3] * p.x + r[4] * p.y + r[5] * p.z,
               r[6] * p.x + r[7] * p.y + r[8] * p.z};
        return q + translation;
    }

    Vec3 to_world(const Vec3& cam) const {  // inverse rigid transform
        Vec3 q = cam - translation;
        const auto& r = rotation;
        return {r[0] * q.x + r[3] * q.y + r[6] * q.z,
                r[1] * q.x + r[4] * q.y + r[7] * q.z,
                r[2] * q.x + r[5] * q.y + r[8] * q.z};
    }

    void validate() const;
};

// look-at helper used by the synthetic scenes
Camera make_look_at(const Vec3& eye, const Vec3& target, const Vec3& up, float fx, float fy,
                    int width, int height);

struct Projection {
    float u = 0, v = 0, depth = 0;
    bool in_frustum = false;
};

std::vector<Projection> project_points(const Camera& cam, const PointCloud& cloud);

// Z-buffer splatting over a pixel disc of `radius_px`; a point is visible when
// its depth is within depth_tol of the buffer at its own pixel. The nearest
// occupant of a pixel is always visible regardless of neighboring splats.
std::vector<bool> visibility_mask(const Camera& cam, const PointCloud& cloud, float radius_px,
                                  float depth_tol);

// Shared splat pass: per-pixel nearest depth and the point that wrote it.
struct DepthBuffer {
    std::vector<float> depth;   // width*height, +inf where empty
    std::vector<int> owner;     // index of nearest splatting point, -1 where empty
    int width = 0, height = 0;
};

DepthBuffer splat_depth(const Camera& cam, const PointCloud& cloud,
                        const std::vector<Projection>& proj, float radius_px);

}  // namespace pf::geo
