#include "pointforge/geo/camera.hpp"

#include <cmath>
#include <limits>

namespace pf::geo {

void Camera::validate() const {
    if (!(fx > 0) || !(fy > 0)) throw data_error("camera: focal lengths must be positive");
    if (cx < 0 || cx >= width || cy < 0 || cy >= height)
        throw data_error("camera: principal point outside image");
    // orthonormality within 1e-5
    const auto& r = rotation;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot = 0;
            for (int k = 0; k < 3; ++k) dot += static_cast<double>(r[i * 3 + k]) * r[j * 3 + k];
            double want = i == j ? 1.0 : 0.0;
            if (std::abs(dot - want) > 1e-5) throw data_error("camera: rotation not orthonormal");
        }
}

Camera make_look_at(const Vec3& eye, const Vec3& target, const Vec3& up, float fx, float fy,
                    int width, int height) {
    Vec3 fwd = (target - eye).normalized();          // camera +z
    Vec3 right = fwd.cross(up).normalized();         // camera +x
    Vec3 down = fwd.cross(right).normalized();       // camera +y (image v grows downward)
    Camera cam;
    cam.fx = fx;
    cam.fy = fy;
    cam.cx = width / 2.0f;
    cam.cy = height / 2.0f;
    cam.width = width;
    cam.height = height;
    cam.rotation = {right.x, right.y, right.z, down.x, down.y, down.z, fwd.x, fwd.y, fwd.z};
    // t = -R * eye
    Vec3 re{cam.rotation[0] * eye.x + cam.rotation[1] * eye.y + cam.rotation[2] * eye.z,
            cam.rotation[3] * eye.x + cam.rotation[4] * eye.y + cam.rotation[5] * eye.z,
            cam.rotation[6] * eye.x + cam.rotation[7] * eye.y + cam.rotation[8] * eye.z};
    cam.translation = re * -1.0f;
    return cam;
}

std::vector<Projection> project_points(const Camera& cam, const PointCloud& cloud) {
    std::vector<Projection> out(cloud.size());
    for (int i = 0; i < cloud.size(); ++i) {
        Vec3 c = cam.to_camera(cloud.positions[i]);
        Projection& p = out[i];
        p.depth = c.z;
        if (c.z <= 0) continue;  // behind the camera
        p.u = cam.fx * c.x / c.z + cam.cx;
        p.v = cam.fy * c.y / c.z + cam.cy;
        p.in_frustum = p.u >= 0 && p.u < cam.width && p.v >= 0 && p.v < cam.height;
    }
    return out;
}

DepthBuffer splat_depth(const Camera& cam, const PointCloud& cloud,
                        const std::vector<Projection>& proj, float radius_px) {
    DepthBuffer buf;
    buf.width = cam.width;
    buf.height = cam.height;
    buf.depth.assign(static_cast<size_t>(cam.width) * cam.height,
                     std::numeric_limits<float>::infinity());
    buf.owner.assign(buf.depth.size(), -1);
    for (int i = 0; i < cloud.size(); ++i) {
        const Projection& p = proj[i];
        if (!p.in_frustum) continue;
        int x0 = std::max(0, static_cast<int>(std::floor(p.u - radius_px)));
        int x1 = std::min(cam.width - 1, static_cast<int>(std::floor(p.u + radius_px)));
        int y0 = std::max(0, static_cast<int>(std::floor(p.v - radius_px)));
        int y1 = std::min(cam.height - 1, static_cast<int>(std::floor(p.v + radius_px)));
        for (int py = y0; py <= y1; ++py)
            for (int px = x0; px <= x1; ++px) {
                float du = px + 0.5f - p.u;
                float dv = py + 0.5f - p.v;
                if (du * du + dv * dv > radius_px * radius_px) continue;
                size_t at = static_cast<size_t>(py) * cam.width + px;
                if (p.depth < buf.depth[at]) {
                    buf.depth[at] = p.depth;
                    buf.owner[at] = i;
                }
            }
    }
    return buf;
}

std::vector<bool> visibility_mask(const Camera& cam, const PointCloud& cloud, float radius_px,
                                  float depth_tol) {
    if (!(radius_px > 0)) throw data_error("visibility_mask: radius_px must be positive");
    auto proj = project_points(cam, cloud);
    auto buf = splat_depth(cam, cloud, proj, radius_px);

    // nearest occupant per pixel, where occupant = the pixel a point lands in
    std::vector<float> occupant_min(buf.depth.size(), std::numeric_limits<float>::infinity());
    std::vector<size_t> own_pixel(cloud.size(), SIZE_MAX);
    for (int i = 0; i < cloud.size(); ++i) {
        if (!proj[i].in_frustum) continue;
        size_t at = static_cast<size_t>(static_cast<int>(std::floor(proj[i].v))) * cam.width +
                    static_cast<int>(std::floor(proj[i].u));
        own_pixel[i] = at;
        occupant_min[at] = std::min(occupant_min[at], proj[i].depth);
    }

    std::vector<bool> visible(cloud.size(), false);
    for (int i = 0; i < cloud.size(); ++i) {
        if (own_pixel[i] == SIZE_MAX) continue;
        size_t at = own_pixel[i];
        // pass if within tolerance of the splat buffer, or if this is the
        // nearest point actually occupying the pixel (a neighbor's disc must
        // not shadow the front point of its own pixel)
        visible[i] = proj[i].depth <= buf.depth[at] + depth_tol ||
                     proj[i].depth == occupant_min[at];
    }
    return visible;
}

}  // namespace pf::geo
