#pragma once

#include <string>

#include "pointforge/geo/camera.hpp"
#include "pointforge/geo/image.hpp"
#include "pointforge/geo/point_cloud.hpp"

namespace pf::degrade {

enum class SceneKind { cube, sphere_shell, two_room, checker_terrain };

SceneKind scene_kind_from_string(const std::string& name);
std::string to_string(SceneKind kind);

struct Scene {
    geo::PointCloud cloud;  // colored ground truth, exactly n_gt points
    geo::Camera camera;
    geo::Image image;       // splat render of the cloud
};

// Procedural colored scene + camera + self-consistent render.
Scene synth_scene(SceneKind kind, int n_gt, uint64_t seed, int image_size);

// per-pixel nearest-point color over a z-buffer splat
geo::Image render_cloud(const geo::Camera& cam, const geo::PointCloud& cloud, float radius_px,
                        const float bg[3]);

}  // namespace pf::degrade
