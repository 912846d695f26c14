#include "pointforge/degrade/synth.hpp"

#include <cmath>

#include "pointforge/num/rng.hpp"

namespace pf::degrade {

SceneKind scene_kind_from_string(const std::string& name) {
    if (name == "cube") return SceneKind::cube;
    if (name == "sphere-shell") return SceneKind::sphere_shell;
    if (name == "two-room") return SceneKind::two_room;
    if (name == "checker-terrain") return SceneKind::checker_terrain;
    throw data_error("unknown scene kind '" + name + "'");
}

std::string to_string(SceneKind kind) {
    switch (kind) {
        case SceneKind::cube: return "cube";
        case SceneKind::sphere_shell: return "sphere-shell";
        case SceneKind::two_room: return "two-room";
        case SceneKind::checker_terrain: return "checker-terrain";
    }
    return "?";
}

namespace {

using geo::Vec3;

struct Rect {
    Vec3 origin, edge_u, edge_v;  // points: origin + a*edge_u + b*edge_v, a,b in [0,1]
    Vec3 color;
    double area() const { return static_cast<double>(edge_u.cross(edge_v).norm()); }
};

void push_point(geo::PointCloud& cloud, const Vec3& p, const Vec3& c) {
    cloud.positions.push_back(p);
    cloud.features.push_back(c.x);
    cloud.features.push_back(c.y);
    cloud.features.push_back(c.z);
}

geo::PointCloud sample_rects(const std::vector<Rect>& rects, int n, num::RngStream& rng) {
    geo::PointCloud cloud;
    cloud.channels = 3;
    double total = 0;
    for (const auto& r : rects) total += r.area();
    for (int i = 0; i < n; ++i) {
        double pick = rng.uniform() * total;
        size_t j = 0;
        for (; j + 1 < rects.size(); ++j) {
            pick -= rects[j].area();
            if (pick <= 0) break;
        }
        const Rect& r = rects[j];
        float a = static_cast<float>(rng.uniform());
        float b = static_cast<float>(rng.uniform());
        push_point(cloud, r.origin + r.edge_u * a + r.edge_v * b, r.color);
    }
    return cloud;
}

geo::PointCloud make_cube(int n, num::RngStream& rng) {
    const Vec3 face_colors[6] = {
        {0.85f, 0.25f, 0.20f}, {0.20f, 0.70f, 0.30f}, {0.20f, 0.35f, 0.85f},
        {0.90f, 0.80f, 0.25f}, {0.75f, 0.30f, 0.80f}, {0.25f, 0.80f, 0.80f},
    };
    geo::PointCloud cloud;
    cloud.channels = 3;
    for (int i = 0; i < n; ++i) {
        int face = static_cast<int>(rng.below(6));
        float u = static_cast<float>(rng.uniform(-0.5, 0.5));
        float v = static_cast<float>(rng.uniform(-0.5, 0.5));
        int axis = face / 2;
        float side = face % 2 ? 0.5f : -0.5f;
        Vec3 p;
        p[axis] = side;
        p[(axis + 1) % 3] = u;
        p[(axis + 2) % 3] = v;
        push_point(cloud, p, face_colors[face]);
    }
    return cloud;
}

geo::PointCloud make_sphere_shell(int n, num::RngStream& rng) {
    geo::PointCloud cloud;
    cloud.channels = 3;
    for (int i = 0; i < n; ++i) {
        Vec3 d{static_cast<float>(rng.normal()), static_cast<float>(rng.normal()),
               static_cast<float>(rng.normal())};
        d = d.normalized();
        if (d.norm() == 0) d = {1, 0, 0};
        // color keyed to the surface normal, saturated bands per octant
        Vec3 c{d.x > 0 ? 0.85f : 0.25f, d.y > 0 ? 0.80f : 0.30f, d.z > 0 ? 0.75f : 0.35f};
        push_point(cloud, d * 0.5f, c);
    }
    return cloud;
}

std::vector<Rect> two_room_rects() {
    // Two adjacent rooms sharing a doorway wall, open toward the camera and
    // open-topped so the interior stays visible.
    const Vec3 floor_c{0.55f, 0.40f, 0.25f};
    const Vec3 room_a{0.35f, 0.55f, 0.85f};
    const Vec3 room_b{0.40f, 0.80f, 0.40f};
    const Vec3 divider{0.70f, 0.70f, 0.72f};
    float y0 = -0.3f, y1 = 0.2f;       // wall height span
    float z0 = -0.3f, z1 = 0.3f;       // depth span
    std::vector<Rect> rects;
    // floor spanning both rooms
    rects.push_back({{-0.6f, y0, z0}, {1.2f, 0, 0}, {0, 0, z1 - z0}, floor_c});
    // far wall
    rects.push_back({{-0.6f, y0, z1}, {1.2f, 0, 0}, {0, y1 - y0, 0}, divider});
    // left and right outer walls
    rects.push_back({{-0.6f, y0, z0}, {0, 0, z1 - z0}, {0, y1 - y0, 0}, room_a});
    rects.push_back({{0.6f, y0, z0}, {0, 0, z1 - z0}, {0, y1 - y0, 0}, room_b});
    // separating wall at x=0 with a doorway gap z in [-0.05, 0.15]
    rects.push_back({{0, y0, z0}, {0, 0, -0.05f - z0}, {0, y1 - y0, 0}, divider});
    rects.push_back({{0, y0, 0.15f}, {0, 0, z1 - 0.15f}, {0, y1 - y0, 0}, divider});
    // lintel above the doorway
    rects.push_back({{0, 0.05f, -0.05f}, {0, 0, 0.2f}, {0, y1 - 0.05f, 0}, divider});
    return rects;
}

geo::PointCloud make_terrain(int n, num::RngStream& rng) {
    geo::PointCloud cloud;
    cloud.channels = 3;
    const Vec3 dark{0.20f, 0.45f, 0.20f};
    const Vec3 light{0.85f, 0.75f, 0.55f};
    for (int i = 0; i < n; ++i) {
        float x = static_cast<float>(rng.uniform(-0.5, 0.5));
        float z = static_cast<float>(rng.uniform(-0.5, 0.5));
        float y = 0.12f * std::sin(4.4f * x) * std::cos(3.6f * z) - 0.1f;
        int cx = static_cast<int>(std::floor((x + 0.5f) * 8));
        int cz = static_cast<int>(std::floor((z + 0.5f) * 8));
        push_point(cloud, {x, y, z}, (cx + cz) % 2 ? light : dark);
    }
    return cloud;
}

}  // namespace

geo::Image render_cloud(const geo::Camera& cam, const geo::PointCloud& cloud, float radius_px,
                        const float bg[3]) {
    geo::Image img(cam.width, cam.height);
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            float* px = img.pixel(x, y);
            px[0] = bg[0];
            px[1] = bg[1];
            px[2] = bg[2];
        }
    auto proj = geo::project_points(cam, cloud);
    auto buf = geo::splat_depth(cam, cloud, proj, radius_px);
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            int owner = buf.owner[static_cast<size_t>(y) * cam.width + x];
            if (owner < 0) continue;
            float* px = img.pixel(x, y);
            if (cloud.channels == 3) {
                const float* c = cloud.feature_row(owner);
                px[0] = c[0];
                px[1] = c[1];
                px[2] = c[2];
            } else {
                px[0] = px[1] = px[2] = 0.8f;
            }
        }
    return img;
}

Scene synth_scene(SceneKind kind, int n_gt, uint64_t seed, int image_size) {
    if (n_gt < 64) throw data_error("synth_scene: n_gt must be >= 64");
    num::Rng root(seed);
    auto rng = root.stream("synth/" + to_string(kind));

    Scene scene;
    Vec3 eye, target{0, 0, 0};
    switch (kind) {
        case SceneKind::cube:
            scene.cloud = make_cube(n_gt, rng);
            eye = {1.1f, 0.9f, 1.4f};
            break;
        case SceneKind::sphere_shell:
            scene.cloud = make_sphere_shell(n_gt, rng);
            eye = {1.0f, 0.8f, 1.3f};
            break;
        case SceneKind::two_room:
            scene.cloud = sample_rects(two_room_rects(), n_gt, rng);
            eye = {0.25f, 0.55f, -1.5f};
            target = {0, -0.05f, 0};
            break;
        case SceneKind::checker_terrain:
            scene.cloud = make_terrain(n_gt, rng);
            eye = {0.9f, 0.85f, 1.2f};
            break;
    }
    float f = 0.95f * image_size;
    scene.camera = geo::make_look_at(eye, target, {0, 1, 0}, f, f, image_size, image_size);
    const float bg[3] = {0.10f, 0.10f, 0.13f};
    scene.image = render_cloud(scene.camera, scene.cloud, 2.0f, bg);
    return scene;
}

}  // namespace pf::degrade
