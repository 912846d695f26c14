#pragma once

#include "pointforge/geo/camera.hpp"
#include "pointforge/geo/point_cloud.hpp"
#include "pointforge/geo/sampling.hpp"

namespace pf::diff {

// Diffusion operates on unit-scale data: clouds are centered at the input
// cloud's centroid and scaled so its bounding-sphere radius is 1. The camera
// is re-posed into the same frame (pinhole projection is invariant to uniform
// scaling of camera-frame coordinates, so only the translation needs rescaling).
// Color channels ride along as c -> 2c - 1.
struct UnitTransform {
    geo::Vec3 center{0, 0, 0};
    float scale = 1;  // divide by this to normalize

    static UnitTransform fit(const geo::PointCloud& cloud) {
        UnitTransform t;
        t.center = geo::centroid(cloud);
        t.scale = geo::bounding_sphere_radius(cloud);
        if (!(t.scale > 0)) t.scale = 1;
        return t;
    }

    geo::Vec3 apply(const geo::Vec3& p) const { return (p - center) * (1.0f / scale); }
    geo::Vec3 invert(const geo::Vec3& p) const { return p * scale + center; }

    geo::PointCloud apply_cloud(const geo::PointCloud& in) const {
        geo::PointCloud out = in;
        for (auto& p : out.positions) p = apply(p);
        if (out.channels == 3)
            for (auto& c : out.features) c = 2.0f * c - 1.0f;
        return out;
    }

    geo::PointCloud invert_cloud(const geo::PointCloud& in) const {
        geo::PointCloud out = in;
        for (auto& p : out.positions) p = invert(p);
        if (out.channels == 3)
            for (auto& c : out.features) c = std::min(1.0f, std::max(0.0f, (c + 1.0f) * 0.5f));
        return out;
    }

    // world' = (world - center)/scale  =>  cam = R*(scale*world' + center) + t
    //        = R*world' * scale + (R*center + t); dividing camera coords by
    // scale leaves the projection unchanged, giving R' = R, t' = (R*center+t)/scale.
    geo::Camera apply_camera(const geo::Camera& cam) const {
        geo::Camera out = cam;
        geo::Vec3 rc = cam.to_camera(center);  // R*center + t
        out.translation = rc * (1.0f / scale);
        return out;
    }
};

}  // namespace pf::diff
