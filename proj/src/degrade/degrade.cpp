#include "pointforge/degrade/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pointforge/geo/knn.hpp"
#include "pointforge/geo/sampling.hpp"

namespace pf::degrade {

void DegradationSpec::validate() const {
    if (remove_fraction < 0 || remove_fraction >= 1)
        throw data_error("degradation: remove_fraction must be in [0,1)");
    if (patch_count < 1) throw data_error("degradation: patch_count must be >= 1");
    if (!(keep_ratio > 0) || keep_ratio > 1)
        throw data_error("degradation: keep_ratio must be in (0,1]");
    if (noise_level < 0 || noise_level > 0.05)
        throw data_error("degradation: noise_level must be in [0, 0.05]");
}

geo::PointCloud rgbd_to_cloud(const geo::Image& rgb, const std::vector<float>& depth,
                              const geo::Camera& cam, float depth_max) {
    if (static_cast<int>(depth.size()) != cam.width * cam.height)
        throw data_error("rgbd_to_cloud: depth size does not match camera");
    geo::PointCloud cloud;
    cloud.channels = 3;
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            float z = depth[static_cast<size_t>(y) * cam.width + x];
            if (z < 0) throw data_error("rgbd_to_cloud: negative depth");
            if (z == 0 || z > depth_max) continue;
            // pixel center back-projection
            float xc = (x + 0.5f - cam.cx) * z / cam.fx;
            float yc = (y + 0.5f - cam.cy) * z / cam.fy;
            cloud.positions.push_back(cam.to_world({xc, yc, z}));
            const float* c = rgb.pixel(x, y);
            cloud.features.insert(cloud.features.end(), c, c + 3);
        }
    if (cloud.positions.empty()) throw data_error("rgbd_to_cloud: no pixels within depth limit");
    return cloud;
}

geo::PointCloud remove_patches(const geo::PointCloud& cloud, double fraction, int patch_count,
                               num::RngStream rng) {
    if (fraction < 0 || fraction >= 1) throw data_error("remove_patches: fraction must be in [0,1)");
    if (fraction == 0) return cloud;
    int n = cloud.size();
    int per_patch = static_cast<int>(std::ceil(fraction * n / patch_count));
    std::vector<int> alive(n);
    std::iota(alive.begin(), alive.end(), 0);
    for (int patch = 0; patch < patch_count && !alive.empty(); ++patch) {
        int seed_pos = static_cast<int>(rng.below(alive.size()));
        geo::Vec3 seed_pt = cloud.positions[alive[seed_pos]];
        int kill = std::min<int>(per_patch, static_cast<int>(alive.size()));
        // nearest surviving neighbors of the seed point, seed included
        std::vector<geo::Vec3> alive_pos(alive.size());
        for (size_t i = 0; i < alive.size(); ++i) alive_pos[i] = cloud.positions[alive[i]];
        geo::KnnIndex index(alive_pos);
        std::vector<int> hit(kill);
        std::vector<float> dist(kill);
        index.query_one(seed_pt, kill, hit.data(), dist.data());
        std::sort(hit.begin(), hit.end(), std::greater<int>());
        for (int h : hit) alive.erase(alive.begin() + h);
    }
    if (alive.empty()) throw data_error("remove_patches: nothing survived");
    return cloud.select(alive);
}

geo::PointCloud subsample(const geo::PointCloud& cloud, double keep_ratio, num::RngStream rng) {
    if (!(keep_ratio > 0) || keep_ratio > 1) throw data_error("subsample: keep_ratio must be in (0,1]");
    int n = cloud.size();
    int keep = static_cast<int>(std::lround(keep_ratio * n));
    if (keep < 1) throw data_error("subsample: empty result");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < keep; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
    idx.resize(keep);
    std::sort(idx.begin(), idx.end());
    return cloud.select(idx);
}

geo::PointCloud add_noise(const geo::PointCloud& cloud, double noise_level, num::RngStream rng) {
    if (noise_level < 0) throw data_error("add_noise: noise_level must be >= 0");
    if (noise_level == 0) return cloud;
    double sigma = noise_level * geo::bounding_sphere_radius(cloud);
    geo::PointCloud out = cloud;
    for (auto& p : out.positions) {
        p.x += static_cast<float>(sigma * rng.normal());
        p.y += static_cast<float>(sigma * rng.normal());
        p.z += static_cast<float>(sigma * rng.normal());
    }
    return out;
}

geo::PointCloud strip_color(const geo::PointCloud& cloud) {
    geo::PointCloud out = cloud;
    out.features.clear();
    out.channels = 0;
    return out;
}

SamplePair make_pair(const geo::PointCloud& gt, const geo::Image& image, const geo::Camera& cam,
                     const DegradationSpec& spec) {
    spec.validate();
    num::Rng root(spec.seed);
    SamplePair pair;
    pair.target_cloud = gt;
    pair.input_image = image;
    pair.camera = cam;
    pair.spec = spec;

    geo::PointCloud work = gt;
    if (spec.remove_fraction > 0)
        work = remove_patches(work, spec.remove_fraction, spec.patch_count, root.stream("degrade/patch"));
    if (spec.keep_ratio < 1.0) work = subsample(work, spec.keep_ratio, root.stream("degrade/subsample"));
    if (spec.noise_level > 0) work = add_noise(work, spec.noise_level, root.stream("degrade/noise"));
    if (spec.strip_color) work = strip_color(work);
    pair.input_cloud = std::move(work);
    return pair;
}

}  // namespace pf::degrade
