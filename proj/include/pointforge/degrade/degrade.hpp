#pragma once

#include <string>

#include "pointforge/geo/camera.hpp"
#include "pointforge/geo/image.hpp"
#include "pointforge/geo/point_cloud.hpp"
#include "pointforge/num/rng.hpp"

namespace pf::degrade {

// Declarative description of which defects to synthesize and how hard.
// Applying the same spec with the same seed is bit-reproducible.
struct DegradationSpec {
    double remove_fraction = 0.0;  // [0,1) removed via patches
    int patch_count = 3;
    double keep_ratio = 1.0;       // (0,1] survival ratio = 1/upsampling rate
    double noise_level = 0.0;      // std as fraction of bounding-sphere radius, [0, 0.05]
    bool strip_color = false;
    uint64_t seed = 0;

    void validate() const;
};

struct SamplePair {
    geo::PointCloud input_cloud;
    geo::Image input_image;
    geo::Camera camera;
    geo::PointCloud target_cloud;
    DegradationSpec spec;
    std::string name;
};

// Back-project every pixel with 0 < depth <= depth_max through the pinhole
// model; colors ride along.
geo::PointCloud rgbd_to_cloud(const geo::Image& rgb, const std::vector<float>& depth,
                              const geo::Camera& cam, float depth_max);

// patch_count times: pick a random surviving point, drop its
// ceil(fraction*N/patch_count) nearest surviving neighbors (itself included)
geo::PointCloud remove_patches(const geo::PointCloud& cloud, double fraction, int patch_count,
                               num::RngStream rng);

// uniform subset without replacement of round(keep_ratio * N) points
geo::PointCloud subsample(const geo::PointCloud& cloud, double keep_ratio, num::RngStream rng);

// positions += sigma * g with sigma = noise_level * bounding radius of the
// cloud as given; colors untouched
geo::PointCloud add_noise(const geo::PointCloud& cloud, double noise_level, num::RngStream rng);

geo::PointCloud strip_color(const geo::PointCloud& cloud);

// fixed composition order: remove -> subsample -> noise -> strip
SamplePair make_pair(const geo::PointCloud& gt, const geo::Image& image, const geo::Camera& cam,
                     const DegradationSpec& spec);

}  // namespace pf::degrade
