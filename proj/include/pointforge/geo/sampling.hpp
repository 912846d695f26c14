#pragma once

#include <vector>

#include "pointforge/geo/knn.hpp"
#include "pointforge/geo/point_cloud.hpp"
#include "pointforge/num/rng.hpp"

namespace pf::geo {

// Greedy farthest-point sampling, first pick drawn from the stream.
std::vector<int> fps_sample(const PointCloud& cloud, int m, num::RngStream& rng);

// Deterministic variant anchored on geometry alone: starts from the point
// farthest from the centroid, so the selected set is stable under row
// permutation of the input (up to index relabeling).
std::vector<int> fps_sample_canonical(const PointCloud& cloud, int m);

struct InterpWeights {
    std::vector<int> indices;   // M x k flattened
    std::vector<float> weights; // normalized, rows sum to 1
    int k = 0;
};

// Inverse-distance-squared weights of the k nearest source points per target.
// A target within `singular_eps` of a source collapses to that source alone.
InterpWeights inverse_distance_weights(const std::vector<Vec3>& sources,
                                       const std::vector<Vec3>& targets, int k,
                                       double singular_eps = 1e-8);

// Dense (non-taped) application: out = weights * source features.
std::vector<float> apply_interpolation(const InterpWeights& w, const std::vector<float>& feats,
                                       int channels);

// Convenience wrapper implementing the feature transfer end to end.
std::vector<float> inverse_distance_interpolate(const PointCloud& source,
                                                const std::vector<Vec3>& targets, int k);

}  // namespace pf::geo
