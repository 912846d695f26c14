#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointforge/geo/point_cloud.hpp"
#include "pointforge/num/rng.hpp"

namespace pf::metrics {

struct MetricParams {
    double dcd_alpha = 40.0;
    double f1_tau_frac = 0.01;  // fraction of gt bounding-sphere radius
    int emd_resample = 2048;
    uint64_t seed = 0;
};

struct PairMetrics {
    std::string name;
    double cd = 0, dcd = 0, emd = 0, f1 = 0, precision = 0, recall = 0;
    double tau = 0;
    std::optional<double> color_mse;
};

struct MetricReport {
    MetricParams params;
    std::vector<PairMetrics> pairs;
    PairMetrics mean, stddev;
};

// symmetric squared-nearest-distance average, halved
double chamfer(const geo::PointCloud& s1, const geo::PointCloud& s2);

// density-aware variant: 0.5 * [ mean_x min_y (1 - exp(-alpha d^2)) + sym ]
double dcd(const geo::PointCloud& s1, const geo::PointCloud& s2, double alpha);

// exact assignment EMD (mean matched Euclidean distance); requires equal
// cardinality and n <= 4096
double emd_exact(const geo::PointCloud& s1, const geo::PointCloud& s2);

// uniform resample to exactly n points (subset without replacement when
// shrinking, extra draws with replacement when growing)
geo::PointCloud resample_to(const geo::PointCloud& cloud, int n, num::RngStream rng);

struct F1Result {
    double f1 = 0, precision = 0, recall = 0;
};
F1Result f1_score(const geo::PointCloud& pred, const geo::PointCloud& gt, double tau);

// per gt point, squared color difference to the nearest predicted point,
// averaged over points and channels
double color_mse(const geo::PointCloud& pred, const geo::PointCloud& gt);

// full per-pair evaluation; EMD resamples both sides to
// min(|s1|, |s2|, emd_resample) with the seeded stream
PairMetrics evaluate_pair(const std::string& name, const geo::PointCloud& pred,
                          const geo::PointCloud& gt, const MetricParams& params);

MetricReport aggregate(std::vector<PairMetrics> pairs, const MetricParams& params);

// reference for the oracle suite: minimum over all permutations, n <= 8
double emd_brute_force(const geo::PointCloud& s1, const geo::PointCloud& s2);

}  // namespace pf::metrics
