#include "pointforge/geo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pf::geo {

Vec3 centroid(const PointCloud& cloud) {
    if (cloud.positions.empty()) throw data_error("centroid: empty cloud");
    double sx = 0, sy = 0, sz = 0;
    for (const auto& p : cloud.positions) {
        sx += p.x;
        sy += p.y;
        sz += p.z;
    }
    double n = static_cast<double>(cloud.size());
    return {static_cast<float>(sx / n), static_cast<float>(sy / n), static_cast<float>(sz / n)};
}

float bounding_sphere_radius(const PointCloud& cloud) {
    Vec3 c = centroid(cloud);
    double worst = 0;
    for (const auto& p : cloud.positions) worst = std::max(worst, dist2(p, c));
    return static_cast<float>(std::sqrt(worst));
}

uint64_t cloud_hash(const PointCloud& cloud) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const void* bytes, size_t n) {
        const auto* b = static_cast<const unsigned char*>(bytes);
        for (size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& p : cloud.positions) {
        feed(&p.x, 4);
        feed(&p.y, 4);
        feed(&p.z, 4);
    }
    if (!cloud.features.empty()) feed(cloud.features.data(), cloud.features.size() * 4);
    return h;
}

namespace {

std::vector<int> fps_from(const PointCloud& cloud, int m, int start) {
    int n = cloud.size();
    std::vector<int> picked;
    picked.reserve(m);
    std::vector<double> best_d2(n, std::numeric_limits<double>::infinity());
    int cur = start;
    for (int round = 0; round < m; ++round) {
        picked.push_back(cur);
        const Vec3& c = cloud.positions[cur];
        int next = -1;
        double far_d2 = -1;
        for (int i = 0; i < n; ++i) {
            double d = dist2(cloud.positions[i], c);
            if (d < best_d2[i]) best_d2[i] = d;
            if (best_d2[i] > far_d2) {
                far_d2 = best_d2[i];
                next = i;
            }
        }
        cur = next;
    }
    return picked;
}

}  // namespace

std::vector<int> fps_sample(const PointCloud& cloud, int m, num::RngStream& rng) {
    int n = cloud.size();
    if (m < 1 || m > n) throw data_error("fps_sample: m out of range");
    return fps_from(cloud, m, static_cast<int>(rng.below(n)));
}

std::vector<int> fps_sample_canonical(const PointCloud& cloud, int m) {
    int n = cloud.size();
    if (m < 1 || m > n) throw data_error("fps_sample: m out of range");
    Vec3 c = centroid(cloud);
    int start = 0;
    double far_d2 = -1;
    for (int i = 0; i < n; ++i) {
        double d = dist2(cloud.positions[i], c);
        if (d > far_d2) {
            far_d2 = d;
            start = i;
        }
    }
    return fps_from(cloud, m, start);
}

InterpWeights inverse_distance_weights(const std::vector<Vec3>& sources,
                                       const std::vector<Vec3>& targets, int k,
                                       double singular_eps) {
    if (sources.empty()) throw data_error("interpolate: empty source cloud");
    k = std::min(k, static_cast<int>(sources.size()));
    KnnIndex index(sources);
    InterpWeights out;
    out.k = k;
    out.indices.resize(targets.size() * k);
    out.weights.assign(targets.size() * k, 0.f);
    std::vector<float> dist(k);
    for (size_t t = 0; t < targets.size(); ++t) {
        int* idx = out.indices.data() + t * k;
        index.query_one(targets[t], k, idx, dist.data());
        float* w = out.weights.data() + t * k;
        if (dist[0] < singular_eps) {
            // coincident with a source point: take its features verbatim
            w[0] = 1.f;
            continue;
        }
        double sum = 0;
        for (int j = 0; j < k; ++j) sum += 1.0 / (static_cast<double>(dist[j]) * dist[j]);
        for (int j = 0; j < k; ++j)
            w[j] = static_cast<float>(1.0 / (static_cast<double>(dist[j]) * dist[j]) / sum);
    }
    return out;
}

std::vector<float> apply_interpolation(const InterpWeights& w, const std::vector<float>& feats,
                                       int channels) {
    size_t m = w.indices.size() / w.k;
    std::vector<float> out(m * channels, 0.f);
    for (size_t i = 0; i < m; ++i)
        for (int j = 0; j < w.k; ++j) {
            float wj = w.weights[i * w.k + j];
            if (wj == 0.f) continue;
            const float* src = feats.data() + static_cast<long>(w.indices[i * w.k + j]) * channels;
            for (int c = 0; c < channels; ++c) out[i * channels + c] += wj * src[c];
        }
    return out;
}

std::vector<float> inverse_distance_interpolate(const PointCloud& source,
                                                const std::vector<Vec3>& targets, int k) {
    if (!source.has_features()) throw data_error("interpolate: source cloud has no features");
    auto w = inverse_distance_weights(source.positions, targets, k);
    return apply_interpolation(w, source.features, source.channels);
}

}  // namespace pf::geo
