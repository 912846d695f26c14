#include "pointforge/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pointforge/geo/knn.hpp"
#include "pointforge/geo/sampling.hpp"

namespace pf::metrics {

namespace {

// nearest squared distance from every point of `from` into `to`
std::vector<double> nearest_sq(const geo::PointCloud& from, const geo::PointCloud& to) {
    if (from.positions.empty() || to.positions.empty())
        throw data_error("metric: empty point cloud");
    geo::KnnIndex index(to.positions);
    std::vector<double> out(from.size());
    int idx;
    float dist;
    for (int i = 0; i < from.size(); ++i) {
        index.query_one(from.positions[i], 1, &idx, &dist);
        out[i] = geo::dist2(from.positions[i], to.positions[idx]);
    }
    return out;
}

std::vector<int> nearest_idx(const geo::PointCloud& from, const geo::PointCloud& to) {
    geo::KnnIndex index(to.positions);
    std::vector<int> out(from.size());
    float dist;
    for (int i = 0; i < from.size(); ++i) index.query_one(from.positions[i], 1, &out[i], &dist);
    return out;
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double chamfer(const geo::PointCloud& s1, const geo::PointCloud& s2) {
    auto a = nearest_sq(s1, s2);
    auto b = nearest_sq(s2, s1);
    return 0.5 * (mean(a) + mean(b));
}

double dcd(const geo::PointCloud& s1, const geo::PointCloud& s2, double alpha) {
    if (!(alpha > 0)) throw data_error("dcd: alpha must be positive");
    auto a = nearest_sq(s1, s2);
    auto b = nearest_sq(s2, s1);
    double lhs = 0, rhs = 0;
    for (double d2 : a) lhs += 1.0 - std::exp(-alpha * d2);
    for (double d2 : b) rhs += 1.0 - std::exp(-alpha * d2);
    return 0.5 * (lhs / a.size() + rhs / b.size());
}

geo::PointCloud resample_to(const geo::PointCloud& cloud, int n, num::RngStream rng) {
    int have = cloud.size();
    std::vector<int> pick;
    pick.reserve(n);
    if (n <= have) {
        // partial Fisher-Yates, then restore original order
        std::vector<int> idx(have);
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < n; ++i)
            std::swap(idx[i], idx[i + rng.below(have - i)]);
        pick.assign(idx.begin(), idx.begin() + n);
        std::sort(pick.begin(), pick.end());
    } else {
        for (int i = 0; i < have; ++i) pick.push_back(i);
        for (int i = have; i < n; ++i) pick.push_back(static_cast<int>(rng.below(have)));
    }
    return cloud.select(pick);
}

double emd_exact(const geo::PointCloud& s1, const geo::PointCloud& s2) {
    int n = s1.size();
    if (n != s2.size())
        throw data_error("emd: cardinality mismatch (" + std::to_string(n) + " vs " +
                         std::to_string(s2.size()) + "); resample first");
    if (n > 4096) throw data_error("emd: n > 4096; resample to a smaller size first");

    // dense cost: Euclidean pair distances
    std::vector<double> cost(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost[static_cast<size_t>(i) * n + j] = std::sqrt(geo::dist2(s1.positions[i], s2.positions[j]));

    // shortest augmenting path with potentials (Jonker-Volgenant style), 1-based
    const double INF = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), INF);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            double delta = INF;
            const double* row = cost.data() + static_cast<size_t>(i0 - 1) * n;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = row[j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    double total = 0;
    for (int j = 1; j <= n; ++j) total += cost[static_cast<size_t>(p[j] - 1) * n + (j - 1)];
    return total / n;
}

double emd_brute_force(const geo::PointCloud& s1, const geo::PointCloud& s2) {
    int n = s1.size();
    if (n != s2.size() || n > 8) throw data_error("emd_brute_force: needs equal clouds with n <= 8");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0;
        for (int i = 0; i < n; ++i)
            total += std::sqrt(geo::dist2(s1.positions[i], s2.positions[perm[i]]));
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / n;
}

F1Result f1_score(const geo::PointCloud& pred, const geo::PointCloud& gt, double tau) {
    if (!(tau > 0)) throw data_error("f1: tau must be positive");
    auto dp = nearest_sq(pred, gt);
    auto dg = nearest_sq(gt, pred);
    double t2 = tau * tau;
    double hit_p = 0, hit_g = 0;
    for (double d : dp)
        if (d <= t2) hit_p += 1;
    for (double d : dg)
        if (d <= t2) hit_g += 1;
    F1Result r;
    r.precision = hit_p / dp.size();
    r.recall = hit_g / dg.size();
    r.f1 = (r.precision + r.recall) > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0;
    return r;
}

double color_mse(const geo::PointCloud& pred, const geo::PointCloud& gt) {
    if (pred.channels != 3 || gt.channels != 3)
        throw data_error("color_mse: both clouds must carry colors");
    auto idx = nearest_idx(gt, pred);
    double acc = 0;
    for (int i = 0; i < gt.size(); ++i) {
        const float* a = gt.feature_row(i);
        const float* b = pred.feature_row(idx[i]);
        for (int c = 0; c < 3; ++c) {
            double d = static_cast<double>(a[c]) - b[c];
            acc += d * d;
        }
    }
    return acc / (3.0 * gt.size());
}

PairMetrics evaluate_pair(const std::string& name, const geo::PointCloud& pred,
                          const geo::PointCloud& gt, const MetricParams& params) {
    PairMetrics m;
    m.name = name;
    m.cd = chamfer(pred, gt);
    m.dcd = dcd(pred, gt, params.dcd_alpha);
    m.tau = params.f1_tau_frac * geo::bounding_sphere_radius(gt);
    auto f = f1_score(pred, gt, m.tau);
    m.f1 = f.f1;
    m.precision = f.precision;
    m.recall = f.recall;

    int n = std::min({pred.size(), gt.size(), params.emd_resample});
    num::Rng root(params.seed);
    auto a = resample_to(pred, n, root.stream("emd/resample/pred"));
    auto b = resample_to(gt, n, root.stream("emd/resample/gt"));
    m.emd = emd_exact(a, b);

    if (pred.channels == 3 && gt.channels == 3) m.color_mse = color_mse(pred, gt);
    return m;
}

MetricReport aggregate(std::vector<PairMetrics> pairs, const MetricParams& params) {
    MetricReport rep;
    rep.params = params;
    rep.pairs = std::move(pairs);
    auto fold = [&](auto get, double& mean_out, double& std_out) {
        double s = 0;
        for (const auto& p : rep.pairs) s += get(p);
        double mu = s / rep.pairs.size();
        double var = 0;
        for (const auto& p : rep.pairs) var += (get(p) - mu) * (get(p) - mu);
        mean_out = mu;
        std_out = std::sqrt(var / rep.pairs.size());
    };
    if (rep.pairs.empty()) throw data_error("aggregate: no pairs evaluated");
    fold([](const PairMetrics& p) { return p.cd; }, rep.mean.cd, rep.stddev.cd);
    fold([](const PairMetrics& p) { return p.dcd; }, rep.mean.dcd, rep.stddev.dcd);
    fold([](const PairMetrics& p) { return p.emd; }, rep.mean.emd, rep.stddev.emd);
    fold([](const PairMetrics& p) { return p.f1; }, rep.mean.f1, rep.stddev.f1);
    fold([](const PairMetrics& p) { return p.precision; }, rep.mean.precision, rep.stddev.precision);
    fold([](const PairMetrics& p) { return p.recall; }, rep.mean.recall, rep.stddev.recall);
    fold([](const PairMetrics& p) { return p.tau; }, rep.mean.tau, rep.stddev.tau);
    bool all_color = std::all_of(rep.pairs.begin(), rep.pairs.end(),
                                 [](const PairMetrics& p) { return p.color_mse.has_value(); });
    if (all_color) {
        double mu, sd;
        fold([](const PairMetrics& p) { return *p.color_mse; }, mu, sd);
        rep.mean.color_mse = mu;
        rep.stddev.color_mse = sd;
    }
    return rep;
}

}  // namespace pf::metrics
