#pragma once

#include <vector>

#include "pointforge/diff/schedule.hpp"
#include "pointforge/num/ops.hpp"
#include "pointforge/num/rng.hpp"

namespace pf::diff {

// noisy cloud as a flat N x D buffer plus its step index
struct DiffusionState {
    std::vector<float> x;
    int n = 0, d = 0;
    int t = 0;
};

// closed-form forward draw: x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps
template <typename S>
num::TensorT<S> q_sample(const num::TensorT<S>& x0, int t, const num::TensorT<S>& eps,
                         const NoiseSchedule& sched) {
    double abar = sched.alpha_bar_at(t);
    auto a = num::mul_scalar(x0, static_cast<S>(std::sqrt(abar)));
    auto b = num::mul_scalar(eps, static_cast<S>(std::sqrt(1.0 - abar)));
    return num::add(a, b);
}

template <typename S>
std::vector<S> q_sample_raw(const std::vector<S>& x0, int t, const std::vector<S>& eps,
                            const NoiseSchedule& sched) {
    double sa = std::sqrt(sched.alpha_bar_at(t));
    double sb = std::sqrt(1.0 - sched.alpha_bar_at(t));
    std::vector<S> out(x0.size());
    for (size_t i = 0; i < x0.size(); ++i)
        out[i] = static_cast<S>(sa * x0[i] + sb * eps[i]);
    return out;
}

// posterior mean: mu = (x_t - beta_t / sqrt(1-abar_t) * eps_hat) / sqrt(alpha_t)
template <typename S>
std::vector<S> reverse_mean(const std::vector<S>& x_t, const std::vector<S>& eps_hat, int t,
                            const NoiseSchedule& sched) {
    if (x_t.size() != eps_hat.size()) throw numeric_error("reverse_step: eps_hat size mismatch");
    double coef = sched.beta_at(t) / std::sqrt(1.0 - sched.alpha_bar_at(t));
    double inv_sqrt_alpha = 1.0 / std::sqrt(sched.alpha_at(t));
    std::vector<S> out(x_t.size());
    for (size_t i = 0; i < x_t.size(); ++i)
        out[i] = static_cast<S>(inv_sqrt_alpha * (x_t[i] - coef * eps_hat[i]));
    return out;
}

// one transition x_t -> x_{t-1}; z_rng == nullptr means sigma suppressed (t=1)
template <typename S>
std::vector<S> reverse_step(const std::vector<S>& x_t, const std::vector<S>& eps_hat, int t,
                            const NoiseSchedule& sched, num::RngStream* z_rng) {
    std::vector<S> out = reverse_mean(x_t, eps_hat, t, sched);
    if (z_rng) {
        double sigma = sched.sigma_at(t);
        for (auto& v : out) v = static_cast<S>(v + sigma * z_rng->normal());
    }
    return out;
}

// evenly strided sub-schedule from T down to 1 inclusive; steps == T yields
// exactly T, T-1, ..., 1
inline std::vector<int> sample_timesteps(int T, int steps) {
    if (steps < 1 || steps > T) throw numeric_error("sample: steps must be in [1, T]");
    std::vector<int> ts(steps);
    if (steps == 1) {
        ts[0] = T;
        return ts;
    }
    for (int i = 0; i < steps; ++i) {
        double v = T - static_cast<double>(i) * (T - 1) / (steps - 1);
        ts[i] = static_cast<int>(std::lround(v));
    }
    return ts;
}

}  // namespace pf::diff
