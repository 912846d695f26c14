#pragma once

#include <cmath>
#include <vector>

#include "pointforge/common.hpp"

namespace pf::diff {

// Linear beta ramp with sigma_t^2 = beta_t. Stored in double; indexing is
// 1-based through the accessors (t in [1, T]).
struct NoiseSchedule {
    int T = 0;
    double beta_min = 0, beta_max = 0;
    std::vector<double> beta, alpha, alpha_bar, sigma;

    double beta_at(int t) const { return beta[check(t)]; }
    double alpha_at(int t) const { return alpha[check(t)]; }
    double alpha_bar_at(int t) const { return alpha_bar[check(t)]; }
    double sigma_at(int t) const { return sigma[check(t)]; }

  private:
    int check(int t) const {
        if (t < 1 || t > T) throw numeric_error("schedule: t out of range [1," + std::to_string(T) + "]");
        return t - 1;
    }
};

inline NoiseSchedule make_schedule(int T, double beta_min, double beta_max) {
    if (T < 1) throw numeric_error("schedule: T must be >= 1");
    if (!(beta_min > 0) || !(beta_min <= beta_max) || !(beta_max < 1))
        throw numeric_error("schedule: need 0 < beta_min <= beta_max < 1");
    NoiseSchedule s;
    s.T = T;
    s.beta_min = beta_min;
    s.beta_max = beta_max;
    s.beta.resize(T);
    s.alpha.resize(T);
    s.alpha_bar.resize(T);
    s.sigma.resize(T);
    double cum = 1.0;
    for (int i = 0; i < T; ++i) {
        double frac = T == 1 ? 0.0 : static_cast<double>(i) / (T - 1);
        s.beta[i] = beta_min + (beta_max - beta_min) * frac;
        s.alpha[i] = 1.0 - s.beta[i];
        cum *= s.alpha[i];
        s.alpha_bar[i] = cum;
        s.sigma[i] = std::sqrt(s.beta[i]);
    }
    return s;
}

}  // namespace pf::diff
