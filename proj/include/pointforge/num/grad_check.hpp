#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "pointforge/num/optimizer.hpp"
#include "pointforge/num/tensor.hpp"

namespace pf::num {

// Central finite-difference verification of the tape. f must rebuild the
// taped scalar from the current parameter values each time it is called.
// Returns max over all parameter entries of
//   |analytic - central| / (|analytic| + |central| + 1e-12).
// Differences are accumulated in double; for trustworthy results instantiate
// the pipeline with S = double.
template <typename S>
double grad_check(const std::function<TensorT<S>()>& f, ParamStore<S>& params, double h) {
    if (h <= 0) throw numeric_error("grad_check: h must be positive");

    params.zero_grad();
    TensorT<S> loss = f();
    backward(loss);
    std::vector<std::vector<S>> analytic;
    for (auto& e : params.entries()) {
        if (e.tensor.grad().empty())
            analytic.emplace_back(e.tensor.numel(), S(0));
        else
            analytic.push_back(e.tensor.grad());
    }
    params.zero_grad();

    double worst = 0.0;
    for (size_t p = 0; p < params.size(); ++p) {
        auto& data = params.entries()[p].tensor.data();
        for (size_t i = 0; i < data.size(); ++i) {
            S saved = data[i];
            data[i] = saved + static_cast<S>(h);
            double fp;
            {
                NoGradGuard ng;
                fp = static_cast<double>(f().value());
            }
            data[i] = saved - static_cast<S>(h);
            double fm;
            {
                NoGradGuard ng;
                fm = static_cast<double>(f().value());
            }
            data[i] = saved;
            double numeric = (fp - fm) / (2.0 * h);
            double a = static_cast<double>(analytic[p][i]);
            double rel = std::abs(a - numeric) / (std::abs(a) + std::abs(numeric) + 1e-12);
            worst = std::max(worst, rel);
        }
    }
    return worst;
}

}  // namespace pf::num
