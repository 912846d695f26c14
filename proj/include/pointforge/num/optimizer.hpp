#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pointforge/num/ops.hpp"
#include "pointforge/num/rng.hpp"
#include "pointforge/num/tensor.hpp"

namespace pf::num {

// Named parameter registry. Registration order is the checkpoint order;
// initialization draws from a stream keyed by the parameter name so values
// do not depend on registration order.
template <typename S>
class ParamStore {
  public:
    struct Entry {
        std::string name;
        TensorT<S> tensor;
    };

    // uniform(-bound, bound) with bound = sqrt(6 / fan_in), the usual scheme
    // for relu stacks. Tensors are shared handles, so the returned copy and
    // the stored entry alias the same buffer.
    TensorT<S> add(const std::string& name, std::vector<int> shape, const Rng& rng, int fan_in) {
        double bound = std::sqrt(6.0 / std::max(1, fan_in));
        auto st = rng.stream("init/" + name);
        long count = 1;
        for (int d : shape) count *= d;
        std::vector<S> data(count);
        for (auto& v : data) v = static_cast<S>(st.uniform(-bound, bound));
        entries_.push_back({name, TensorT<S>::param(std::move(shape), std::move(data))});
        return entries_.back().tensor;
    }

    TensorT<S> add_zeros(const std::string& name, std::vector<int> shape) {
        entries_.push_back({name, TensorT<S>::zeros(std::move(shape), true)});
        return entries_.back().tensor;
    }

    TensorT<S> find(const std::string& name) const {
        for (const auto& e : entries_)
            if (e.name == name) return e.tensor;
        return TensorT<S>{};
    }

    std::vector<Entry>& entries() { return entries_; }
    const std::vector<Entry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

    long total_params() const {
        long n = 0;
        for (const auto& e : entries_) n += e.tensor.numel();
        return n;
    }

    void zero_grad() {
        for (auto& e : entries_) e.tensor.grad().clear();
    }

  private:
    std::vector<Entry> entries_;
};

// sgd-momentum and adam over a ParamStore. Updates in place, zeroes grads,
// bumps step_count.
template <typename S>
class OptimizerT {
  public:
    enum class Kind { sgd_momentum, adam };

    struct Settings {
        Kind kind = Kind::adam;
        S learning_rate = static_cast<S>(1e-3);
        S beta1 = static_cast<S>(0.9);   // momentum coefficient for sgd
        S beta2 = static_cast<S>(0.999);
        S eps = static_cast<S>(1e-8);
    };

    OptimizerT() = default;
    explicit OptimizerT(Settings s) : settings_(s) {}

    const Settings& settings() const { return settings_; }
    long step_count() const { return step_count_; }

    void step(ParamStore<S>& params) {
        ensure_buffers(params);
        ++step_count_;
        for (size_t p = 0; p < params.size(); ++p) {
            auto& entry = params.entries()[p];
            auto& t = entry.tensor;
            if (t.grad().empty())
                throw numeric_error("optimizer_step: missing grad for parameter '" + entry.name + "'");
            auto& data = t.data();
            auto& grad = t.grad();
            if (settings_.kind == Kind::sgd_momentum) {
                auto& vel = m_[p];
                for (size_t i = 0; i < data.size(); ++i) {
                    vel[i] = settings_.beta1 * vel[i] + grad[i];
                    data[i] -= settings_.learning_rate * vel[i];
                }
            } else {
                auto& m = m_[p];
                auto& v = v_[p];
                S b1t = std::pow(settings_.beta1, static_cast<S>(step_count_));
                S b2t = std::pow(settings_.beta2, static_cast<S>(step_count_));
                for (size_t i = 0; i < data.size(); ++i) {
                    m[i] = settings_.beta1 * m[i] + (S(1) - settings_.beta1) * grad[i];
                    v[i] = settings_.beta2 * v[i] + (S(1) - settings_.beta2) * grad[i] * grad[i];
                    S mhat = m[i] / (S(1) - b1t);
                    S vhat = v[i] / (S(1) - b2t);
                    data[i] -= settings_.learning_rate * mhat / (std::sqrt(vhat) + settings_.eps);
                }
            }
            grad.clear();
        }
    }

    // moment buffers exposed for checkpoint/resume
    std::vector<std::vector<S>>& first_moments() { return m_; }
    std::vector<std::vector<S>>& second_moments() { return v_; }
    void set_step_count(long n) { step_count_ = n; }
    void ensure_buffers(const ParamStore<S>& params) {
        if (m_.size() == params.size()) return;
        m_.clear();
        v_.clear();
        for (const auto& e : params.entries()) {
            m_.emplace_back(e.tensor.numel(), S(0));
            if (settings_.kind == Kind::adam) v_.emplace_back(e.tensor.numel(), S(0));
        }
        if (settings_.kind != Kind::adam) v_.resize(params.size());
    }

  private:
    Settings settings_;
    long step_count_ = 0;
    std::vector<std::vector<S>> m_, v_;
};

using Optimizer = OptimizerT<float>;

}  // namespace pf::num
