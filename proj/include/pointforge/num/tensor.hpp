#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "pointforge/common.hpp"

namespace pf::num {

// Dense row-major tensor with a dynamic reverse-mode tape. The graph is the
// tape: each op node keeps handles to its parents plus a closure that pushes
// the node's gradient into them. backward() walks the graph once in reverse
// topological order and then severs parent links, which is what "tape cleared"
// means here. Templated on the scalar so the finite-difference oracles can run
// the identical code path in double while production stays float.
template <typename S>
class TensorT {
  public:
    struct Node {
        std::vector<int> shape;
        std::vector<S> data;
        std::vector<S> grad;  // sized lazily on first accumulation
        bool requires_grad = false;
        std::vector<std::shared_ptr<Node>> parents;
        std::function<void(Node&)> backward;

        long numel() const {
            long n = 1;
            for (int d : shape) n *= d;
            return n;
        }
        void accumulate(const std::vector<S>& g) {
            if (grad.empty()) grad.assign(data.size(), S(0));
            for (size_t i = 0; i < g.size(); ++i) grad[i] += g[i];
        }
    };

    TensorT() = default;
    explicit TensorT(std::shared_ptr<Node> n) : node_(std::move(n)) {}

    static TensorT constant(std::vector<int> shape, std::vector<S> data) {
        auto n = std::make_shared<Node>();
        n->shape = std::move(shape);
        n->data = std::move(data);
        if (n->numel() != static_cast<long>(n->data.size()))
            throw numeric_error("tensor: shape/data size mismatch");
        return TensorT(std::move(n));
    }

    static TensorT zeros(std::vector<int> shape, bool requires_grad = false) {
        auto n = std::make_shared<Node>();
        long count = 1;
        for (int d : shape) count *= d;
        n->shape = std::move(shape);
        n->data.assign(count, S(0));
        n->requires_grad = requires_grad;
        return TensorT(std::move(n));
    }

    static TensorT scalar(S v) { return constant({1}, {v}); }

    // leaf parameter: participates in every gradient computation
    static TensorT param(std::vector<int> shape, std::vector<S> data) {
        TensorT t = constant(std::move(shape), std::move(data));
        t.node_->requires_grad = true;
        return t;
    }

    bool defined() const { return node_ != nullptr; }
    const std::vector<int>& shape() const { return node_->shape; }
    int dim(int i) const { return node_->shape[i]; }
    int rank() const { return static_cast<int>(node_->shape.size()); }
    long numel() const { return node_->numel(); }
    std::vector<S>& data() { return node_->data; }
    const std::vector<S>& data() const { return node_->data; }
    std::vector<S>& grad() { return node_->grad; }
    const std::vector<S>& grad() const { return node_->grad; }
    bool requires_grad() const { return node_->requires_grad; }
    std::shared_ptr<Node> node() const { return node_; }

    S value() const {
        if (numel() != 1) throw numeric_error("tensor: value() on non-scalar");
        return node_->data[0];
    }

    std::string shape_str() const {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < node_->shape.size(); ++i)
            os << (i ? "," : "") << node_->shape[i];
        os << "]";
        return os.str();
    }

  private:
    std::shared_ptr<Node> node_;
};

using Tensor = TensorT<float>;

// Tape switch for inference: ops skip recording when disabled.
inline bool& tape_enabled_flag() {
    thread_local bool enabled = true;
    return enabled;
}

struct NoGradGuard {
    bool prev;
    NoGradGuard() : prev(tape_enabled_flag()) { tape_enabled_flag() = false; }
    ~NoGradGuard() { tape_enabled_flag() = prev; }
};

// Factory for op results. Records parents + backward closure only when the
// tape is live and some input needs gradients.
template <typename S>
TensorT<S> make_op(std::vector<int> shape, std::vector<S> data,
                   std::vector<TensorT<S>> parents,
                   std::function<void(typename TensorT<S>::Node&)> backward) {
    auto out = TensorT<S>::constant(std::move(shape), std::move(data));
    bool track = false;
    if (tape_enabled_flag()) {
        for (const auto& p : parents)
            if (p.requires_grad()) { track = true; break; }
    }
    if (track) {
        out.node()->requires_grad = true;
        for (auto& p : parents) out.node()->parents.push_back(p.node());
        out.node()->backward = std::move(backward);
    }
    return out;
}

// Reverse pass from a scalar loss. Populates .grad on every requires_grad
// leaf reachable from it, accumulating into grads already present (so batch
// accumulation across calls works), then frees the graph.
template <typename S>
void backward(TensorT<S> loss) {
    using Node = typename TensorT<S>::Node;
    if (loss.numel() != 1) throw numeric_error("backward: loss must be scalar, got " + loss.shape_str());

    // iterative post-order topological sort
    std::vector<Node*> order;
    std::unordered_set<Node*> seen;
    std::vector<std::pair<Node*, size_t>> stack;
    stack.push_back({loss.node().get(), 0});
    seen.insert(loss.node().get());
    while (!stack.empty()) {
        auto& [n, next] = stack.back();
        if (next < n->parents.size()) {
            Node* p = n->parents[next++].get();
            if (!p->requires_grad || seen.count(p)) continue;
            seen.insert(p);
            stack.push_back({p, 0});
        } else {
            order.push_back(n);
            stack.pop_back();
        }
    }

    loss.node()->accumulate({S(1)});
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Node* n = *it;
        if (n->backward) {
            if (n->grad.empty()) n->grad.assign(n->data.size(), S(0));
            n->backward(*n);
        }
    }
    // clear the tape: break parent links so interior nodes free immediately
    for (Node* n : order) {
        n->parents.clear();
        n->backward = nullptr;
    }
}

template <typename S>
void check_finite(const TensorT<S>& t, const std::string& what) {
    for (S v : t.data())
        if (!std::isfinite(static_cast<double>(v)))
            throw numeric_error(what + ": non-finite value encountered");
}

}  // namespace pf::num
