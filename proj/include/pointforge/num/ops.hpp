#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pointforge/num/tensor.hpp"

namespace pf::num {

namespace detail {

template <typename S>
void shape_check(const char* op, bool ok, const TensorT<S>& a, const TensorT<S>& b) {
    if (!ok)
        throw numeric_error(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
}

// C (m x n) = A (m x k) * B (k x n), optionally transposing either side.
// accumulate=true adds into C instead of overwriting.
template <typename S>
void gemm(const S* a, const S* b, S* c, int m, int k, int n, bool ta, bool tb, bool accumulate) {
    if (!accumulate) std::fill(c, c + static_cast<long>(m) * n, S(0));
    if (!ta && !tb) {
        for (int i = 0; i < m; ++i)
            for (int p = 0; p < k; ++p) {
                S av = a[static_cast<long>(i) * k + p];
                if (av == S(0)) continue;
                const S* brow = b + static_cast<long>(p) * n;
                S* crow = c + static_cast<long>(i) * n;
                for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
            }
    } else if (!ta && tb) {  // A (m x k) * B^T with B (n x k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                S acc = 0;
                const S* arow = a + static_cast<long>(i) * k;
                const S* brow = b + static_cast<long>(j) * k;
                for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
                c[static_cast<long>(i) * n + j] += acc;
            }
    } else if (ta && !tb) {  // A^T with A (k x m)
        for (int p = 0; p < k; ++p) {
            const S* arow = a + static_cast<long>(p) * m;
            const S* brow = b + static_cast<long>(p) * n;
            for (int i = 0; i < m; ++i) {
                S av = arow[i];
                if (av == S(0)) continue;
                S* crow = c + static_cast<long>(i) * n;
                for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
            }
        }
    } else {
        throw numeric_error("gemm: double transpose unsupported");
    }
}

struct AxisSplit {
    long outer, n, inner;
};

inline AxisSplit axis_split(const std::vector<int>& shape, int axis) {
    AxisSplit s{1, 1, 1};
    int r = static_cast<int>(shape.size());
    if (axis < 0) axis += r;
    if (axis < 0 || axis >= r) throw numeric_error("axis out of range");
    for (int i = 0; i < axis; ++i) s.outer *= shape[i];
    s.n = shape[axis];
    for (int i = axis + 1; i < r; ++i) s.inner *= shape[i];
    return s;
}

inline std::vector<int> drop_axis(const std::vector<int>& shape, int axis) {
    if (axis < 0) axis += static_cast<int>(shape.size());
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(shape.size()); ++i)
        if (i != axis) out.push_back(shape[i]);
    if (out.empty()) out.push_back(1);
    return out;
}

}  // namespace detail

// ---- matrix product ----

template <typename S>
TensorT<S> matmul(TensorT<S> a, TensorT<S> b) {
    bool vec = b.rank() == 1;
    if (a.rank() != 2 || (b.rank() != 2 && !vec))
        throw numeric_error("matmul: expects 2-d inputs, got " + a.shape_str() + " and " + b.shape_str());
    int m = a.dim(0), k = a.dim(1);
    int k2 = b.dim(0), n = vec ? 1 : b.dim(1);
    detail::shape_check("matmul", k == k2, a, b);
    std::vector<S> out(static_cast<long>(m) * n);
    detail::gemm(a.data().data(), b.data().data(), out.data(), m, k, n, false, false, false);
    std::vector<int> oshape = vec ? std::vector<int>{m} : std::vector<int>{m, n};
    auto an = a.node(), bn = b.node();
    return make_op<S>(std::move(oshape), std::move(out), {a, b},
                      [an, bn, m, k, n](typename TensorT<S>::Node& self) {
                          if (an->requires_grad) {
                              if (an->grad.empty()) an->grad.assign(an->data.size(), S(0));
                              detail::gemm(self.grad.data(), bn->data.data(), an->grad.data(), m, n, k, false, true, true);
                          }
                          if (bn->requires_grad) {
                              if (bn->grad.empty()) bn->grad.assign(bn->data.size(), S(0));
                              detail::gemm(an->data.data(), self.grad.data(), bn->grad.data(), k, m, n, true, false, true);
                          }
                      });
}

// ---- elementwise ----

template <typename S>
TensorT<S> add(TensorT<S> a, TensorT<S> b) {
    detail::shape_check("add", a.shape() == b.shape(), a, b);
    std::vector<S> out(a.numel());
    for (long i = 0; i < a.numel(); ++i) out[i] = a.data()[i] + b.data()[i];
    auto an = a.node(), bn = b.node();
    return make_op<S>(a.shape(), std::move(out), {a, b}, [an, bn](typename TensorT<S>::Node& self) {
        if (an->requires_grad) an->accumulate(self.grad);
        if (bn->requires_grad) bn->accumulate(self.grad);
    });
}

template <typename S>
TensorT<S> sub(TensorT<S> a, TensorT<S> b) {
    detail::shape_check("sub", a.shape() == b.shape(), a, b);
    std::vector<S> out(a.numel());
    for (long i = 0; i < a.numel(); ++i) out[i] = a.data()[i] - b.data()[i];
    auto an = a.node(), bn = b.node();
    return make_op<S>(a.shape(), std::move(out), {a, b}, [an, bn](typename TensorT<S>::Node& self) {
        if (an->requires_grad) an->accumulate(self.grad);
        if (bn->requires_grad) {
            if (bn->grad.empty()) bn->grad.assign(bn->data.size(), S(0));
            for (size_t i = 0; i < self.grad.size(); ++i) bn->grad[i] -= self.grad[i];
        }
    });
}

template <typename S>
TensorT<S> mul(TensorT<S> a, TensorT<S> b) {
    detail::shape_check("mul", a.shape() == b.shape(), a, b);
    std::vector<S> out(a.numel());
    for (long i = 0; i < a.numel(); ++i) out[i] = a.data()[i] * b.data()[i];
    auto an = a.node(), bn = b.node();
    return make_op<S>(a.shape(), std::move(out), {a, b}, [an, bn](typename TensorT<S>::Node& self) {
        if (an->requires_grad) {
            if (an->grad.empty()) an->grad.assign(an->data.size(), S(0));
            for (size_t i = 0; i < self.grad.size(); ++i) an->grad[i] += self.grad[i] * bn->data[i];
        }
        if (bn->requires_grad) {
            if (bn->grad.empty()) bn->grad.assign(bn->data.size(), S(0));
            for (size_t i = 0; i < self.grad.size(); ++i) bn->grad[i] += self.grad[i] * an->data[i];
        }
    });
}

template <typename S>
TensorT<S> add_scalar(TensorT<S> a, S c) {
    std::vector<S> out(a.numel());
    for (long i = 0; i < a.numel(); ++i) out[i] = a.data()[i] + c;
    auto an = a.node();
    return make_op<S>(a.shape(), std::move(out), {a}, [an](typename TensorT<S>::Node& self) {
        if (an->requires_grad) an->accumulate(self.grad);
    });
}

template <typename S>
TensorT<S> mul_scalar(TensorT<S> a, S c) {
    std::vector<S> out(a.numel());
    for (long i = 0; i < a.numel(); ++i) out[i] = a.data()[i] * c;
    auto an = a.node();
    return make_op<S>(a.shape(), std::move(out), {a}, [an, c](typename TensorT<S>::Node& self) {
        if (an->requires_grad) {
            if (an->grad.empty()) an->grad.assign(an->data.size(), S(0));
            for (size_t i = 0; i < self.grad.size(); ++i) an->grad[i] += self.grad[i] * c;
        }
    });
}

// row-broadcast: x (N x C) op v (C) applied to every row
template <typename S>
TensorT<S> add_rowvec(TensorT<S> x, TensorT<S> v) {
    if (x.rank() != 2) throw numeric_error("add_rowvec: x must be 2-d, got " + x.shape_str());
    int n = x.dim(0), c = x.dim(1);
    detail::shape_check("add_rowvec", static_cast<long>(c) == v.numel(), x, v);
    std::vector<S> out(x.numel());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) out[static_cast<long>(i) * c + j] = x.data()[static_cast<long>(i) * c + j] + v.data()[j];
    auto xn = x.node(), vn = v.node();
    return make_op<S>(x.shape(), std::move(out), {x, v}, [xn, vn, n, c](typename TensorT<S>::Node& self) {
        if (xn->requires_grad) xn->accumulate(self.grad);
        if (vn->requires_grad) {
            if (vn->grad.empty()) vn->grad.assign(vn->data.size(), S(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < c; ++j) vn->grad[j] += self.grad[static_cast<long>(i) * c + j];
        }
    });
}

template <typename S>
TensorT<S> mul_rowvec(TensorT<S> x, TensorT<S> v) {
    if (x.rank() != 2) throw numeric_error("mul_rowvec: x must be 2-d, got " + x.shape_str());
    int n = x.dim(0), c = x.dim(1);
    detail::shape_check("mul_rowvec", static_cast<long>(c) == v.numel(), x, v);
    std::vector<S> out(x.numel());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) out[static_cast<long>(i) * c + j] = x.data()[static_cast<long>(i) * c + j] * v.data()[j];
    auto xn = x.node(), vn = v.node();
    return make_op<S>(x.shape(), std::move(out), {x, v}, [xn, vn, n, c](typename TensorT<S>::Node& self) {
        if (xn->requires_grad) {
            if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < c; ++j)
                    xn->grad[static_cast<long>(i) * c + j] += self.grad[static_cast<long>(i) * c + j] * vn->data[j];
        }
        if (vn->requires_grad) {
            if (vn->grad.empty()) vn->grad.assign(vn->data.size(), S(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < c; ++j)
                    vn->grad[j] += self.grad[static_cast<long>(i) * c + j] * xn->data[static_cast<long>(i) * c + j];
        }
    });
}

// ---- shape ops ----

template <typename S>
TensorT<S> reshape(TensorT<S> x, std::vector<int> shape) {
    long count = 1;
    for (int d : shape) count *= d;
    if (count != x.numel())
        throw numeric_error("reshape: element count mismatch " + x.shape_str());
    auto xn = x.node();
    return make_op<S>(std::move(shape), x.data(), {x}, [xn](typename TensorT<S>::Node& self) {
        if (xn->requires_grad) xn->accumulate(self.grad);
    });
}

template <typename S>
TensorT<S> transpose(TensorT<S> x) {
    if (x.rank() != 2) throw numeric_error("transpose: expects 2-d, got " + x.shape_str());
    int n = x.dim(0), c = x.dim(1);
    std::vector<S> out(x.numel());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) out[static_cast<long>(j) * n + i] = x.data()[static_cast<long>(i) * c + j];
    auto xn = x.node();
    return make_op<S>({c, n}, std::move(out), {x}, [xn, n, c](typename TensorT<S>::Node& self) {
        if (xn->requires_grad) {
            if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < c; ++j)
                    xn->grad[static_cast<long>(i) * c + j] += self.grad[static_cast<long>(j) * n + i];
        }
    });
}

// concat along the last axis; all other dims must agree
template <typename S>
TensorT<S> concat(TensorT<S> a, TensorT<S> b) {
    if (a.rank() != b.rank()) detail::shape_check("concat", false, a, b);
    int r = a.rank();
    for (int i = 0; i + 1 < r; ++i) detail::shape_check("concat", a.dim(i) == b.dim(i), a, b);
    auto sa = detail::axis_split(a.shape(), r - 1);
    auto sb = detail::axis_split(b.shape(), r - 1);
    long rows = sa.outer;
    long ca = sa.n, cb = sb.n;
    std::vector<int> oshape = a.shape();
    oshape[r - 1] = static_cast<int>(ca + cb);
    std::vector<S> out(rows * (ca + cb));
    for (long i = 0; i < rows; ++i) {
        std::copy_n(a.data().data() + i * ca, ca, out.data() + i * (ca + cb));
        std::copy_n(b.data().data() + i * cb, cb, out.data() + i * (ca + cb) + ca);
    }
    auto an = a.node(), bn = b.node();
    return make_op<S>(std::move(oshape), std::move(out), {a, b},
                      [an, bn, rows, ca, cb](typename TensorT<S>::Node& self) {
                          if (an->requires_grad) {
                              if (an->grad.empty()) an->grad.assign(an->data.size(), S(0));
                              for (long i = 0; i < rows; ++i)
                                  for (long j = 0; j < ca; ++j) an->grad[i * ca + j] += self.grad[i * (ca + cb) + j];
                          }
                          if (bn->requires_grad) {
                              if (bn->grad.empty()) bn->grad.assign(bn->data.size(), S(0));
                              for (long i = 0; i < rows; ++i)
                                  for (long j = 0; j < cb; ++j) bn->grad[i * cb + j] += self.grad[i * (ca + cb) + ca + j];
                          }
                      });
}

// slice [offset, offset+width) of the last axis; concat's inverse
template <typename S>
TensorT<S> slice_last(TensorT<S> x, int offset, int width) {
    int r = x.rank();
    auto sp = detail::axis_split(x.shape(), r - 1);
    if (offset < 0 || offset + width > sp.n)
        throw numeric_error("slice_last: range out of bounds for " + x.shape_str());
    std::vector<int> oshape = x.shape();
    oshape[r - 1] = width;
    std::vector<S> out(sp.outer * width);
    for (long i = 0; i < sp.outer; ++i)
        std::copy_n(x.data().data() + i * sp.n + offset, width, out.data() + i * width);
    auto xn = x.node();
    long rows = sp.outer, n = sp.n;
    return make_op<S>(std::move(oshape), std::move(out), {x},
                      [xn, rows, n, offset, width](typename TensorT<S>::Node& self) {
                          if (!xn->requires_grad) return;
                          if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
                          for (long i = 0; i < rows; ++i)
                              for (int j = 0; j < width; ++j)
                                  xn->grad[i * n + offset + j] += self.grad[i * width + j];
                      });
}

// ---- nonlinearities ----

template <typename S>
TensorT<S> sigmoid(TensorT<S> x) {
    std::vector<S> out(x.numel());
    for (long i = 0; i < x.numel(); ++i) out[i] = S(1) / (S(1) + std::exp(-x.data()[i]));
    auto xn = x.node();
    return make_op<S>(x.shape(), std::move(out), {x}, [xn](typename TensorT<S>::Node& self) {
        if (!xn->requires_grad) return;
        if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
        for (size_t i = 0; i < self.grad.size(); ++i) {
            S y = self.data[i];
            xn->grad[i] += self.grad[i] * y * (S(1) - y);
        }
    });
}

template <typename S>
TensorT<S> relu(TensorT<S> x) {
    std::vector<S> out(x.numel());
    for (long i = 0; i < x.numel(); ++i) out[i] = x.data()[i] > S(0) ? x.data()[i] : S(0);
    auto xn = x.node();
    return make_op<S>(x.shape(), std::move(out), {x}, [xn](typename TensorT<S>::Node& self) {
        if (!xn->requires_grad) return;
        if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
        for (size_t i = 0; i < self.grad.size(); ++i)
            if (xn->data[i] > S(0)) xn->grad[i] += self.grad[i];
    });
}

template <typename S>
TensorT<S> softmax(TensorT<S> x, int axis) {
    auto sp = detail::axis_split(x.shape(), axis);
    std::vector<S> out(x.numel());
    for (long o = 0; o < sp.outer; ++o)
        for (long in = 0; in < sp.inner; ++in) {
            long base = o * sp.n * sp.inner + in;
            S mx = x.data()[base];
            for (long j = 1; j < sp.n; ++j) mx = std::max(mx, x.data()[base + j * sp.inner]);
            S sum = 0;
            for (long j = 0; j < sp.n; ++j) {
                S e = std::exp(x.data()[base + j * sp.inner] - mx);
                out[base + j * sp.inner] = e;
                sum += e;
            }
            for (long j = 0; j < sp.n; ++j) out[base + j * sp.inner] /= sum;
        }
    auto xn = x.node();
    return make_op<S>(x.shape(), std::move(out), {x}, [xn, sp](typename TensorT<S>::Node& self) {
        if (!xn->requires_grad) return;
        if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
        for (long o = 0; o < sp.outer; ++o)
            for (long in = 0; in < sp.inner; ++in) {
                long base = o * sp.n * sp.inner + in;
                S dot = 0;
                for (long j = 0; j < sp.n; ++j)
                    dot += self.grad[base + j * sp.inner] * self.data[base + j * sp.inner];
                for (long j = 0; j < sp.n; ++j) {
                    long ix = base + j * sp.inner;
                    xn->grad[ix] += self.data[ix] * (self.grad[ix] - dot);
                }
            }
    });
}

// ---- pooling over an axis ----

template <typename S>
TensorT<S> max_pool(TensorT<S> x, int axis) {
    auto sp = detail::axis_split(x.shape(), axis);
    std::vector<S> out(sp.outer * sp.inner);
    std::vector<long> arg(sp.outer * sp.inner);
    for (long o = 0; o < sp.outer; ++o)
        for (long in = 0; in < sp.inner; ++in) {
            long base = o * sp.n * sp.inner + in;
            S best = x.data()[base];
            long bj = 0;
            for (long j = 1; j < sp.n; ++j) {
                S v = x.data()[base + j * sp.inner];
                if (v > best) { best = v; bj = j; }
            }
            out[o * sp.inner + in] = best;
            arg[o * sp.inner + in] = base + bj * sp.inner;
        }
    auto xn = x.node();
    return make_op<S>(detail::drop_axis(x.shape(), axis), std::move(out), {x},
                      [xn, arg = std::move(arg)](typename TensorT<S>::Node& self) {
                          if (!xn->requires_grad) return;
                          if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
                          for (size_t i = 0; i < arg.size(); ++i) xn->grad[arg[i]] += self.grad[i];
                      });
}

template <typename S>
TensorT<S> mean_pool(TensorT<S> x, int axis) {
    auto sp = detail::axis_split(x.shape(), axis);
    std::vector<S> out(sp.outer * sp.inner, S(0));
    for (long o = 0; o < sp.outer; ++o)
        for (long j = 0; j < sp.n; ++j)
            for (long in = 0; in < sp.inner; ++in)
                out[o * sp.inner + in] += x.data()[o * sp.n * sp.inner + j * sp.inner + in];
    for (auto& v : out) v /= static_cast<S>(sp.n);
    auto xn = x.node();
    return make_op<S>(detail::drop_axis(x.shape(), axis), std::move(out), {x},
                      [xn, sp](typename TensorT<S>::Node& self) {
                          if (!xn->requires_grad) return;
                          if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
                          S inv = S(1) / static_cast<S>(sp.n);
                          for (long o = 0; o < sp.outer; ++o)
                              for (long j = 0; j < sp.n; ++j)
                                  for (long in = 0; in < sp.inner; ++in)
                                      xn->grad[o * sp.n * sp.inner + j * sp.inner + in] +=
                                          self.grad[o * sp.inner + in] * inv;
                      });
}

template <typename S>
TensorT<S> sum_pool(TensorT<S> x, int axis) {
    auto sp = detail::axis_split(x.shape(), axis);
    TensorT<S> m = mean_pool(x, axis);
    return mul_scalar(m, static_cast<S>(sp.n));
}

// ---- row indexing ----

// gather rows of a 2-d tensor; index -1 yields a zero row (used for padding
// and for points with no image support)
template <typename S>
TensorT<S> gather_rows(TensorT<S> x, std::vector<int> idx) {
    if (x.rank() != 2) throw numeric_error("gather_rows: x must be 2-d, got " + x.shape_str());
    int n = x.dim(0), c = x.dim(1);
    std::vector<S> out(idx.size() * c, S(0));
    for (size_t i = 0; i < idx.size(); ++i) {
        int r = idx[i];
        if (r < -1 || r >= n) throw numeric_error("gather_rows: index out of range");
        if (r >= 0) std::copy_n(x.data().data() + static_cast<long>(r) * c, c, out.data() + i * c);
    }
    auto xn = x.node();
    return make_op<S>({static_cast<int>(idx.size()), c}, std::move(out), {x},
                      [xn, idx = std::move(idx), c](typename TensorT<S>::Node& self) {
                          if (!xn->requires_grad) return;
                          if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
                          for (size_t i = 0; i < idx.size(); ++i) {
                              int r = idx[i];
                              if (r < 0) continue;
                              for (int j = 0; j < c; ++j)
                                  xn->grad[static_cast<long>(r) * c + j] += self.grad[i * c + j];
                          }
                      });
}

// scatter-add rows of x (M x C) into an (n_rows x C) output
template <typename S>
TensorT<S> scatter_add_rows(TensorT<S> x, std::vector<int> idx, int n_rows) {
    if (x.rank() != 2) throw numeric_error("scatter_add_rows: x must be 2-d, got " + x.shape_str());
    int m = x.dim(0), c = x.dim(1);
    if (static_cast<int>(idx.size()) != m) throw numeric_error("scatter_add_rows: index count mismatch");
    std::vector<S> out(static_cast<long>(n_rows) * c, S(0));
    for (int i = 0; i < m; ++i) {
        int r = idx[i];
        if (r < 0 || r >= n_rows) throw numeric_error("scatter_add_rows: index out of range");
        for (int j = 0; j < c; ++j) out[static_cast<long>(r) * c + j] += x.data()[static_cast<long>(i) * c + j];
    }
    auto xn = x.node();
    return make_op<S>({n_rows, c}, std::move(out), {x},
                      [xn, idx = std::move(idx), c](typename TensorT<S>::Node& self) {
                          if (!xn->requires_grad) return;
                          if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
                          for (size_t i = 0; i < idx.size(); ++i)
                              for (int j = 0; j < c; ++j)
                                  xn->grad[i * c + j] += self.grad[static_cast<long>(idx[i]) * c + j];
                      });
}

// fused gather + per-row weight + group sum: out_m = sum_{j<g} w[m*g+j] * feats[idx[m*g+j]]
// with idx -1 contributing nothing. Carries both inverse-distance interpolation
// and bilinear image sampling, whose weights are constants w.r.t. parameters.
template <typename S>
TensorT<S> weighted_gather_sum(TensorT<S> feats, std::vector<int> idx, std::vector<S> w, int group) {
    if (feats.rank() != 2) throw numeric_error("weighted_gather_sum: feats must be 2-d, got " + feats.shape_str());
    if (idx.size() != w.size() || idx.size() % group != 0)
        throw numeric_error("weighted_gather_sum: index/weight layout mismatch");
    int n = feats.dim(0), c = feats.dim(1);
    long m = static_cast<long>(idx.size()) / group;
    std::vector<S> out(m * c, S(0));
    for (long i = 0; i < m; ++i)
        for (int j = 0; j < group; ++j) {
            int r = idx[i * group + j];
            if (r < -1 || r >= n) throw numeric_error("weighted_gather_sum: index out of range");
            if (r < 0) continue;
            S wj = w[i * group + j];
            const S* src = feats.data().data() + static_cast<long>(r) * c;
            S* dst = out.data() + i * c;
            for (int k = 0; k < c; ++k) dst[k] += wj * src[k];
        }
    auto fn = feats.node();
    return make_op<S>({static_cast<int>(m), c}, std::move(out), {feats},
                      [fn, idx = std::move(idx), w = std::move(w), group, c](typename TensorT<S>::Node& self) {
                          if (!fn->requires_grad) return;
                          if (fn->grad.empty()) fn->grad.assign(fn->data.size(), S(0));
                          long m = static_cast<long>(idx.size()) / group;
                          for (long i = 0; i < m; ++i)
                              for (int j = 0; j < group; ++j) {
                                  int r = idx[i * group + j];
                                  if (r < 0) continue;
                                  S wj = w[i * group + j];
                                  for (int k = 0; k < c; ++k)
                                      fn->grad[static_cast<long>(r) * c + k] += wj * self.grad[i * c + k];
                              }
                      });
}

// ---- reductions ----

template <typename S>
TensorT<S> reduce_sum(TensorT<S> x) {
    S acc = 0;
    for (S v : x.data()) acc += v;
    auto xn = x.node();
    return make_op<S>({1}, {acc}, {x}, [xn](typename TensorT<S>::Node& self) {
        if (!xn->requires_grad) return;
        if (xn->grad.empty()) xn->grad.assign(xn->data.size(), S(0));
        for (auto& g : xn->grad) g += self.grad[0];
    });
}

template <typename S>
TensorT<S> reduce_mean(TensorT<S> x) {
    return mul_scalar(reduce_sum(x), S(1) / static_cast<S>(x.numel()));
}

// mean of squared entries; the loss kernel
template <typename S>
TensorT<S> mean_square(TensorT<S> x) {
    return reduce_mean(mul(x, x));
}

}  // namespace pf::num
