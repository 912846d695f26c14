#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "pointforge/common.hpp"
#include "pointforge/num/optimizer.hpp"

namespace pf::num {

// Flat binary checkpoint container.
//
//   magic   "PFCK"
//   version u32 (currently 1)
//   count   u32 named tensors
//   per tensor:
//     name_len u32, name bytes (UTF-8)
//     rank     u32
//     dims     u64 x rank
//     payload  f32 x prod(dims), little-endian
//
// Values are stored as f32 regardless of the in-memory scalar, so the float
// pipeline round-trips bitwise.

struct NamedBlob {
    std::string name;
    std::vector<int> shape;
    std::vector<float> data;
};

namespace detail {

template <typename T>
void write_pod(std::ofstream& f, T v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& f) {
    T v{};
    f.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!f) throw data_error("checkpoint: truncated file");
    return v;
}

}  // namespace detail

inline void save_blobs(const std::string& path, const std::vector<NamedBlob>& blobs) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw data_error("checkpoint: cannot open for write: " + path);
    f.write("PFCK", 4);
    detail::write_pod<uint32_t>(f, 1);
    detail::write_pod<uint32_t>(f, static_cast<uint32_t>(blobs.size()));
    for (const auto& b : blobs) {
        detail::write_pod<uint32_t>(f, static_cast<uint32_t>(b.name.size()));
        f.write(b.name.data(), static_cast<std::streamsize>(b.name.size()));
        detail::write_pod<uint32_t>(f, static_cast<uint32_t>(b.shape.size()));
        for (int d : b.shape) detail::write_pod<uint64_t>(f, static_cast<uint64_t>(d));
        f.write(reinterpret_cast<const char*>(b.data.data()),
                static_cast<std::streamsize>(b.data.size() * sizeof(float)));
    }
    if (!f) throw data_error("checkpoint: write failed: " + path);
}

inline std::vector<NamedBlob> load_blobs(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error("checkpoint: cannot open: " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "PFCK", 4) != 0)
        throw data_error("checkpoint: bad magic in " + path);
    uint32_t version = detail::read_pod<uint32_t>(f);
    if (version != 1) throw data_error("checkpoint: unsupported version " + std::to_string(version));
    uint32_t count = detail::read_pod<uint32_t>(f);
    std::vector<NamedBlob> blobs(count);
    for (auto& b : blobs) {
        uint32_t name_len = detail::read_pod<uint32_t>(f);
        b.name.resize(name_len);
        f.read(b.name.data(), name_len);
        uint32_t rank = detail::read_pod<uint32_t>(f);
        long numel = 1;
        b.shape.resize(rank);
        for (auto& d : b.shape) {
            d = static_cast<int>(detail::read_pod<uint64_t>(f));
            numel *= d;
        }
        b.data.resize(numel);
        f.read(reinterpret_cast<char*>(b.data.data()),
               static_cast<std::streamsize>(b.data.size() * sizeof(float)));
        if (!f) throw data_error("checkpoint: truncated tensor payload in " + path);
    }
    return blobs;
}

template <typename S>
std::vector<NamedBlob> params_to_blobs(const ParamStore<S>& params) {
    std::vector<NamedBlob> blobs;
    blobs.reserve(params.size());
    for (const auto& e : params.entries()) {
        NamedBlob b;
        b.name = e.name;
        b.shape = e.tensor.shape();
        b.data.assign(e.tensor.data().begin(), e.tensor.data().end());
        blobs.push_back(std::move(b));
    }
    return blobs;
}

// Loads values into an already-constructed store; names and shapes must match.
template <typename S>
void blobs_to_params(const std::vector<NamedBlob>& blobs, ParamStore<S>& params) {
    for (auto& e : params.entries()) {
        const NamedBlob* found = nullptr;
        for (const auto& b : blobs)
            if (b.name == e.name) { found = &b; break; }
        if (!found) throw data_error("checkpoint: missing tensor '" + e.name + "'");
        if (found->shape != e.tensor.shape())
            throw data_error("checkpoint: shape mismatch for '" + e.name + "'");
        for (size_t i = 0; i < found->data.size(); ++i)
            e.tensor.data()[i] = static_cast<S>(found->data[i]);
    }
}

template <typename S>
void save_params(const std::string& path, const ParamStore<S>& params) {
    for (const auto& e : params.entries()) check_finite(e.tensor, "checkpoint '" + e.name + "'");
    save_blobs(path, params_to_blobs(params));
}

template <typename S>
void load_params(const std::string& path, ParamStore<S>& params) {
    blobs_to_params(load_blobs(path), params);
}

}  // namespace pf::num
