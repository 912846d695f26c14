#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace pf::num {

// Counter-based splittable RNG. Every stochastic op in the project draws from
// a stream keyed by (root seed, stream name, optional index), so any draw is
// reproducible without threading a generator through call sites.
namespace detail {

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace detail

class RngStream {
  public:
    explicit RngStream(uint64_t key) : key_(key) {}

    uint64_t next_u64() { return detail::mix64(key_ + 0x9e3779b97f4a7c15ull * (++counter_)); }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo,hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (cosine branch only; platform independent)
    double normal() {
        double u1 = 1.0 - uniform();  // (0,1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // integer in [0,n)
    uint64_t below(uint64_t n) { return next_u64() % n; }

  private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

class Rng {
  public:
    explicit Rng(uint64_t seed) : seed_(seed) {}

    RngStream stream(std::string_view name) const {
        return RngStream(detail::mix64(seed_ ^ detail::fnv1a(name)));
    }
    RngStream stream(std::string_view name, uint64_t index) const {
        return RngStream(detail::mix64(detail::mix64(seed_ ^ detail::fnv1a(name)) + index));
    }
    uint64_t seed() const { return seed_; }

  private:
    uint64_t seed_;
};

}  // namespace pf::num
