#pragma once

#include <vector>

#include "pointforge/common.hpp"

namespace pf::geo {

// H x W x 3 RGB raster, values in [0,1], row-major from the top-left
struct Image {
    int width = 0, height = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, float fill = 0.f) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, fill) {}

    float* pixel(int x, int y) { return data.data() + (static_cast<size_t>(y) * width + x) * 3; }
    const float* pixel(int x, int y) const {
        return data.data() + (static_cast<size_t>(y) * width + x) * 3;
    }
};

}  // namespace pf::geo
