#include "pointforge/geo/ply.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace pf::geo {

void write_ply(const std::string& path, const PointCloud& cloud) {
    bool colors = cloud.channels == 3;
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw data_error("ply: cannot open for write: " + path);
    std::fprintf(f, "ply\nformat ascii 1.0\nelement vertex %d\n", cloud.size());
    std::fprintf(f, "property float x\nproperty float y\nproperty float z\n");
    if (colors)
        std::fprintf(f, "property uchar red\nproperty uchar green\nproperty uchar blue\n");
    std::fprintf(f, "end_header\n");
    for (int i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.positions[i];
        std::fprintf(f, "%.9g %.9g %.9g", p.x, p.y, p.z);
        if (colors) {
            const float* c = cloud.feature_row(i);
            for (int j = 0; j < 3; ++j) {
                int v = static_cast<int>(std::lround(c[j] * 255.0f));
                std::fprintf(f, " %d", std::min(255, std::max(0, v)));
            }
        }
        std::fputc('\n', f);
    }
    if (std::fclose(f) != 0) throw data_error("ply: write failed: " + path);
}

PointCloud read_ply(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("ply: cannot open: " + path);
    std::string line;
    if (!std::getline(f, line) || line != "ply") throw data_error("ply: bad header in " + path);

    int count = -1;
    std::vector<std::string> props;
    bool ascii = false;
    while (std::getline(f, line)) {
        std::istringstream is(line);
        std::string tok;
        is >> tok;
        if (tok == "format") {
            std::string fmt;
            is >> fmt;
            ascii = fmt == "ascii";
        } else if (tok == "element") {
            std::string what;
            is >> what >> count;
            if (what != "vertex") throw data_error("ply: unsupported element '" + what + "'");
        } else if (tok == "property") {
            std::string type, name;
            is >> type >> name;
            props.push_back(name);
        } else if (tok == "comment") {
            continue;
        } else if (tok == "end_header") {
            break;
        }
    }
    if (!ascii) throw data_error("ply: only ascii format supported: " + path);
    if (count < 1) throw data_error("ply: missing vertex element in " + path);

    bool colors;
    if (props == std::vector<std::string>{"x", "y", "z"})
        colors = false;
    else if (props == std::vector<std::string>{"x", "y", "z", "red", "green", "blue"})
        colors = true;
    else
        throw data_error("ply: unsupported property layout in " + path);

    PointCloud cloud;
    cloud.positions.reserve(count);
    if (colors) {
        cloud.channels = 3;
        cloud.features.reserve(static_cast<size_t>(count) * 3);
    }
    for (int i = 0; i < count; ++i) {
        if (!std::getline(f, line)) throw data_error("ply: truncated vertex list in " + path);
        std::istringstream is(line);
        Vec3 p;
        is >> p.x >> p.y >> p.z;
        cloud.positions.push_back(p);
        if (colors) {
            int r, g, b;
            is >> r >> g >> b;
            cloud.features.push_back(r / 255.0f);
            cloud.features.push_back(g / 255.0f);
            cloud.features.push_back(b / 255.0f);
        }
        if (is.fail()) throw data_error("ply: malformed vertex row in " + path);
    }
    cloud.validate();
    return cloud;
}

}  // namespace pf::geo
