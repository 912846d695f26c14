#include "pointforge/degrade/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pointforge/geo/ply.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pf::degrade {

void write_ppm(const std::string& path, const geo::Image& img) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw data_error("ppm: cannot open for write: " + path);
    std::fprintf(f, "P6\n%d %d\n255\n", img.width, img.height);
    std::vector<unsigned char> row(static_cast<size_t>(img.width) * 3);
    for (int y = 0; y < img.height; ++y) {
        const float* src = img.pixel(0, y);
        for (int i = 0; i < img.width * 3; ++i) {
            int v = static_cast<int>(std::lround(src[i] * 255.0f));
            row[i] = static_cast<unsigned char>(std::min(255, std::max(0, v)));
        }
        std::fwrite(row.data(), 1, row.size(), f);
    }
    if (std::fclose(f) != 0) throw data_error("ppm: write failed: " + path);
}

geo::Image read_ppm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error("ppm: cannot open: " + path);
    std::string magic;
    int w, h, maxval;
    f >> magic >> w >> h >> maxval;
    if (magic != "P6" || maxval != 255) throw data_error("ppm: expected binary P6/255: " + path);
    f.get();  // single whitespace after header
    geo::Image img(w, h);
    std::vector<unsigned char> raw(static_cast<size_t>(w) * h * 3);
    f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!f) throw data_error("ppm: truncated payload: " + path);
    for (size_t i = 0; i < raw.size(); ++i) img.data[i] = raw[i] / 255.0f;
    return img;
}

void write_camera_json(const std::string& path, const geo::Camera& cam) {
    json j;
    j["fx"] = cam.fx;
    j["fy"] = cam.fy;
    j["cx"] = cam.cx;
    j["cy"] = cam.cy;
    j["width"] = cam.width;
    j["height"] = cam.height;
    j["rotation"] = cam.rotation;
    j["translation"] = {cam.translation.x, cam.translation.y, cam.translation.z};
    std::ofstream f(path);
    if (!f) throw data_error("camera.json: cannot open for write: " + path);
    f << j.dump(2) << "\n";
}

geo::Camera read_camera_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("camera.json: cannot open: " + path);
    json j = json::parse(f);
    geo::Camera cam;
    cam.fx = j.at("fx");
    cam.fy = j.at("fy");
    cam.cx = j.at("cx");
    cam.cy = j.at("cy");
    cam.width = j.at("width");
    cam.height = j.at("height");
    auto rot = j.at("rotation");
    for (int i = 0; i < 9; ++i) cam.rotation[i] = rot.at(i);
    cam.translation = {j.at("translation").at(0), j.at("translation").at(1),
                       j.at("translation").at(2)};
    cam.validate();
    return cam;
}

void write_spec_json(const std::string& path, const DegradationSpec& spec) {
    json j;
    j["remove_fraction"] = spec.remove_fraction;
    j["patch_count"] = spec.patch_count;
    j["keep_ratio"] = spec.keep_ratio;
    j["noise_level"] = spec.noise_level;
    j["strip_color"] = spec.strip_color;
    j["seed"] = spec.seed;
    std::ofstream f(path);
    if (!f) throw data_error("spec.json: cannot open for write: " + path);
    f << j.dump(2) << "\n";
}

DegradationSpec read_spec_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("spec.json: cannot open: " + path);
    json j = json::parse(f);
    DegradationSpec spec;
    spec.remove_fraction = j.at("remove_fraction");
    spec.patch_count = j.at("patch_count");
    spec.keep_ratio = j.at("keep_ratio");
    spec.noise_level = j.at("noise_level");
    spec.strip_color = j.at("strip_color");
    spec.seed = j.at("seed");
    return spec;
}

void write_pair_dir(const std::string& dir, const SamplePair& pair) {
    fs::create_directories(dir);
    geo::write_ply(dir + "/target.ply", pair.target_cloud);
    geo::write_ply(dir + "/input.ply", pair.input_cloud);
    write_ppm(dir + "/image.ppm", pair.input_image);
    write_camera_json(dir + "/camera.json", pair.camera);
    write_spec_json(dir + "/spec.json", pair.spec);
}

SamplePair read_pair_dir(const std::string& dir) {
    SamplePair pair;
    pair.name = fs::path(dir).filename().string();
    pair.target_cloud = geo::read_ply(dir + "/target.ply");
    pair.input_cloud = geo::read_ply(dir + "/input.ply");
    pair.input_image = read_ppm(dir + "/image.ppm");
    pair.camera = read_camera_json(dir + "/camera.json");
    pair.spec = read_spec_json(dir + "/spec.json");
    return pair;
}

std::vector<std::string> list_pair_dirs(const std::string& root) {
    if (!fs::is_directory(root)) throw data_error("dataset: not a directory: " + root);
    std::vector<std::string> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        std::string name = entry.path().filename().string();
        if (name.rfind("scene_", 0) == 0) dirs.push_back(entry.path().string());
    }
    std::sort(dirs.begin(), dirs.end());
    return dirs;
}

uint64_t file_hash(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error("hash: cannot open: " + path);
    uint64_t h = 0xcbf29ce484222325ull;
    char buf[4096];
    while (f.read(buf, sizeof(buf)) || f.gcount() > 0) {
        for (std::streamsize i = 0; i < f.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
        if (!f) break;
    }
    return h;
}

uint64_t image_hash(const geo::Image& img) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const void* bytes, size_t n) {
        const auto* b = static_cast<const unsigned char*>(bytes);
        for (size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ull;
        }
    };
    feed(&img.width, 4);
    feed(&img.height, 4);
    feed(img.data.data(), img.data.size() * 4);
    return h;
}

}  // namespace pf::degrade
