#pragma once

#include <string>
#include <vector>

#include "pointforge/degrade/degrade.hpp"

namespace pf::degrade {

// Dataset directory layout, one subdirectory per sample:
//   <root>/scene_0000/{target.ply, input.ply, image.ppm, camera.json, spec.json}

void write_ppm(const std::string& path, const geo::Image& img);
geo::Image read_ppm(const std::string& path);

void write_camera_json(const std::string& path, const geo::Camera& cam);
geo::Camera read_camera_json(const std::string& path);

void write_spec_json(const std::string& path, const DegradationSpec& spec);
DegradationSpec read_spec_json(const std::string& path);

void write_pair_dir(const std::string& dir, const SamplePair& pair);
SamplePair read_pair_dir(const std::string& dir);

// sorted scene_* subdirectories of a dataset root
std::vector<std::string> list_pair_dirs(const std::string& root);

uint64_t file_hash(const std::string& path);
uint64_t image_hash(const geo::Image& img);

}  // namespace pf::degrade
