#pragma once

#include <string>

#include "pointforge/geo/point_cloud.hpp"

namespace pf::geo {

// ASCII PLY with properties x,y,z (float) and optionally red,green,blue
// (uchar, mapped to [0,1]). Positions are written with enough digits for an
// exact float round-trip.
void write_ply(const std::string& path, const PointCloud& cloud);
PointCloud read_ply(const std::string& path);

}  // namespace pf::geo
