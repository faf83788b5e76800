// Region files: a small JSON schema with explicit space tags ("S2", "E2",
// "H2"), angles in radians and lengths in units of the |curvature| = 1
// space. Points are encoded as polar coordinates about the model base point.
#pragma once

#include <string>
#include <utility>

#include "ccg/regions.hpp"

namespace ccg {

// Base point of the polar encoding: chart origin of the curved models,
// coordinate origin of the flat plane.
Point model_base(const SpaceKind& space);

Point point_from_polar(const SpaceKind& space, double azimuth, double distance);
std::pair<double, double> polar_of_point(const Point& p);  // {azimuth, distance}

Region parse_region(const std::string& text);  // throws parse_error
Region load_region(const std::string& path);   // adds io_failure_error
std::string region_json(const Region& r);

}  // namespace ccg
