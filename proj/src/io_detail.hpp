// Internal JSON vocabulary shared by the region/scene file formats. Not part
// of the public headers so the vendored json stays out of the library API.
#pragma once

#include <json.hpp>

#include "ccg/cycles.hpp"
#include "ccg/region_io.hpp"

namespace ccg::io_detail {

using ordered_json = nlohmann::ordered_json;

SpaceKind parse_space(const std::string& name);

ordered_json point_json(const Point& p);
Point parse_point(const SpaceKind& space, const ordered_json& j);

ordered_json geodesic_json(const Geodesic& g);
Geodesic parse_geodesic(const SpaceKind& space, const ordered_json& j);

ordered_json region_json_object(const Region& r);
Region parse_region_object(const ordered_json& j);

ordered_json cycle_json_object(const Cycle& c);
Cycle parse_cycle_object(const SpaceKind& space, const ordered_json& j);

}  // namespace ccg::io_detail
