// Scenes on the conformal model disk rendered to SVG: the unit model circle
// at radius 500 (y axis up, 1e-3 path precision), cycles as Euclidean
// circles/lines from their chart footprints, arc polygons as filled paths.
// Output is byte-deterministic for identical input.
#pragma once

#include <string>
#include <vector>

#include "ccg/regions.hpp"

namespace ccg {

struct SceneElement {
    enum class Kind { region, cycle, point, polygon };
    Kind kind = Kind::region;
    Region region;
    Cycle cycle;
    Point point;
    ArcPolygon polygon;
    std::string style;  // css class: a, b, lens, edge, mark, center
};

struct Scene {
    SpaceKind space;
    std::vector<SceneElement> elements;
};

Scene make_scene(const SpaceKind& space);
void add_region(Scene& s, const Region& r, const std::string& style = "");
void add_cycle(Scene& s, const Cycle& c, const std::string& style = "");
void add_point(Scene& s, const Point& p, const std::string& style = "");
void add_polygon(Scene& s, const ArcPolygon& p, const std::string& style = "");

// Scene files: {"space": "H2", "elements": [{"type": "region"|"cycle"|
// "point", "style": ..., ...body...}]}. Arc polygons are in-memory only.
Scene parse_scene(const std::string& text);  // throws parse_error

std::string render_svg(const Scene& scene);

}  // namespace ccg
