#include "ccg/region_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "io_detail.hpp"

namespace ccg {

Point model_base(const SpaceKind& space) {
    if (space.curv == CurvatureSign::flat) return make_point(space, Vec(0.0, 0.0));
    return make_point(space, Vec(1.0, 0.0, 0.0));
}

Point point_from_polar(const SpaceKind& space, double azimuth, double distance) {
    Point base = model_base(space);
    if (distance == 0) return base;
    std::vector<Vec> frame = tangent_frame(base);
    Vec u = frame[0] * (distance * std::cos(azimuth)) + frame[1] * (distance * std::sin(azimuth));
    return exp_map(base, u);
}

std::pair<double, double> polar_of_point(const Point& p) {
    Point base = model_base(p.space);
    double d = distance(base, p);
    if (d < 1e-15) return {0.0, 0.0};
    Vec u = log_map(base, p);
    std::vector<Vec> frame = tangent_frame(base);
    return {std::atan2(dot(u, frame[1]), dot(u, frame[0])), d};
}

namespace io_detail {

SpaceKind parse_space(const std::string& name) {
    if (name == "S2") return SpaceKind::sphere(2);
    if (name == "E2") return SpaceKind::euclidean(2);
    if (name == "H2") return SpaceKind::hyperbolic(2);
    throw parse_error("unknown space tag: " + name + " (expected S2, E2 or H2)");
}

ordered_json point_json(const Point& p) {
    auto [azimuth, dist] = polar_of_point(p);
    ordered_json j;
    j["azimuth"] = azimuth;
    j["distance"] = dist;
    return j;
}

Point parse_point(const SpaceKind& space, const ordered_json& j) {
    return point_from_polar(space, j.at("azimuth").get<double>(),
                            j.at("distance").get<double>());
}

ordered_json geodesic_json(const Geodesic& g) {
    ordered_json j;
    switch (g.space.curv) {
        case CurvatureSign::hyperbolic:
            j["theta1"] = g.theta1;
            j["theta2"] = g.theta2;
            break;
        case CurvatureSign::spherical:
            j["pole"] = point_json(make_point(g.space, g.pole));
            break;
        case CurvatureSign::flat:
            j["normal_angle"] = std::atan2(g.normal[1], g.normal[0]);
            j["offset"] = g.offset;
            break;
    }
    return j;
}

Geodesic parse_geodesic(const SpaceKind& space, const ordered_json& j) {
    switch (space.curv) {
        case CurvatureSign::hyperbolic:
            return geodesic_from_ideal_angles(space, j.at("theta1").get<double>(),
                                              j.at("theta2").get<double>());
        case CurvatureSign::spherical: {
            Geodesic g;
            g.space = space;
            g.pole = parse_point(space, j.at("pole")).v;
            return g;
        }
        case CurvatureSign::flat: {
            double a = j.at("normal_angle").get<double>();
            Geodesic g;
            g.space = space;
            g.normal = Vec(std::cos(a), std::sin(a));
            g.offset = j.at("offset").get<double>();
            return g;
        }
    }
    throw parse_error("unreachable space kind");
}

ordered_json region_json_object(const Region& r) {
    ordered_json j;
    j["space"] = r.space.name();
    switch (r.kind) {
        case RegionKind::disk:
            j["kind"] = "disk";
            j["center"] = point_json(r.center);
            j["radius"] = r.radius;
            break;
        case RegionKind::paraball:
            j["kind"] = "paraball";
            j["ideal_angle"] = r.ideal_angle;
            j["axis_offset"] = r.horo_param;
            break;
        case RegionKind::padded: {
            j["kind"] = "padded";
            j["lambda"] = r.lambda;
            ordered_json core = ordered_json::array();
            for (const Geodesic& g : r.core) core.push_back(geodesic_json(g));
            j["core"] = core;
            break;
        }
        case RegionKind::halfplane:
            j["kind"] = "halfplane";
            j["line"] = geodesic_json(r.boundary_line);
            break;
    }
    return j;
}

Region parse_region_object(const ordered_json& j) {
    SpaceKind space = parse_space(j.at("space").get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "disk")
        return make_disk(parse_point(space, j.at("center")), j.at("radius").get<double>());
    if (kind == "paraball")
        return make_paraball(space, j.at("ideal_angle").get<double>(),
                             j.at("axis_offset").get<double>());
    if (kind == "padded") {
        std::vector<Geodesic> core;
        for (const ordered_json& gj : j.at("core")) core.push_back(parse_geodesic(space, gj));
        return make_padded(core, j.at("lambda").get<double>());
    }
    if (kind == "halfplane") return make_halfplane(parse_geodesic(space, j.at("line")));
    throw parse_error("unknown region kind: " + kind);
}

ordered_json cycle_json_object(const Cycle& c) {
    ordered_json j;
    switch (c.kind) {
        case CycleKind::circle:
            j["cycle"] = "circle";
            j["center"] = point_json(c.center);
            j["radius"] = c.radius;
            break;
        case CycleKind::paracycle:
            j["cycle"] = "paracycle";
            j["ideal_angle"] = c.ideal_angle;
            j["axis_offset"] = c.horo_param;
            break;
        case CycleKind::hypercycle:
            j["cycle"] = "hypercycle";
            j["base"] = geodesic_json(c.base);
            j["offset"] = c.offset;
            j["side"] = c.side;
            break;
        case CycleKind::geodesic:
            j["cycle"] = "geodesic";
            j["base"] = geodesic_json(c.base);
            break;
    }
    return j;
}

Cycle parse_cycle_object(const SpaceKind& space, const ordered_json& j) {
    std::string kind = j.at("cycle").get<std::string>();
    if (kind == "circle")
        return make_circle(parse_point(space, j.at("center")), j.at("radius").get<double>());
    if (kind == "paracycle")
        return make_paracycle(space, j.at("ideal_angle").get<double>(),
                              j.at("axis_offset").get<double>());
    if (kind == "hypercycle")
        return make_hypercycle(parse_geodesic(space, j.at("base")),
                               j.at("offset").get<double>(), j.at("side").get<int>());
    if (kind == "geodesic") return make_geodesic_cycle(parse_geodesic(space, j.at("base")));
    throw parse_error("unknown cycle kind: " + kind);
}

}  // namespace io_detail

Region parse_region(const std::string& text) {
    try {
        return io_detail::parse_region_object(io_detail::ordered_json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed region file: ") + e.what());
    }
}

Region load_region(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_failure_error("cannot open region file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_region(buf.str());
}

std::string region_json(const Region& r) {
    return io_detail::region_json_object(r).dump(2) + "\n";
}

}  // namespace ccg
