#include "ccg/svg.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "io_detail.hpp"

namespace ccg {

Scene make_scene(const SpaceKind& space) {
    Scene s;
    s.space = space;
    return s;
}

namespace {

void check_space(const Scene& s, const SpaceKind& sp) {
    if (!(s.space == sp)) throw space_mismatch_error("scene element space differs from scene");
}

}  // namespace

void add_region(Scene& s, const Region& r, const std::string& style) {
    check_space(s, r.space);
    SceneElement e;
    e.kind = SceneElement::Kind::region;
    e.region = r;
    e.style = style;
    s.elements.push_back(e);
}

void add_cycle(Scene& s, const Cycle& c, const std::string& style) {
    check_space(s, c.space);
    SceneElement e;
    e.kind = SceneElement::Kind::cycle;
    e.cycle = c;
    e.style = style;
    s.elements.push_back(e);
}

void add_point(Scene& s, const Point& p, const std::string& style) {
    check_space(s, p.space);
    SceneElement e;
    e.kind = SceneElement::Kind::point;
    e.point = p;
    e.style = style;
    s.elements.push_back(e);
}

void add_polygon(Scene& s, const ArcPolygon& p, const std::string& style) {
    if (!p.arcs.empty()) check_space(s, p.arcs[0].cycle.space);
    SceneElement e;
    e.kind = SceneElement::Kind::polygon;
    e.polygon = p;
    e.style = style;
    s.elements.push_back(e);
}

Scene parse_scene(const std::string& text) {
    using io_detail::ordered_json;
    try {
        ordered_json j = ordered_json::parse(text);
        Scene s = make_scene(io_detail::parse_space(j.at("space").get<std::string>()));
        if (j.contains("elements"))
            for (const ordered_json& ej : j.at("elements")) {
                std::string type = ej.at("type").get<std::string>();
                std::string style = ej.value("style", std::string());
                if (type == "region")
                    add_region(s, io_detail::parse_region_object(ej), style);
                else if (type == "cycle")
                    add_cycle(s, io_detail::parse_cycle_object(s.space, ej), style);
                else if (type == "point")
                    add_point(s, io_detail::parse_point(s.space, ej.at("position")), style);
                else
                    throw parse_error("unknown scene element type: " + type);
            }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed scene file: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

constexpr double scale = 500;       // chart unit -> svg user units
constexpr double clip_radius = 1.04;  // chart units; lines are clipped here

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3f", v);
    if (std::strcmp(b, "-0.000") == 0) return "0.000";
    return b;
}

// svg user coordinates: x right, y DOWN, so chart y is negated
double sx(double chart_x) { return scale * chart_x; }
double sy(double chart_y) { return -scale * chart_y; }

void emit_circle(std::ostringstream& out, const std::string& cls, double cx, double cy,
                 double r, const char* extra = "") {
    out << "<circle class=\"" << cls << "\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
        << "\" r=\"" << fmt(r) << "\"" << extra << "/>\n";
}

void emit_segment(std::ostringstream& out, const std::string& cls, double x1, double y1,
                  double x2, double y2) {
    out << "<line class=\"" << cls << "\" x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1)
        << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2) << "\"/>\n";
}

// footprint of one cycle as a standalone shape
void emit_footprint(std::ostringstream& out, const std::string& cls, const Footprint& f,
                    bool no_fill) {
    const char* extra = no_fill ? " style=\"fill:none\"" : "";
    if (!f.is_line) {
        emit_circle(out, cls, sx(f.center[0]), sy(f.center[1]), scale * f.radius, extra);
        return;
    }
    // clip the chart line to the clip circle
    double pd = f.point[0] * f.dir[0] + f.point[1] * f.dir[1];
    double pp = f.point[0] * f.point[0] + f.point[1] * f.point[1];
    double disc = pd * pd - (pp - clip_radius * clip_radius);
    if (disc <= 0) return;  // line misses the canvas
    double t1 = -pd - std::sqrt(disc), t2 = -pd + std::sqrt(disc);
    emit_segment(out, cls, sx(f.point[0] + t1 * f.dir[0]), sy(f.point[1] + t1 * f.dir[1]),
                 sx(f.point[0] + t2 * f.dir[0]), sy(f.point[1] + t2 * f.dir[1]));
}

double wrap_tau(double t) {
    while (t < 0) t += 2 * pi;
    while (t >= 2 * pi) t -= 2 * pi;
    return t;
}

// path fragment of one polygon arc from the current position to its end
void append_arc(std::ostringstream& out, ChartKind chart, const PolygonArc& arc,
                const Vec& end_chart) {
    Footprint f = chart_footprint(arc.cycle);
    double ex = sx(end_chart[0]), ey = sy(end_chart[1]);
    if (f.is_line) {
        out << "L " << fmt(ex) << " " << fmt(ey) << " ";
        return;
    }
    Vec begin_chart = to_chart(chart, arc_point(arc, 0.0));
    Vec mid_chart = to_chart(chart, arc_point(arc, 0.5));
    double cx = sx(f.center[0]), cy = sy(f.center[1]);
    double a0 = std::atan2(sy(begin_chart[1]) - cy, sx(begin_chart[0]) - cx);
    double a1 = std::atan2(ey - cy, ex - cx);
    double am = std::atan2(sy(mid_chart[1]) - cy, sx(mid_chart[0]) - cx);
    double d1 = wrap_tau(a1 - a0), dm = wrap_tau(am - a0);
    int sweep, large;
    if (dm <= d1) {
        sweep = 1;
        large = d1 > pi ? 1 : 0;
    } else {
        sweep = 0;
        large = (2 * pi - d1) > pi ? 1 : 0;
    }
    double r = scale * f.radius;
    out << "A " << fmt(r) << " " << fmt(r) << " 0 " << large << " " << sweep << " "
        << fmt(ex) << " " << fmt(ey) << " ";
}

void emit_polygon(std::ostringstream& out, const std::string& cls, ChartKind chart,
                  const ArcPolygon& poly) {
    if (poly.arcs.empty()) return;
    std::ostringstream d;
    Vec start = to_chart(chart, poly.vertices[poly.arcs[0].v_begin]);
    d << "M " << fmt(sx(start[0])) << " " << fmt(sy(start[1])) << " ";
    for (const PolygonArc& arc : poly.arcs) {
        Vec end = to_chart(chart, poly.vertices[arc.v_end]);
        append_arc(d, chart, arc, end);
    }
    d << "Z";
    out << "<path class=\"" << cls << "\" d=\"" << d.str() << "\"/>\n";
}

void emit_point(std::ostringstream& out, const std::string& cls, ChartKind chart,
                const Point& p) {
    Vec xy = to_chart(chart, p);
    double x = sx(xy[0]), y = sy(xy[1]);
    if (cls == "center") {  // symmetry centers are marked with a cross
        emit_segment(out, cls, x - 9, y, x + 9, y);
        emit_segment(out, cls, x, y - 9, x, y + 9);
        return;
    }
    emit_circle(out, cls, x, y, 5);
}

const char* style_block =
    "<style>\n"
    ".model { fill: none; stroke: #999; stroke-width: 2; }\n"
    ".a { fill: #2b6cb0; fill-opacity: 0.12; stroke: #2b6cb0; stroke-width: 2; }\n"
    ".b { fill: #c05621; fill-opacity: 0.12; stroke: #c05621; stroke-width: 2; }\n"
    ".lens { fill: #6b46c1; fill-opacity: 0.35; stroke: #6b46c1; stroke-width: 2.5; }\n"
    ".edge { fill: none; stroke: #4a5568; stroke-width: 2; }\n"
    ".mark { fill: #1a202c; stroke: none; }\n"
    ".center { fill: none; stroke: #1a202c; stroke-width: 2.5; }\n"
    "</style>\n";

}  // namespace

std::string render_svg(const Scene& scene) {
    ChartKind chart = conformal_chart(scene.space);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"-520 -520 1040 1040\">\n";
    out << style_block;
    out << "<circle class=\"model\" cx=\"0\" cy=\"0\" r=\"500\"/>\n";
    for (const SceneElement& e : scene.elements) {
        switch (e.kind) {
            case SceneElement::Kind::region: {
                std::string cls = e.style.empty() ? "a" : e.style;
                bool fill = e.region.kind == RegionKind::disk ||
                            e.region.kind == RegionKind::paraball;
                for (const Cycle& c : boundary_components(e.region))
                    emit_footprint(out, cls, chart_footprint(c), !fill);
                break;
            }
            case SceneElement::Kind::cycle:
                emit_footprint(out, e.style.empty() ? "edge" : e.style,
                               chart_footprint(e.cycle), false);
                break;
            case SceneElement::Kind::point:
                emit_point(out, e.style.empty() ? "mark" : e.style, chart, e.point);
                break;
            case SceneElement::Kind::polygon:
                emit_polygon(out, e.style.empty() ? "lens" : e.style, chart, e.polygon);
                break;
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ccg
