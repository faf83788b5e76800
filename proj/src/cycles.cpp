#include "ccg/cycles.hpp"

#include <algorithm>
#include <cassert>

namespace ccg {

namespace {

Vec null_direction(double theta) { return Vec(1.0, std::cos(theta), std::sin(theta)); }

Mat rotation_xy(double theta) {
    Mat m = Mat::identity(3);
    m.at(1, 1) = std::cos(theta);
    m.at(1, 2) = -std::sin(theta);
    m.at(2, 1) = std::sin(theta);
    m.at(2, 2) = std::cos(theta);
    return m;
}

Mat boost_x(double t) {
    Mat m = Mat::identity(3);
    m.at(0, 0) = std::cosh(t);
    m.at(0, 1) = std::sinh(t);
    m.at(1, 0) = std::sinh(t);
    m.at(1, 1) = std::cosh(t);
    return m;
}

// Canonical paracycle through the apex of the hyperboloid with ideal point at
// boundary angle 0; exact unit-speed parametrization.
Vec canonical_horocycle_point(double s) { return Vec(1 + s * s / 2, s * s / 2, s); }

}  // namespace

double metric_sine(const SpaceKind& space, double r) {
    switch (space.curv) {
        case CurvatureSign::spherical: return std::sin(r);
        case CurvatureSign::flat: return r;
        case CurvatureSign::hyperbolic: return std::sinh(r);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Constructors

Cycle make_circle(const Point& center, double radius) {
    if (radius <= 0) throw geometry_error("circle radius must be positive");
    if (center.space.curv == CurvatureSign::spherical && radius > pi / 2 + 1e-12)
        throw geometry_error("spherical circle radius must stay within (0, pi/2]");
    Cycle c;
    c.space = center.space;
    c.kind = CycleKind::circle;
    c.center = center;
    c.radius = radius;
    return c;
}

Cycle make_paracycle(const SpaceKind& space, double ideal_angle, double horo_param) {
    if (space.curv != CurvatureSign::hyperbolic)
        throw geometry_error("paracycles exist in hyperbolic space only");
    Cycle c;
    c.space = space;
    c.kind = CycleKind::paracycle;
    c.ideal_angle = wrap_angle(ideal_angle);
    c.horo_param = horo_param;
    return c;
}

Cycle make_hypercycle(const Geodesic& base, double offset, int side) {
    if (base.space.curv != CurvatureSign::hyperbolic)
        throw geometry_error("hypercycles exist in hyperbolic space only");
    if (offset <= 0) throw geometry_error("hypercycle offset must be positive");
    if (side != 1 && side != -1) throw geometry_error("hypercycle side must be +1 or -1");
    Cycle c;
    c.space = base.space;
    c.kind = CycleKind::hypercycle;
    c.base = base;
    c.offset = offset;
    c.side = side;
    return c;
}

Cycle make_geodesic_cycle(const Geodesic& line) {
    Cycle c;
    c.space = line.space;
    c.kind = CycleKind::geodesic;
    c.base = line;
    return c;
}

Point paracycle_apex(const Cycle& c) {
    assert(c.kind == CycleKind::paracycle);
    double t = c.horo_param, th = c.ideal_angle;
    return Point{c.space,
                 Vec(std::cosh(t), std::sinh(t) * std::cos(th), std::sinh(t) * std::sin(th))};
}

// ---------------------------------------------------------------------------
// Curvature

double curvature(const Cycle& c) {
    switch (c.space.curv) {
        case CurvatureSign::spherical:
            return c.kind == CycleKind::circle ? 1.0 / std::tan(c.radius) : 0.0;
        case CurvatureSign::flat:
            return c.kind == CycleKind::circle ? 1.0 / c.radius : 0.0;
        case CurvatureSign::hyperbolic:
            switch (c.kind) {
                case CycleKind::circle: return 1.0 / std::tanh(c.radius);
                case CycleKind::paracycle: return 1.0;
                case CycleKind::hypercycle: return std::tanh(c.offset);
                case CycleKind::geodesic: return 0.0;
            }
    }
    return 0.0;
}

double finite_difference_curvature(const Cycle& c, double step) {
    if (!(step > 1e-6 && step < 1e-2))
        throw step_out_of_range_error("finite-difference step must lie in (1e-6, 1e-2)");
    Point a = cycle_point(c, -step_to_parameter(c, step));
    Point b = cycle_point(c, 0.0);
    Point d = cycle_point(c, step_to_parameter(c, step));
    double turn = pi - angle_at(b, a, d);
    return turn / step;
}

// ---------------------------------------------------------------------------
// Ideal points

std::vector<double> ideal_points(const Cycle& c) {
    if (c.space.curv != CurvatureSign::hyperbolic)
        throw geometry_error("ideal points exist for hyperbolic cycles only");
    switch (c.kind) {
        case CycleKind::circle: return {};
        case CycleKind::paracycle: return {c.ideal_angle};
        case CycleKind::hypercycle:
        case CycleKind::geodesic: return {c.base.theta1, c.base.theta2};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Parametrization

// Parameter increment corresponding to arclength `s` from parameter 0.
double step_to_parameter(const Cycle& c, double s) {
    switch (c.kind) {
        case CycleKind::circle: return s / metric_sine(c.space, c.radius);
        case CycleKind::paracycle: return s;
        case CycleKind::hypercycle: return s / std::cosh(c.offset);
        case CycleKind::geodesic: return s;
    }
    return s;
}

double cycle_period(const Cycle& c) {
    if (c.kind == CycleKind::circle) return 2 * pi;
    if (c.kind == CycleKind::geodesic && c.space.curv == CurvatureSign::spherical) return 2 * pi;
    return 0.0;
}

Point cycle_point(const Cycle& c, double s) {
    switch (c.kind) {
        case CycleKind::circle: {
            std::vector<Vec> e = tangent_frame(c.center);
            Vec dir = e[0] * std::cos(s) + e[1] * std::sin(s);
            return exp_map(c.center, dir * c.radius);
        }
        case CycleKind::paracycle: {
            Mat m = rotation_xy(c.ideal_angle) * boost_x(c.horo_param);
            return renormalized(Point{c.space, m * canonical_horocycle_point(s)});
        }
        case CycleKind::hypercycle: {
            Point g = geodesic_at(c.base, s);
            Vec w = hyperbolic_pole(c.base);
            double l = c.offset * c.side;
            return renormalized(
                Point{c.space, g.v * std::cosh(l) + w * std::sinh(l)});
        }
        case CycleKind::geodesic: return geodesic_at(c.base, s);
    }
    throw geometry_error("unreachable");
}

double cycle_parameter_of(const Cycle& c, const Point& p) {
    switch (c.kind) {
        case CycleKind::circle: {
            std::vector<Vec> e = tangent_frame(c.center);
            Vec u = log_map(c.center, p);
            return wrap_angle(
                std::atan2(bilinear(c.space, u, e[1]), bilinear(c.space, u, e[0])));
        }
        case CycleKind::paracycle: {
            Mat m = boost_x(-c.horo_param) * rotation_xy(-c.ideal_angle);
            Vec y = m * p.v;
            return y[2];
        }
        case CycleKind::hypercycle:
            return geodesic_parameter_of(c.base, foot_of_perpendicular(c.base, p));
        case CycleKind::geodesic: return geodesic_parameter_of(c.base, p);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Distances

double signed_distance_to_cycle(const Cycle& c, const Point& p) {
    switch (c.kind) {
        case CycleKind::circle: return distance(c.center, p) - c.radius;
        case CycleKind::paracycle: {
            Vec l = null_direction(c.ideal_angle);
            double b = -bilinear(c.space, p.v, l);
            return std::log(b) + c.horo_param;
        }
        case CycleKind::hypercycle: {
            double d = std::asinh(bilinear(c.space, p.v, hyperbolic_pole(c.base)));
            return c.side * d - c.offset;
        }
        case CycleKind::geodesic: return signed_geodesic_distance(c.base, p);
    }
    return 0.0;
}

double distance_to_cycle(const Cycle& c, const Point& p) {
    return std::fabs(signed_distance_to_cycle(c, p));
}

// ---------------------------------------------------------------------------
// Footprints

namespace {

// Circle (or line) through three planar points.
Footprint circle_through(const Vec& a, const Vec& b, const Vec& c) {
    Vec ab = b - a, ac = c - a;
    double det = 2.0 * (ab[0] * ac[1] - ab[1] * ac[0]);
    double scale = std::max({norm(ab), norm(ac), 1e-30});
    if (std::fabs(det) < 1e-11 * scale * scale * scale) {
        Footprint f;
        f.is_line = true;
        f.point = a;
        f.dir = normalized(norm(ab) > norm(ac) ? ab : ac);
        return f;
    }
    double s1 = dot(ab, ab), s2 = dot(ac, ac);
    double ux = (ac[1] * s1 - ab[1] * s2) / det;
    double uy = (ab[0] * s2 - ac[0] * s1) / det;
    Footprint f;
    f.center = Vec(a[0] + ux, a[1] + uy);
    f.radius = std::sqrt(ux * ux + uy * uy);
    return f;
}

}  // namespace

Footprint chart_footprint(const Cycle& c) {
    ChartKind chart = conformal_chart(c.space);
    if (c.space.curv == CurvatureSign::flat) {
        Footprint f;
        if (c.kind == CycleKind::circle) {
            f.center = c.center.v;
            f.radius = c.radius;
        } else {
            f.is_line = true;
            f.point = c.base.normal * c.base.offset;
            f.dir = Vec(c.base.normal[1], -c.base.normal[0]);
        }
        return f;
    }
    // Hyperbolic cycles that pass through ideal points get anchored there so
    // that the footprint hits the boundary circle exactly.
    if (c.space.curv == CurvatureSign::hyperbolic &&
        (c.kind == CycleKind::hypercycle || c.kind == CycleKind::geodesic)) {
        Vec e1(std::cos(c.base.theta1), std::sin(c.base.theta1));
        Vec e2(std::cos(c.base.theta2), std::sin(c.base.theta2));
        Vec mid = to_chart(chart, cycle_point(c, 0.0));
        return circle_through(e1, mid, e2);
    }
    if (c.space.curv == CurvatureSign::hyperbolic && c.kind == CycleKind::paracycle) {
        // internally tangent circle: touches the boundary at the ideal angle,
        // crosses the axis at the chart image of the apex
        Vec e(std::cos(c.ideal_angle), std::sin(c.ideal_angle));
        double s = std::tanh(c.horo_param / 2);  // chart position of the apex
        Footprint f;
        f.radius = (1 - s) / 2;
        f.center = e * (s + f.radius);
        return f;
    }
    Vec p0 = to_chart(chart, cycle_point(c, 0.0));
    Vec p1 = to_chart(chart, cycle_point(c, 2 * pi / 3));
    Vec p2 = to_chart(chart, cycle_point(c, 4 * pi / 3));
    if (c.kind != CycleKind::circle) {
        p1 = to_chart(chart, cycle_point(c, -1.0));
        p2 = to_chart(chart, cycle_point(c, 1.0));
    }
    return circle_through(p0, p1, p2);
}

Footprint conformal_footprint(const Cycle& c) {
    if (c.space.curv != CurvatureSign::hyperbolic)
        throw geometry_error("conformal footprints are defined for hyperbolic cycles here");
    return chart_footprint(c);
}

// ---------------------------------------------------------------------------
// Intersection

namespace {

struct ChartHit {
    std::vector<Vec> points;
    bool tangent = false;
};

ChartHit intersect_footprints(const Footprint& a, const Footprint& b, const Tolerances& tol) {
    ChartHit hit;
    auto cross2 = [](const Vec& x, const Vec& y) { return x[0] * y[1] - x[1] * y[0]; };
    auto line_line = [&](const Footprint& u, const Footprint& v) {
        double d = cross2(u.dir, v.dir);
        if (std::fabs(d) < 1e-14) return;  // parallel (coincidence handled earlier)
        double s = cross2(v.point - u.point, v.dir) / d;
        hit.points.push_back(u.point + u.dir * s);
    };
    auto circle_line = [&](const Footprint& ci, const Footprint& li) {
        Vec d = li.dir;
        Vec m = li.point - ci.center;
        double bq = dot(m, d);
        double cq = dot(m, m) - ci.radius * ci.radius;
        double disc = bq * bq - cq;
        if (disc < -tol.tangency) return;
        if (disc <= tol.tangency) {
            hit.tangent = true;
            hit.points.push_back(li.point + d * (-bq));
            return;
        }
        double r = std::sqrt(disc);
        hit.points.push_back(li.point + d * (-bq - r));
        hit.points.push_back(li.point + d * (-bq + r));
    };
    if (a.is_line && b.is_line) {
        line_line(a, b);
    } else if (a.is_line || b.is_line) {
        circle_line(a.is_line ? b : a, a.is_line ? a : b);
    } else {
        Vec delta = b.center - a.center;
        double d = norm(delta);
        if (d < 1e-14) return hit;  // concentric, disjoint or coincident
        double x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2 * d);
        double h2 = a.radius * a.radius - x * x;
        Vec ex = delta * (1.0 / d);
        Vec ey(-ex[1], ex[0]);
        if (h2 < -tol.tangency) return hit;
        if (h2 <= tol.tangency) {
            hit.tangent = true;
            hit.points.push_back(a.center + ex * x);
            return hit;
        }
        double h = std::sqrt(h2);
        hit.points.push_back(a.center + ex * x + ey * h);
        hit.points.push_back(a.center + ex * x - ey * h);
    }
    return hit;
}

// Every cycle on a curved model is a plane section of the quadric. The
// section plane {x : <x, m> = h} is recovered from three spread points of
// the cycle, so no per-kind offset conventions enter here.
struct Section {
    Vec m;
    double h = 0;
};

Section cycle_section(const Cycle& c) {
    Vec p0, p1, p2;
    if (c.kind == CycleKind::circle) {
        p0 = cycle_point(c, 0.0).v;
        p1 = cycle_point(c, 2 * pi / 3).v;
        p2 = cycle_point(c, 4 * pi / 3).v;
    } else {
        p0 = cycle_point(c, -1.0).v;
        p1 = cycle_point(c, 0.0).v;
        p2 = cycle_point(c, 1.0).v;
    }
    Vec n = form_flip(c.space, cross(p1 - p0, p2 - p0));
    n = n * (1.0 / norm(n));
    return {n, bilinear(c.space, n, p1)};
}

// Cycle-cycle on the curved models, solved on the quadric itself: the hits
// are x = alpha*m1 + beta*m2 + gamma*w with w conjugate to both section
// normals. Uniformly conditioned at desk scale; the conformal chart blows up
// near diametral footprints, the ambient solve does not. Cycles through a
// common ideal point give a null section line, handled as the single-hit
// branch below.
std::vector<Point> intersect_sections_ambient(const Cycle& a, const Cycle& b,
                                              const Tolerances& tol) {
    const SpaceKind space = a.space;
    Section s1 = cycle_section(a), s2 = cycle_section(b);
    std::vector<Point> out;

    // Plane equations as Euclidean rows: dot(a_i, x) = h_i.  The row Gram is
    // nonsingular for every genuinely crossing pair of planes, unlike the
    // bilinear-form Gram, which degenerates when the section line is null.
    Vec a1 = form_flip(space, s1.m), a2 = form_flip(space, s2.m);
    double e11 = dot(a1, a1), e12 = dot(a1, a2), e22 = dot(a2, a2);
    double edet = e11 * e22 - e12 * e12;
    if (edet < 1e-15 * e11 * e22) return out;  // parallel sections never cross

    double alpha = (s1.h * e22 - s2.h * e12) / edet;
    double beta = (s2.h * e11 - s1.h * e12) / edet;
    Vec p0 = a1 * alpha + a2 * beta;  // point on the section line
    Vec w = cross(a1, a2);
    w = w * (1.0 / norm(w));

    // <p0 + t w, p0 + t w> = eps_q along the line
    double eps_q = space.curv == CurvatureSign::spherical ? 1.0 : -1.0;
    double qa = bilinear(space, w, w);
    double qb = 2 * bilinear(space, p0, w);
    double qc = bilinear(space, p0, p0) - eps_q;

    auto keep = [&](double t) {
        Vec x = p0 + w * t;
        if (space.curv == CurvatureSign::hyperbolic) {
            if (x[0] <= 0) return;      // far sheet
            if (x[0] > 1e8) return;     // far beyond the noncompactness sentinel
        }
        out.push_back(make_point(space, x));
    };

    if (std::fabs(qa) < 1e-12) {
        // null section line (common ideal point): at most one finite hit
        if (std::fabs(qb) < 1e-15) return out;
        keep(-qc / qb);
        return out;
    }
    double disc = qb * qb - 4 * qa * qc;
    if (std::fabs(disc) <= 4 * std::fabs(qa) * tol.tangency) {
        keep(-qb / (2 * qa));
        return out;
    }
    if (disc < 0) return out;
    double root = std::sqrt(disc);
    keep((-qb + root) / (2 * qa));
    keep((-qb - root) / (2 * qa));
    return out;
}

}  // namespace

std::vector<Point> intersect_cycles(const Cycle& a, const Cycle& b, const Tolerances& tol) {
    assert(a.space == b.space);
    if (same_cycle(a, b, 1e-9)) throw coincident_cycles_error("cycles coincide");
    std::vector<Point> raw;
    if (a.space.curved()) {
        ChartKind chart = conformal_chart(a.space);
        for (const Point& p : intersect_sections_ambient(a, b, tol)) {
            if (a.space.curv == CurvatureSign::hyperbolic &&
                norm(to_chart(chart, p)) >= 1.0 - tol.chart_limit)
                continue;  // beyond the noncompactness sentinel
            raw.push_back(p);
        }
    } else {
        Footprint fa = chart_footprint(a), fb = chart_footprint(b);
        ChartHit hit = intersect_footprints(fa, fb, tol);
        for (const Vec& xy : hit.points)
            raw.push_back(from_chart(ChartKind::identity, a.space, xy));
    }
    std::vector<Point> out;
    for (const Point& p : raw) {
        if (distance_to_cycle(a, p) > 1e-9 || distance_to_cycle(b, p) > 1e-9)
            throw geometry_error("cycle intersection failed the on-cycle check");
        out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transforms and congruence

Cycle transform_cycle(const Isometry& f, const Cycle& c) {
    switch (c.kind) {
        case CycleKind::circle: return make_circle(apply(f, c.center), c.radius);
        case CycleKind::paracycle: {
            double th = boundary_angle_image(f, c.ideal_angle);
            Point apex = apply(f, paracycle_apex(c));
            Vec l = null_direction(th);
            double b = -bilinear(c.space, apex.v, l);
            return make_paracycle(c.space, th, -std::log(b));
        }
        case CycleKind::hypercycle: {
            Geodesic nb = geodesic_from_ideal_angles(c.space,
                                                     boundary_angle_image(f, c.base.theta1),
                                                     boundary_angle_image(f, c.base.theta2));
            Point probe = apply(f, cycle_point(c, 0.0));
            int side = bilinear(c.space, probe.v, hyperbolic_pole(nb)) >= 0 ? +1 : -1;
            return make_hypercycle(nb, c.offset, side);
        }
        case CycleKind::geodesic: {
            Geodesic nb;
            switch (c.space.curv) {
                case CurvatureSign::hyperbolic:
                    nb = geodesic_from_ideal_angles(c.space,
                                                    boundary_angle_image(f, c.base.theta1),
                                                    boundary_angle_image(f, c.base.theta2));
                    break;
                case CurvatureSign::spherical: {
                    nb = c.base;
                    nb.pole = f.linear * c.base.pole;
                    break;
                }
                case CurvatureSign::flat: {
                    nb = c.base;
                    nb.normal = f.linear * c.base.normal;
                    nb.offset = dot(nb.normal, apply(f, geodesic_at(c.base, 0.0)).v);
                    break;
                }
            }
            return make_geodesic_cycle(nb);
        }
    }
    throw geometry_error("unreachable");
}

bool congruent_cycles(const Cycle& a, const Cycle& b, double tol) {
    if (!(a.space == b.space) || a.kind != b.kind) return false;
    switch (a.kind) {
        case CycleKind::circle: return std::fabs(a.radius - b.radius) < tol;
        case CycleKind::paracycle: return true;
        case CycleKind::hypercycle: return std::fabs(a.offset - b.offset) < tol;
        case CycleKind::geodesic: return true;
    }
    return false;
}

bool same_cycle(const Cycle& a, const Cycle& b, double tol) {
    if (!(a.space == b.space) || a.kind != b.kind) return false;
    switch (a.kind) {
        case CycleKind::circle: {
            if (std::fabs(a.radius - b.radius) < tol && distance(a.center, b.center) < tol)
                return true;
            // a great circle is the same locus from either pole
            if (a.space.curv == CurvatureSign::spherical &&
                std::fabs(a.radius + b.radius - pi) < tol &&
                norm(a.center.v + b.center.v) < tol)
                return true;
            return false;
        }
        case CycleKind::paracycle:
            return angle_gap(a.ideal_angle, b.ideal_angle) < tol &&
                   std::fabs(a.horo_param - b.horo_param) < tol;
        case CycleKind::hypercycle: {
            if (std::fabs(a.offset - b.offset) >= tol) return false;
            if (!same_geodesic(a.base, b.base, tol)) return false;
            // sides must describe the same locus even if base orientations differ
            Point pa = cycle_point(a, 0.0);
            return distance_to_cycle(b, pa) < tol;
        }
        case CycleKind::geodesic: return same_geodesic(a.base, b.base, tol);
    }
    return false;
}

}  // namespace ccg
