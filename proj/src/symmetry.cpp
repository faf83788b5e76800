#include "ccg/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ccg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Base line and offset of a hypercycle-like cycle (geodesics have offset 0).
bool hypercycle_like(const Cycle& c, Geodesic* base, double* offset) {
    if (c.kind == CycleKind::hypercycle) {
        *base = c.base;
        *offset = c.offset;
        return true;
    }
    if (c.kind == CycleKind::geodesic) {
        *base = c.base;
        *offset = 0;
        return true;
    }
    return false;
}

}  // namespace

CandidateCenter candidate_center_two_hypercycles(const Cycle& h1, const Cycle& h2,
                                                 const Tolerances& tol) {
    Geodesic b1, b2;
    double l1 = 0, l2 = 0;
    if (!hypercycle_like(h1, &b1, &l1) || !hypercycle_like(h2, &b2, &l2))
        throw geometry_error("candidate centre needs hypercycles or geodesics");
    if (h1.space.curv != CurvatureSign::hyperbolic)
        throw geometry_error("hypercycle centre candidates are hyperbolic only");
    if (std::fabs(l1 - l2) > tol.geometry)
        throw not_congruent_error("hypercycles have different offsets");

    CandidateCenter out;
    if (same_geodesic(b1, b2, tol.geometry)) {
        out.kind = CenterLocus::line_locus;
        out.line = b1;
        return out;
    }
    GeodesicMeeting meet = meet_geodesics(b1, b2, tol);
    if (meet.relation == GeodesicRelation::intersecting)
        throw common_finite_point_error("base lines share a finite point");
    if (meet.relation == GeodesicRelation::asymptotic) {
        out.kind = CenterLocus::none;  // three ideal points in total
        return out;
    }
    PerpendicularSegment seg = common_perpendicular(b1, b2, tol);
    out.kind = CenterLocus::unique_point;
    out.point = geodesic_point(seg.foot_a, seg.foot_b, 0.5);
    return out;
}

CandidateCenter candidate_center_pair(const Cycle& a, const Cycle& b,
                                      const Tolerances& tol) {
    CandidateCenter out;
    if (a.kind == CycleKind::circle && b.kind == CycleKind::circle) {
        if (std::fabs(a.radius - b.radius) > tol.geometry)
            throw not_congruent_error("circles have different radii");
        out.kind = CenterLocus::unique_point;
        out.point = distance(a.center, b.center) < 1e-12
                        ? a.center
                        : geodesic_point(a.center, b.center, 0.5);
        return out;
    }
    if (a.kind == CycleKind::paracycle && b.kind == CycleKind::paracycle) {
        if (angle_gap(a.ideal_angle, b.ideal_angle) < 1e-9) {
            out.kind = CenterLocus::none;  // a reflection moves every ideal point
            return out;
        }
        Geodesic g = geodesic_from_ideal_angles(a.space, a.ideal_angle, b.ideal_angle);
        Cycle gc = make_geodesic_cycle(g);
        std::vector<Point> pa = intersect_cycles(gc, a, tol);
        std::vector<Point> pb = intersect_cycles(gc, b, tol);
        if (pa.empty() || pb.empty())
            throw geometry_error("paracycle axis chord not found");
        out.kind = CenterLocus::unique_point;
        out.point = geodesic_point(pa.front(), pb.front(), 0.5);
        return out;
    }
    bool a_line = a.kind == CycleKind::hypercycle || a.kind == CycleKind::geodesic;
    bool b_line = b.kind == CycleKind::hypercycle || b.kind == CycleKind::geodesic;
    if (a_line && b_line) return candidate_center_two_hypercycles(a, b, tol);
    throw not_congruent_error("cycles of different kinds are never congruent");
}

namespace {

const double kFractions[] = {0.0, 1.0 / 6, 1.0 / 3, 0.5, 2.0 / 3, 5.0 / 6, 1.0};

// Max distance between the reflected samples of arc i and the matching
// samples of arc i+s (orientation is preserved, so begin maps to begin).
double pairing_residual(const ArcPolygon& poly, int shift, const Point& center) {
    Isometry refl = point_reflection(center);
    int n = static_cast<int>(poly.arcs.size());
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        const PolygonArc& src = poly.arcs[i];
        const PolygonArc& dst = poly.arcs[(i + shift) % n];
        for (double f : kFractions) {
            Point image = apply(refl, arc_point(src, f));
            worst = std::max(worst, distance(image, arc_point(dst, f)));
        }
    }
    return worst;
}

Point canonical_center(const Point& center, const Point& anchor) {
    if (center.space.curv == CurvatureSign::spherical &&
        distance(center, anchor) > pi / 2)
        return make_point(center.space, -center.v);
    return center;
}

SymmetryReport classify(double best, double tol, const std::optional<Point>& center,
                        std::optional<int> pairing) {
    SymmetryReport rep;
    rep.residual = best;
    rep.method = SymmetryMethod::arc_pairing;
    if (best < tol) {
        rep.verdict = SymmetryVerdict::symmetric;
        rep.center = center;
        rep.pairing = pairing;
        rep.certificate = "reflection maps every arc onto its partner";
    } else if (best < 10 * tol) {
        rep.verdict = SymmetryVerdict::indeterminate;
        rep.center = center;
        rep.pairing = pairing;
        rep.certificate = "best residual falls in the indeterminate band";
    } else {
        rep.verdict = SymmetryVerdict::not_symmetric;
        rep.certificate = "no arc pairing verifies";
    }
    return rep;
}

}  // namespace

SymmetryReport is_centrally_symmetric_polygon(const ArcPolygon& poly, double tol) {
    const Tolerances& tols = default_tolerances();
    int n = static_cast<int>(poly.arcs.size());
    if (n == 0) {
        SymmetryReport rep;
        rep.certificate = "empty polygon";
        return rep;
    }
    if (n == 1) {
        // Single closed arc: only a full circle can close up; the reflection
        // about the centre advances the parameter by half a period.
        const PolygonArc& arc = poly.arcs[0];
        double period = cycle_period(arc.cycle);
        if (arc.cycle.kind != CycleKind::circle || period <= 0 ||
            std::fabs((arc.t_end - arc.t_begin) - period) > 1e-9) {
            SymmetryReport rep;
            rep.certificate = "single open arc cannot close symmetrically";
            return rep;
        }
        Isometry refl = point_reflection(arc.cycle.center);
        double worst = 0;
        for (double f : kFractions) {
            Point image = apply(refl, arc_point(arc, f));
            double g = f + 0.5 < 1 ? f + 0.5 : f - 0.5;
            worst = std::max(worst, distance(image, arc_point(arc, g)));
        }
        return classify(worst, tol, arc.cycle.center, 0);
    }

    double best = kInf;
    std::optional<Point> best_center;
    int best_shift = -1;
    std::vector<std::pair<int, Point>> verified;
    for (int s = 0; s < n; ++s) {
        std::optional<Point> center;
        try {
            CandidateCenter cc =
                candidate_center_pair(poly.arcs[0].cycle, poly.arcs[s].cycle, tols);
            if (cc.kind == CenterLocus::unique_point)
                center = cc.point;
            else if (cc.kind == CenterLocus::line_locus && s != 0)
                center = geodesic_point(poly.vertices[0], poly.vertices[s], 0.5);
        } catch (const geometry_error&) {
            // infeasible pairing (incongruent cycles or crossing base lines)
        }
        if (!center) continue;
        double res = pairing_residual(poly, s, *center);
        if (res < best) {
            best = res;
            best_center = canonical_center(*center, poly.vertices[0]);
            best_shift = s;
        }
        if (res < tol) verified.push_back({s, *center});
    }
    for (size_t i = 1; i < verified.size(); ++i)
        if (distance(verified[0].second, verified[i].second) > 1e-8)
            throw geometry_error("distinct symmetry pairings disagree on the centre");
    if (best_shift < 0) {
        SymmetryReport rep;
        rep.residual = kInf;
        rep.certificate = "no feasible arc pairing";
        return rep;
    }
    std::optional<int> shift_opt;
    if (best < 10 * tol) shift_opt = best_shift;
    return classify(best, tol, best_center, shift_opt);
}

namespace {

// Reflect samples of each boundary component onto the other and take the
// worst locus distance.
double component_swap_residual(const Cycle& c0, const Cycle& c1, const Point& center) {
    Isometry refl = point_reflection(center);
    double worst = 0;
    for (double t : {-2.4, -1.6, -0.8, 0.0, 0.8, 1.6, 2.4}) {
        worst = std::max(worst, distance_to_cycle(c1, apply(refl, cycle_point(c0, t))));
        worst = std::max(worst, distance_to_cycle(c0, apply(refl, cycle_point(c1, t))));
    }
    return worst;
}

SymmetryReport region_verdict(SymmetryVerdict v, const char* certificate) {
    SymmetryReport rep;
    rep.verdict = v;
    rep.certificate = certificate;
    return rep;
}

}  // namespace

SymmetryReport is_centrally_symmetric_region(const Region& r, double tol) {
    const Tolerances& tols = default_tolerances();
    switch (r.kind) {
        case RegionKind::disk: {
            SymmetryReport rep;
            rep.verdict = SymmetryVerdict::symmetric;
            rep.center = r.center;
            rep.residual = 0;
            rep.method = SymmetryMethod::disk_midpoint;
            rep.certificate = "disk is symmetric about its centre";
            return rep;
        }
        case RegionKind::paraball:
            return region_verdict(SymmetryVerdict::not_symmetric,
                                  "exactly one ideal point (odd count)");
        case RegionKind::halfplane:
            return region_verdict(SymmetryVerdict::not_symmetric,
                                  "ideal arc is never antipodally invariant");
        case RegionKind::padded:
            break;
    }
    const std::vector<Cycle> comps = boundary_components(r);
    if (comps.size() == 1)
        return region_verdict(SymmetryVerdict::not_symmetric,
                              "single boundary hypercycle");
    if (comps.size() > 2)
        throw unsupported_region_error(
            "symmetry of padded regions with more than two components is "
            "unsupported; intersect and use the polygon path");

    CandidateCenter cc = candidate_center_two_hypercycles(comps[0], comps[1], tols);
    if (cc.kind == CenterLocus::none)
        return region_verdict(SymmetryVerdict::not_symmetric,
                              "three ideal points (odd count)");

    Point center = cc.kind == CenterLocus::unique_point ? cc.point
                                                        : geodesic_at(cc.line, 0);
    double res = component_swap_residual(comps[0], comps[1], center);
    Isometry refl = point_reflection(center);
    if (contains(r, apply(refl, region_anchor(r)), tols) == Containment::outside)
        return region_verdict(SymmetryVerdict::not_symmetric,
                              "reflected anchor leaves the region");
    SymmetryReport rep;
    rep.residual = res;
    rep.method = SymmetryMethod::arc_pairing;
    if (res < tol) {
        rep.verdict = SymmetryVerdict::symmetric;
        rep.center = center;
        rep.certificate = cc.kind == CenterLocus::line_locus
                              ? "centres of symmetry form the entire base line"
                              : "midpoint of the common perpendicular";
    } else if (res < 10 * tol) {
        rep.verdict = SymmetryVerdict::indeterminate;
        rep.center = center;
        rep.certificate = "component swap residual in the indeterminate band";
    } else {
        rep.verdict = SymmetryVerdict::not_symmetric;
        rep.certificate = "components are not exchanged by the candidate centre";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Minimal enclosing ball

namespace {

bool ball_contains(const Ball& b, const Point& p, double eps) {
    if (b.radius < 0) return false;
    return distance(b.center, p) <= b.radius + eps;
}

Ball ball_of_two(const Point& a, const Point& b) {
    Ball out;
    out.center = geodesic_point(a, b, 0.5);
    out.radius = std::max(distance(out.center, a), distance(out.center, b));
    return out;
}

// Equidistant point of three points: ambient solve on curved spaces, the
// perpendicular-bisector system on the plane. Throws when no finite
// circumcenter exists (collinear points / circumcycle not a circle).
Point circumcenter(const Point& p1, const Point& p2, const Point& p3) {
    const SpaceKind& space = p1.space;
    if (space.curv == CurvatureSign::flat) {
        double ax = p2.v[0] - p1.v[0], ay = p2.v[1] - p1.v[1];
        double bx = p3.v[0] - p2.v[0], by = p3.v[1] - p2.v[1];
        double ca = 0.5 * (dot(p2.v, p2.v) - dot(p1.v, p1.v));
        double cb = 0.5 * (dot(p3.v, p3.v) - dot(p2.v, p2.v));
        double det = ax * by - ay * bx;
        if (std::fabs(det) < 1e-14) throw geometry_error("collinear points");
        return make_point(space, Vec((ca * by - cb * ay) / det,
                                     (ax * cb - bx * ca) / det));
    }
    Vec w = cross(p1.v - p2.v, p2.v - p3.v);
    if (space.curv == CurvatureSign::spherical) {
        double ww = dot(w, w);
        if (ww < 1e-20) throw geometry_error("points on a common great circle");
        Vec x = w * (1.0 / std::sqrt(ww));
        if (dot(x, p1.v) < 0) x = -x;
        return make_point(space, x);
    }
    Vec u = form_flip(space, w);
    double s = bilinear(space, u, u);
    if (s > -1e-20) throw geometry_error("circumcycle has no finite centre");
    Vec x = u * (1.0 / std::sqrt(-s));
    if (x[0] < 0) x = -x;
    return make_point(space, x);
}

Ball ball_of_three(const Point& a, const Point& b, const Point& c) {
    Ball best;
    best.radius = kInf;
    const Point* pts[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
        Ball two = ball_of_two(*pts[i], *pts[(i + 1) % 3]);
        if (ball_contains(two, *pts[(i + 2) % 3], 1e-12) && two.radius < best.radius)
            best = two;
    }
    try {
        Ball circ;
        circ.center = circumcenter(a, b, c);
        circ.radius = std::max({distance(circ.center, a), distance(circ.center, b),
                                distance(circ.center, c)});
        if (circ.radius < best.radius) best = circ;
    } catch (const geometry_error&) {
        // no finite circumcenter: a two-point ball must cover the triple
    }
    if (best.radius == kInf) throw geometry_error("no ball covers the support triple");
    return best;
}

Ball trivial_ball(const std::vector<Point>& support) {
    Ball out;
    switch (support.size()) {
        case 0:
            out.radius = -1;  // empty sentinel: contains nothing
            return out;
        case 1:
            out.center = support[0];
            out.radius = 0;
            return out;
        case 2:
            return ball_of_two(support[0], support[1]);
        default:
            return ball_of_three(support[0], support[1], support[2]);
    }
}

Ball welzl(const std::vector<Point>& pts, size_t count, std::vector<Point>& support) {
    if (count == 0 || support.size() == 3) return trivial_ball(support);
    Ball b = welzl(pts, count - 1, support);
    const Point& p = pts[count - 1];
    if (ball_contains(b, p, 1e-11)) return b;
    support.push_back(p);
    b = welzl(pts, count - 1, support);
    support.pop_back();
    return b;
}

}  // namespace

Ball min_enclosing_ball(const std::vector<Point>& pts, const Tolerances& tol) {
    if (pts.empty()) throw geometry_error("minimal ball of an empty set");
    Ball b;
    try {
        std::vector<Point> support;
        b = welzl(pts, pts.size(), support);
    } catch (const antipodal_pair_error&) {
        throw hemisphere_violation_error(
            "point set contains an antipodal pair: no hemisphere holds it");
    }
    if (b.radius < 0) {
        b.center = pts[0];
        b.radius = 0;
    }
    if (pts[0].space.curv == CurvatureSign::spherical && b.radius >= pi / 2 - 1e-9)
        throw hemisphere_violation_error("point set does not fit an open hemisphere");
    for (const Point& p : pts)
        if (std::fabs(distance(b.center, p) - b.radius) < tol.membership)
            b.support.push_back(p);
    return b;
}

bool meb_cross_check(const ArcPolygon& poly, const SymmetryReport& report) {
    if (report.verdict != SymmetryVerdict::symmetric || !report.center)
        throw geometry_error("cross-check requires a symmetric report");
    Ball b = min_enclosing_ball(polygon_sample_points(poly));
    return distance(b.center, *report.center) < 1e-6;
}

}  // namespace ccg
