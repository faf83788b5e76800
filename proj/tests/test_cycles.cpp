// Cycle layer: curvature closed forms vs finite differences, footprints in
// the conformal charts, parametrization, and pairwise intersection against a
// bisection oracle that only uses the metric.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ccg/cycles.hpp"

using namespace ccg;

namespace {

const SpaceKind H = SpaceKind::hyperbolic(2);
const SpaceKind S = SpaceKind::sphere(2);
const SpaceKind E = SpaceKind::euclidean(2);

Point step_from(const Point& p, double s, int axis = 0) {
    auto fr = tangent_frame(p);
    return exp_map(p, fr[static_cast<size_t>(axis)] * s);
}

// All intersection points of a circle with a second cycle, found by scanning
// the circle's parameter for sign changes of the signed distance to the other
// cycle and bisecting each bracket. Independent of the footprint machinery.
std::vector<Point> circle_scan_oracle(const Cycle& circ, const Cycle& other, int grid) {
    std::vector<Point> hits;
    double period = cycle_period(circ);
    REQUIRE(period > 0);
    auto f = [&](double s) { return signed_distance_to_cycle(other, cycle_point(circ, s)); };
    double prev_s = 0, prev_f = f(0);
    for (int i = 1; i <= grid; ++i) {
        double s = period * i / grid;
        double fs = f(s);
        if ((prev_f < 0) != (fs < 0)) {
            double lo = prev_s, hi = s, flo = prev_f;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi), fm = f(mid);
                if ((flo < 0) == (fm < 0)) lo = mid, flo = fm;
                else hi = mid;
            }
            hits.push_back(cycle_point(circ, 0.5 * (lo + hi)));
        }
        prev_s = s;
        prev_f = fs;
    }
    return hits;
}

// Set equality of point lists up to tolerance (both directions).
bool same_point_set(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const Point& p : a) {
        bool found = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && distance(p, b[j]) < tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("curvature closed forms") {
    Point o = base_point(H);
    // pinned values, not recomputed through the same call tree
    CHECK(std::fabs(curvature(make_circle(o, 1.0)) - 1.3130352854993312) < 1e-15);   // coth 1
    CHECK(std::fabs(curvature(make_hypercycle(geodesic_from_ideal_angles(H, -0.9, 0.9), 1.0, +1)) -
                    0.7615941559557649) < 1e-15);                                    // tanh 1
    CHECK(curvature(make_paracycle(H, 0.3, 0.2)) == 1.0);
    CHECK(curvature(make_geodesic_cycle(geodesic_from_ideal_angles(H, 0.0, 2.0))) == 0.0);

    Point os = base_point(S);
    CHECK(std::fabs(curvature(make_circle(os, 1.0)) - 0.6420926159343306) < 1e-15);  // cot 1

    Point oe = base_point(E);
    CHECK(std::fabs(curvature(make_circle(oe, 2.0)) - 0.5) < 1e-15);                 // 1/r
    Geodesic fl;
    fl.space = E;
    fl.normal = Vec(0.0, 1.0);
    CHECK(curvature(make_geodesic_cycle(fl)) == 0.0);

    // strict ordering of the hyperbolic cycle family per curvature
    for (double r : {0.3, 1.0, 2.5})
        for (double l : {0.3, 1.0, 2.5}) {
            double kc = curvature(make_circle(o, r));
            double kh = curvature(make_hypercycle(geodesic_from_ideal_angles(H, -0.9, 0.9), l, +1));
            CHECK(kc > 1.0);
            CHECK(kh < 1.0);
            CHECK(kh > 0.0);
        }
    // coth strictly decreasing, tanh strictly increasing
    CHECK(curvature(make_circle(o, 0.5)) > curvature(make_circle(o, 1.5)));
    CHECK(curvature(make_hypercycle(geodesic_from_ideal_angles(H, -0.9, 0.9), 0.5, +1)) <
          curvature(make_hypercycle(geodesic_from_ideal_angles(H, -0.9, 0.9), 1.5, +1)));
}

TEST_CASE("finite-difference curvature matches the closed forms") {
    Geodesic g = geodesic_from_ideal_angles(H, -1.2, 1.0);
    std::vector<Cycle> cycles = {
        make_circle(base_point(H), 0.7),
        make_circle(step_from(base_point(H), 0.4), 1.6),
        make_paracycle(H, 1.3, -0.2),
        make_hypercycle(g, 0.8, +1),
        make_geodesic_cycle(g),
        make_circle(base_point(S), 0.9),
        make_circle(base_point(E), 1.4),
    };
    for (const Cycle& c : cycles) {
        for (double h : {1e-3, 1e-4})
            CHECK(std::fabs(finite_difference_curvature(c, h) - curvature(c)) < 1e-5);
        CHECK_THROWS_AS(finite_difference_curvature(c, 1e-7), step_out_of_range_error);
        CHECK_THROWS_AS(finite_difference_curvature(c, 0.5), step_out_of_range_error);
    }
}

TEST_CASE("metric sine") {
    // compile-time folded libm constants can differ from the runtime call by an ulp
    CHECK(std::fabs(metric_sine(H, 0.7) - std::sinh(0.7)) < 1e-15);
    CHECK(std::fabs(metric_sine(S, 0.7) - std::sin(0.7)) < 1e-15);
    CHECK(metric_sine(E, 0.7) == 0.7);
}

TEST_CASE("ideal points per kind") {
    CHECK(ideal_points(make_circle(base_point(H), 1.0)).empty());
    CHECK_THROWS_AS(ideal_points(make_circle(base_point(S), 1.0)), geometry_error);
    CHECK_THROWS_AS(ideal_points(make_circle(base_point(E), 1.0)), geometry_error);

    auto pp = ideal_points(make_paracycle(H, 2.6, 0.1));
    REQUIRE(pp.size() == 1);
    CHECK(angle_gap(pp[0], 2.6) < 1e-12);

    Geodesic g = geodesic_from_ideal_angles(H, -0.7, 1.1);
    for (const Cycle& c : {make_hypercycle(g, 0.5, +1), make_geodesic_cycle(g)}) {
        auto hp = ideal_points(c);
        REQUIRE(hp.size() == 2);
        double lo = std::min(angle_gap(hp[0], wrap_angle(-0.7)), angle_gap(hp[0], 1.1));
        double hi = std::min(angle_gap(hp[1], wrap_angle(-0.7)), angle_gap(hp[1], 1.1));
        CHECK(lo < 1e-12);
        CHECK(hi < 1e-12);
        CHECK(angle_gap(hp[0], hp[1]) > 1.0);
    }
}

TEST_CASE("cycle parametrization") {
    Geodesic g = geodesic_from_ideal_angles(H, -0.9, 0.9);
    std::vector<Cycle> unbounded = {
        make_paracycle(H, 0.6, 0.3),
        make_hypercycle(g, 0.7, +1),
        make_geodesic_cycle(g),
    };
    for (const Cycle& c : unbounded) {
        CHECK(cycle_period(c) == 0.0);
        // constant-speed parametrization: paracycles and geodesics run at unit
        // speed, hypercycles at the axis speed cosh(offset)
        double speed = c.kind == CycleKind::hypercycle ? std::cosh(c.offset) : 1.0;
        Point p0 = cycle_point(c, 0.4);
        Point p1 = cycle_point(c, 0.4 + 1e-4);
        CHECK(std::fabs(distance(p0, p1) - 1e-4 * speed) < 1e-10);
        CHECK(std::fabs(cycle_parameter_of(c, p0) - 0.4) < 1e-9);
        CHECK(std::fabs(step_to_parameter(c, 0.25) - 0.25 / speed) < 1e-15);
        // points lie on the cycle
        for (double s : {-1.5, 0.0, 2.0})
            CHECK(distance_to_cycle(c, cycle_point(c, s)) < 1e-10);
    }

    for (SpaceKind sp : {H, S, E}) {
        Cycle circ = make_circle(step_from(base_point(sp), 0.3), 0.8);
        CHECK(cycle_period(circ) == 2 * pi);
        // angle parameter: arclength of step h is h * metric_sine(r)
        Point q0 = cycle_point(circ, 1.0);
        Point q1 = cycle_point(circ, 1.0 + 1e-4);
        CHECK(std::fabs(distance(q0, q1) - 1e-4 * metric_sine(sp, 0.8)) < 1e-10);
        CHECK(std::fabs(step_to_parameter(circ, 0.3) - 0.3 / metric_sine(sp, 0.8)) < 1e-12);
        double s = cycle_parameter_of(circ, q0);
        CHECK(points_close(cycle_point(circ, s), q0, 1e-9));
        CHECK(std::fabs(distance(circ.center, cycle_point(circ, 2.2)) - 0.8) < 1e-12);
        // parameter midpoint is the arclength midpoint
        Point mid = cycle_point(circ, 0.5);
        CHECK(std::fabs(distance(cycle_point(circ, 0.0), mid) -
                        distance(mid, cycle_point(circ, 1.0))) < 1e-12);
    }
}

TEST_CASE("signed distance to cycles") {
    for (SpaceKind sp : {H, S, E}) {
        Point c = step_from(base_point(sp), 0.2);
        Cycle circ = make_circle(c, 0.6);
        CHECK(std::fabs(signed_distance_to_cycle(circ, c) + 0.6) < 1e-12);
        Point out = step_from(c, 1.1);
        CHECK(std::fabs(signed_distance_to_cycle(circ, out) - 0.5) < 1e-12);
        CHECK(std::fabs(distance_to_cycle(circ, out) - 0.5) < 1e-12);
    }
    // paracycle: negative inside the horoball (deep toward the ideal point)
    Cycle par = make_paracycle(H, 0.0, 0.0);
    Point inside = from_chart(ChartKind::poincare, H, Vec(0.5, 0.0));
    Point outside = from_chart(ChartKind::poincare, H, Vec(-0.5, 0.0));
    CHECK(signed_distance_to_cycle(par, inside) < 0);
    CHECK(signed_distance_to_cycle(par, outside) > 0);
    Point apex = paracycle_apex(par);
    CHECK(distance_to_cycle(par, apex) < 1e-12);
    CHECK(distance(apex, base_point(H)) < 1e-12);  // horo_param 0: apex at origin
    // apex moves along the axis by horo_param
    CHECK(std::fabs(distance(paracycle_apex(make_paracycle(H, 0.0, 0.35)),
                             base_point(H)) - 0.35) < 1e-12);

    // hypercycle: negative toward the base line, zero at offset
    Geodesic g = geodesic_from_ideal_angles(H, pi, 0.0);  // x-axis, left side +y
    Cycle hyp = make_hypercycle(g, 0.5, +1);
    Point on_base = geodesic_at(g, 0.3);
    CHECK(std::fabs(signed_distance_to_cycle(hyp, on_base) + 0.5) < 1e-12);
    Point at_offset = step_from(base_point(H), 0.5, 1);  // distance 0.5 above axis
    CHECK(distance_to_cycle(hyp, at_offset) < 1e-12);
    Point beyond = step_from(base_point(H), 0.9, 1);
    CHECK(std::fabs(signed_distance_to_cycle(hyp, beyond) - 0.4) < 1e-12);
    // the mirror hypercycle lives below the axis
    Cycle hyp_m = make_hypercycle(g, 0.5, -1);
    CHECK(distance_to_cycle(hyp_m, step_from(base_point(H), -0.5, 1)) < 1e-12);
    CHECK(std::fabs(signed_distance_to_cycle(hyp_m, at_offset) + 1.0) < 1e-12);
}

TEST_CASE("footprints in the conformal chart") {
    // hyperbolic circle about the origin: Euclidean circle of radius tanh(r/2)
    Cycle circ = make_circle(base_point(H), 1.0);
    Footprint f = chart_footprint(circ);
    REQUIRE(!f.is_line);
    CHECK(norm(f.center) < 1e-12);
    CHECK(std::fabs(f.radius - std::tanh(0.5)) < 1e-12);

    // geodesic through the origin: a chart line through 0 along the axis
    Footprint fl = chart_footprint(make_geodesic_cycle(geodesic_from_ideal_angles(H, pi, 0.0)));
    REQUIRE(fl.is_line);
    CHECK(std::fabs(fl.point[1]) < 1e-12);
    CHECK(std::fabs(std::fabs(fl.dir[0]) - 1.0) < 1e-12);

    // off-axis geodesic: footprint meets the unit circle at its ideal angles
    Geodesic g = geodesic_from_ideal_angles(H, 0.4, 1.9);
    for (const Cycle& c : {make_geodesic_cycle(g), make_hypercycle(g, 0.6, +1),
                           make_hypercycle(g, 0.6, -1)}) {
        Footprint fc = chart_footprint(c);
        auto angs = ideal_points(c);
        for (double th : angs) {
            Vec u(std::cos(th), std::sin(th));
            double err = fc.is_line
                             ? std::fabs((u[0] - fc.point[0]) * fc.dir[1] -
                                         (u[1] - fc.point[1]) * fc.dir[0])
                             : std::fabs(norm(u - fc.center) - fc.radius);
            CHECK(err < 1e-9);
        }
    }

    // paracycle: internally tangent to the unit circle at the ideal point
    Cycle par = make_paracycle(H, 1.1, 0.4);
    Footprint fp = chart_footprint(par);
    REQUIRE(!fp.is_line);
    CHECK(std::fabs(norm(fp.center) + fp.radius - 1.0) < 1e-12);
    Vec u(std::cos(1.1), std::sin(1.1));
    CHECK(std::fabs(norm(u - fp.center) - fp.radius) < 1e-12);

    // conformal_footprint is the hyperbolic-only spelling
    CHECK(conformal_footprint(circ).radius == f.radius);
    CHECK_THROWS_AS(conformal_footprint(make_circle(base_point(E), 1.0)), geometry_error);
    CHECK_THROWS_AS(conformal_footprint(make_circle(base_point(S), 1.0)), geometry_error);

    // chart points of the cycle satisfy the footprint equation (all kinds)
    Geodesic g2 = geodesic_from_ideal_angles(H, -2.0, 0.3);
    std::vector<Cycle> cycles = {circ, par, make_hypercycle(g2, 0.5, +1),
                                 make_geodesic_cycle(g2),
                                 make_circle(step_from(base_point(S), 0.4), 0.7),
                                 make_circle(step_from(base_point(E), 0.9), 1.2)};
    for (const Cycle& c : cycles) {
        Footprint fc = chart_footprint(c);
        for (double s : {0.0, 0.7, 2.9}) {
            Vec xy = to_chart(conformal_chart(c.space), cycle_point(c, s));
            double err = fc.is_line
                             ? std::fabs((xy[0] - fc.point[0]) * fc.dir[1] -
                                         (xy[1] - fc.point[1]) * fc.dir[0])
                             : std::fabs(norm(xy - fc.center) - fc.radius);
            CHECK(err < 1e-10);
        }
    }
}

TEST_CASE("footprint equivariance under random isometries") {
    Rng rng(515u);
    Geodesic g = geodesic_from_ideal_angles(H, -0.4, 1.7);
    std::vector<Cycle> seeds = {
        make_circle(step_from(base_point(H), 0.5), 0.8),
        make_paracycle(H, 2.2, -0.1),
        make_hypercycle(g, 0.45, +1),
        make_geodesic_cycle(g),
    };
    for (int i = 0; i < 100; ++i) {
        Isometry f = random_isometry(H, rng, 1.2);
        const Cycle& c = seeds[static_cast<size_t>(i) % seeds.size()];
        Cycle tc = transform_cycle(f, c);
        CHECK(congruent_cycles(c, tc, 1e-9));
        Footprint fp = chart_footprint(tc);
        for (double s : {-1.0, 0.2, 1.4}) {
            // image of a cycle point lies on the transformed cycle's footprint
            Vec xy = to_chart(ChartKind::poincare, apply(f, cycle_point(c, s)));
            double err = fp.is_line
                             ? std::fabs((xy[0] - fp.point[0]) * fp.dir[1] -
                                         (xy[1] - fp.point[1]) * fp.dir[0])
                             : std::fabs(norm(xy - fp.center) - fp.radius);
            CHECK(err < 1e-8);
            CHECK(distance_to_cycle(tc, apply(f, cycle_point(c, s))) < 1e-8);
        }
    }
}

TEST_CASE("circle-circle intersections match the scan oracle") {
    for (SpaceKind sp : {H, S, E}) {
        Rng rng(909u);
        int crossing = 0;
        for (int i = 0; i < 60; ++i) {
            Point c1 = apply(random_isometry(sp, rng, 0.8), base_point(sp));
            Point c2 = apply(random_isometry(sp, rng, 0.8), base_point(sp));
            double r1 = rng.uniform(0.3, 1.0), r2 = rng.uniform(0.3, 1.0);
            if (sp.curv == CurvatureSign::spherical) {
                r1 *= 0.8;
                r2 *= 0.8;
            }
            if (distance(c1, c2) < 1e-3) continue;
            Cycle a = make_circle(c1, r1), b = make_circle(c2, r2);
            auto pts = intersect_cycles(a, b);
            auto oracle = circle_scan_oracle(a, b, 720);
            CHECK(same_point_set(pts, oracle, 1e-7));
            for (const Point& p : pts) {
                CHECK(distance_to_cycle(a, p) < 1e-9);
                CHECK(distance_to_cycle(b, p) < 1e-9);
            }
            if (pts.size() == 2) ++crossing;
        }
        CHECK(crossing > 10);
    }
}

TEST_CASE("mixed-kind intersections match the scan oracle") {
    Geodesic g = geodesic_from_ideal_angles(H, -0.9, 0.9);
    std::vector<Cycle> others = {
        make_geodesic_cycle(g),
        make_hypercycle(g, 0.4, +1),
        make_paracycle(H, 0.3, 0.1),
        make_paracycle(H, pi, -0.2),
    };
    Rng rng(11u);
    for (int i = 0; i < 40; ++i) {
        Point c = apply(random_isometry(H, rng, 1.0), base_point(H));
        double r = rng.uniform(0.4, 1.2);
        Cycle circ = make_circle(c, r);
        for (const Cycle& o : others) {
            auto pts = intersect_cycles(circ, o);
            auto oracle = circle_scan_oracle(circ, o, 720);
            CHECK(same_point_set(pts, oracle, 1e-7));
            // symmetric in the argument order
            auto rev = intersect_cycles(o, circ);
            CHECK(same_point_set(pts, rev, 1e-8));
        }
    }
}

TEST_CASE("disjoint, tangent and coincident cycles") {
    for (SpaceKind sp : {H, S, E}) {
        Point c1 = base_point(sp);
        Point c2 = step_from(c1, 1.4);
        CHECK(intersect_cycles(make_circle(c1, 0.5), make_circle(c2, 0.5)).empty());
        // externally tangent at the geodesic midpoint
        auto t = intersect_cycles(make_circle(c1, 0.7), make_circle(c2, 0.7));
        REQUIRE(t.size() == 1);
        CHECK(distance(t[0], geodesic_point(c1, c2, 0.5)) < 1e-6);
        CHECK_THROWS_AS(intersect_cycles(make_circle(c1, 0.7), make_circle(c1, 0.7)),
                        coincident_cycles_error);
    }
    // nested circles
    CHECK(intersect_cycles(make_circle(base_point(H), 1.0),
                           make_circle(base_point(H), 0.4)).empty());
    // coincident geodesics as cycles
    Geodesic g = geodesic_from_ideal_angles(H, 0.2, 2.0);
    CHECK_THROWS_AS(intersect_cycles(make_geodesic_cycle(g), make_geodesic_cycle(reversed(g))),
                    coincident_cycles_error);
}

TEST_CASE("cycles sharing one ideal point meet at most once") {
    // geodesic ending at the paracycle's ideal point: exactly one finite hit
    Geodesic g = geodesic_from_ideal_angles(H, -0.9, 0.9);
    Cycle par = make_paracycle(H, 0.9, 0.1);
    auto pts = intersect_cycles(make_geodesic_cycle(g), par);
    REQUIRE(pts.size() == 1);
    CHECK(distance_to_cycle(make_geodesic_cycle(g), pts[0]) < 1e-9);
    CHECK(distance_to_cycle(par, pts[0]) < 1e-9);

    // hypercycle sharing an endpoint with a geodesic
    Cycle hyp = make_hypercycle(geodesic_from_ideal_angles(H, 0.9, 2.4), 0.5, +1);
    auto pts2 = intersect_cycles(make_geodesic_cycle(g), hyp);
    CHECK(pts2.size() <= 1);
    for (const Point& p : pts2) {
        CHECK(distance_to_cycle(hyp, p) < 1e-9);
        CHECK(distance_to_cycle(make_geodesic_cycle(g), p) < 1e-9);
    }

    // concentric horoballs: same ideal point, no finite intersection
    CHECK(intersect_cycles(make_paracycle(H, 0.9, 0.0), make_paracycle(H, 0.9, 0.6)).empty());

    // hypercycle never meets its own base line
    Geodesic g2 = geodesic_from_ideal_angles(H, 0.3, 1.8);
    CHECK(intersect_cycles(make_geodesic_cycle(g2), make_hypercycle(g2, 0.4, +1)).empty());

    // opposite ideal points, overlapping horoballs: the classic two-point lens
    auto lens = intersect_cycles(make_paracycle(H, 0.0, -0.3), make_paracycle(H, pi, -0.3));
    CHECK(lens.size() == 2);
    // opposite ideal points, apexes touching: external tangency at one point
    auto touch = intersect_cycles(make_paracycle(H, 0.0, 0.0), make_paracycle(H, pi, 0.0));
    REQUIRE(touch.size() == 1);
    CHECK(distance(touch[0], base_point(H)) < 1e-9);
}

TEST_CASE("congruence and identity of cycles") {
    Point o = base_point(H);
    CHECK(congruent_cycles(make_circle(o, 0.8), make_circle(step_from(o, 1.0), 0.8), 1e-12));
    CHECK(!congruent_cycles(make_circle(o, 0.8), make_circle(o, 0.9), 1e-12));
    CHECK(congruent_cycles(make_paracycle(H, 0.1, 0.5), make_paracycle(H, 2.0, -0.3), 1e-12));
    Geodesic g1 = geodesic_from_ideal_angles(H, -0.5, 0.5);
    Geodesic g2 = geodesic_from_ideal_angles(H, 1.0, 2.9);
    CHECK(congruent_cycles(make_hypercycle(g1, 0.4, +1), make_hypercycle(g2, 0.4, -1), 1e-12));
    CHECK(!congruent_cycles(make_hypercycle(g1, 0.4, +1), make_hypercycle(g2, 0.5, +1), 1e-12));
    CHECK(!congruent_cycles(make_circle(o, 0.8), make_paracycle(H, 0.0, 0.0), 1e-12));

    // same_cycle after a round trip through an isometry
    Rng rng(77u);
    Isometry f = random_isometry(H, rng, 1.0);
    Cycle c = make_hypercycle(g1, 0.4, +1);
    CHECK(same_cycle(transform_cycle(inverse(f), transform_cycle(f, c)), c, 1e-9));
    CHECK(!same_cycle(c, make_hypercycle(g1, 0.4, -1), 1e-9));
}

TEST_CASE("spherical circle domain") {
    // radius in (0, pi/2]: a great circle is the limiting cycle
    Cycle big = make_circle(base_point(S), pi / 2);
    CHECK(std::fabs(curvature(big)) < 1e-15);
    CHECK_THROWS_AS(make_circle(base_point(S), 2.0), geometry_error);
    CHECK_THROWS_AS(make_circle(base_point(S), 0.0), geometry_error);
}
