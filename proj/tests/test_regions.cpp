// Region layer: construction validation, membership oracles, ideal traces,
// intersection classification/tracing, the single-component reduction, the
// two-component construction, and hulls of disk pairs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ccg/regions.hpp"

using namespace ccg;

namespace {

const SpaceKind H = SpaceKind::hyperbolic(2);
const SpaceKind S = SpaceKind::sphere(2);
const SpaceKind E = SpaceKind::euclidean(2);

Point step_from(const Point& p, double s, int axis = 0) {
    auto fr = tangent_frame(p);
    return exp_map(p, fr[static_cast<size_t>(axis)] * s);
}

// Membership in a traced compact intersection: a convex arc-polygon contains
// p iff p is on the region side of every supporting cycle.
bool polygon_contains(const ArcPolygon& poly, const Point& p, double band) {
    for (const auto& arc : poly.arcs)
        if (signed_distance_to_cycle(arc.cycle, p) > band) return false;
    return true;
}

bool region_member(const Region& r, const Point& p) {
    return contains(r, p) != Containment::outside;
}

}  // namespace

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(make_disk(base_point(H), -0.2), geometry_error);
    CHECK_THROWS_AS(make_paraball(E, 0.1, 0.1), geometry_error);
    CHECK_THROWS_AS(make_padded({}, 0.3), geometry_error);
    CHECK_THROWS_AS(make_padded({geodesic_from_ideal_angles(H, -0.5, 0.5)}, 0.0),
                    geometry_error);
    // crossing supporting lines are rejected
    CHECK_THROWS_AS(make_padded({geodesic_from_ideal_angles(H, pi, 0.0),
                                 geodesic_from_ideal_angles(H, -pi / 2, pi / 2)},
                                0.3),
                    geometry_error);
    // overlapping outer caps are rejected
    CHECK_THROWS_AS(make_padded({geodesic_from_ideal_angles(H, -0.8, 0.8),
                                 geodesic_from_ideal_angles(H, -0.6, 0.6)},
                                0.3),
                    geometry_error);
}

TEST_CASE("membership and signed distance: disks") {
    for (SpaceKind sp : {H, S, E}) {
        Point c = step_from(base_point(sp), 0.3);
        Region d = make_disk(c, 0.8);
        CHECK(contains(d, c) == Containment::interior);
        CHECK(contains(d, step_from(c, 0.799)) == Containment::interior);
        CHECK(contains(d, step_from(c, 0.8)) == Containment::boundary);
        CHECK(contains(d, step_from(c, 0.801)) == Containment::outside);
        // the signed distance is the exact metric quantity
        Point p = step_from(c, 1.3, 1);
        CHECK(std::fabs(region_signed_distance(d, p) - 0.5) < 1e-12);
        CHECK(std::fabs(region_signed_distance(d, c) + 0.8) < 1e-12);
        CHECK(region_member(d, region_anchor(d)));
    }
}

TEST_CASE("membership oracle: paraball footprint disk") {
    // in the conformal chart a horoball is the Euclidean disk spanned by the
    // apex and the ideal point; compare membership decisions
    double th = 0.8, h = -0.2;
    Region pb = make_paraball(H, th, h);
    Vec u(std::cos(th), std::sin(th));
    Vec apex = u * std::tanh(h / 2);
    Vec fc = (apex + u) * 0.5;
    double fr = norm(u - apex) * 0.5;
    Rng rng(606u);
    int checked = 0;
    for (int i = 0; i < 4000; ++i) {
        double rho = std::sqrt(rng.unit()) * 0.995;
        double phi = rng.angle();
        Vec xy(rho * std::cos(phi), rho * std::sin(phi));
        Point p = from_chart(ChartKind::poincare, H, xy);
        if (std::fabs(region_signed_distance(pb, p)) < 1e-6) continue;  // off the band
        bool want = norm(xy - fc) < fr;
        CHECK(region_member(pb, p) == want);
        ++checked;
    }
    CHECK(checked > 3500);
}

TEST_CASE("membership: padded region equals the parallel-domain definition") {
    Geodesic g1 = geodesic_from_ideal_angles(H, -0.9, 0.9);
    Geodesic g2 = geodesic_from_ideal_angles(H, pi - 0.5, pi + 0.5);
    double lambda = 0.4;
    Region K = make_padded({g1, g2}, lambda);
    Rng rng(707u);
    for (int i = 0; i < 2000; ++i) {
        double rho = std::sqrt(rng.unit()) * 0.99;
        double phi = rng.angle();
        Point p = from_chart(ChartKind::poincare, H, Vec(rho * std::cos(phi), rho * std::sin(phi)));
        // distance to the core slab: only the padded side of each line counts
        double defect = 0;
        for (const Geodesic* g : {&g1, &g2})
            defect = std::max(defect, -signed_geodesic_distance(*g, p));
        if (std::fabs(defect - lambda) < 1e-7) continue;
        CHECK(region_member(K, p) == (defect < lambda));
    }
    // boundary components: one hypercycle per core line at offset lambda
    auto comps = boundary_components(K);
    REQUIRE(comps.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(comps[i].kind == CycleKind::hypercycle);
        CHECK(comps[i].offset == lambda);
        CHECK(same_geodesic(comps[i].base, i == 0 ? g1 : g2, 1e-9));
    }
}

TEST_CASE("ideal sets") {
    CHECK(ideal_set(make_disk(base_point(H), 1.0)).empty());
    CHECK(ideal_set(make_disk(base_point(E), 1.0)).empty());

    IdealSet ps = ideal_set(make_paraball(H, 1.3, 0.2));
    CHECK(ideal_component_count(ps) == 1);
    CHECK(ideal_set_contains(ps, 1.3));
    CHECK(!ideal_set_contains(ps, 1.4));

    // halfplane on the positive side of (-1, 1): the cap away from angle 0
    IdealSet hs = ideal_set(make_halfplane(geodesic_from_ideal_angles(H, -1.0, 1.0)));
    CHECK(ideal_component_count(hs) == 1);
    CHECK(ideal_set_contains(hs, pi));
    CHECK(!ideal_set_contains(hs, 0.0));
    CHECK(ideal_set_contains(hs, 1.0));  // endpoint of the closed trace

    // two-component padded region: two free arcs
    Region K = construct_two_component_region(H, 2.2, 0.3, Isometry::identity(H));
    CHECK(ideal_component_count(ideal_set(K)) == 2);

    // intersections of ideal sets
    IdealSet a, b;
    a.arcs = {{0.0, 1.0}};
    b.arcs = {{0.5, 1.0}};
    IdealSet ab = intersect_ideal_sets(a, b);
    CHECK(ideal_component_count(ab) == 1);
    CHECK(ideal_set_contains(ab, 0.7));
    CHECK(!ideal_set_contains(ab, 0.2));
    CHECK(!ideal_set_contains(ab, 1.2));
    IdealSet full;
    full.full = true;
    IdealSet af = intersect_ideal_sets(a, full);
    CHECK(ideal_set_contains(af, 0.3));
    // disjoint arcs meet in nothing
    IdealSet c;
    c.arcs = {{2.0, 0.5}};
    CHECK(intersect_ideal_sets(a, c).empty());
    // closed arcs touching at an endpoint meet in that single point
    IdealSet d;
    d.arcs = {{1.0, 0.8}};
    IdealSet ad = intersect_ideal_sets(a, d);
    CHECK(ideal_component_count(ad) == 1);
    CHECK(ideal_set_contains(ad, 1.0));
    CHECK(!ideal_set_contains(ad, 1.1));
}

TEST_CASE("lens of two overlapping disks") {
    Point c1 = base_point(H);
    Point c2 = step_from(c1, 1.0);
    auto res = intersect_regions(make_disk(c1, 0.8), make_disk(c2, 0.8));
    CHECK(res.kind == IntersectionKind::compact);
    REQUIRE(res.polygon);
    REQUIRE(res.polygon->arcs.size() == 2);
    for (const auto& v : res.polygon->vertices) {
        CHECK(std::fabs(distance(c1, v) - 0.8) < 1e-9);
        CHECK(std::fabs(distance(c2, v) - 0.8) < 1e-9);
    }
    CHECK(res.polygon->arcs[0].owner != res.polygon->arcs[1].owner);
    Point m0 = arc_point(res.polygon->arcs[0], 0.5);
    CHECK(contains(make_disk(c1, 0.8), m0) != Containment::outside);
    CHECK(contains(make_disk(c2, 0.8), m0) != Containment::outside);
    double diam = polygon_diameter(*res.polygon);
    CHECK(diam > 0.1);
    CHECK(diam < 1.7);

    // vertex indices are consistent with the vertex list
    for (size_t i = 0; i < res.polygon->arcs.size(); ++i) {
        const auto& arc = res.polygon->arcs[i];
        CHECK(points_close(arc_point(arc, 0.0),
                           res.polygon->vertices[static_cast<size_t>(arc.v_begin)], 1e-9));
        CHECK(points_close(arc_point(arc, 1.0),
                           res.polygon->vertices[static_cast<size_t>(arc.v_end)], 1e-9));
    }
}

TEST_CASE("polygon membership equals region conjunction (sampling)") {
    Point c1 = base_point(H);
    Point c2 = step_from(c1, 1.0);
    Region A = make_disk(c1, 0.8), B = make_disk(c2, 0.8);
    auto res = intersect_regions(A, B);
    REQUIRE(res.kind == IntersectionKind::compact);
    Rng rng(808u);
    int inside_seen = 0;
    for (int i = 0; i < 10000; ++i) {
        double rho = std::sqrt(rng.unit()) * 0.9;
        double phi = rng.angle();
        Point p = from_chart(ChartKind::poincare, H, Vec(rho * std::cos(phi), rho * std::sin(phi)));
        double margin = std::max(region_signed_distance(A, p), region_signed_distance(B, p));
        if (std::fabs(margin) < 1e-7) continue;
        bool conj = region_member(A, p) && region_member(B, p);
        CHECK(polygon_contains(*res.polygon, p, 1e-9) == conj);
        inside_seen += conj;
    }
    CHECK(inside_seen > 500);
}

TEST_CASE("compact intersections are convex") {
    Point c1 = base_point(H);
    Point c2 = step_from(c1, 1.0);
    auto res = intersect_regions(make_disk(c1, 0.9), make_disk(c2, 0.9));
    REQUIRE(res.kind == IntersectionKind::compact);
    auto samples = polygon_boundary_samples(*res.polygon, 24);
    for (size_t i = 0; i < samples.size(); i += 5)
        for (size_t j = i + 1; j < samples.size(); j += 7) {
            Point m = geodesic_point(samples[i], samples[j], 0.5);
            CHECK(polygon_contains(*res.polygon, m, 1e-8));
        }
}

TEST_CASE("equal disks give the canonical two-arc split") {
    Point c1 = base_point(E);
    auto res = intersect_regions(make_disk(c1, 1.0), make_disk(c1, 1.0));
    CHECK(res.kind == IntersectionKind::compact);
    REQUIRE(res.polygon);
    CHECK(res.polygon->arcs.size() == 2);
    CHECK(res.polygon->arcs[0].owner != res.polygon->arcs[1].owner);
}

TEST_CASE("disjoint, tangent and internally tangent disks") {
    Point c1 = make_point(E, Vec(0.0, 0.0));
    Point c2 = make_point(E, Vec(3.0, 0.0));
    CHECK(intersect_regions(make_disk(c1, 1.0), make_disk(c2, 1.0)).kind ==
          IntersectionKind::empty);
    CHECK_THROWS_AS(intersect_regions(make_disk(c1, 1.5), make_disk(c2, 1.5)),
                    degenerate_contact_error);
    CHECK_THROWS_AS(intersect_regions(make_disk(c1, 2.0),
                                      make_disk(make_point(E, Vec(1.0, 0.0)), 1.0)),
                    degenerate_vertex_error);
}

TEST_CASE("nested disks trace the inner circle") {
    Point c1 = make_point(E, Vec(0.0, 0.0));
    Point c2 = make_point(E, Vec(0.3, 0.0));
    auto res = intersect_regions(make_disk(c1, 2.0), make_disk(c2, 0.5));
    CHECK(res.kind == IntersectionKind::compact);
    REQUIRE(res.polygon);
    CHECK(res.polygon->arcs.size() == 2);
    CHECK(res.polygon->arcs[0].owner == Owner::b);
    CHECK(res.polygon->arcs[1].owner == Owner::b);
}

TEST_CASE("paraball with itself and nested paraballs") {
    Region pb = make_paraball(H, 0.7, 0.2);
    auto res = intersect_regions(pb, pb);
    CHECK(res.kind == IntersectionKind::noncompact);
    CHECK(ideal_component_count(res.ideal) == 1);
    CHECK(ideal_set_contains(res.ideal, 0.7));
    Region deeper = make_paraball(H, 0.7, -0.5);
    CHECK(intersect_regions(pb, deeper).kind == IntersectionKind::noncompact);
}

TEST_CASE("half-plane pairs") {
    Region h1 = make_halfplane(geodesic_from_ideal_angles(H, -1.0, 1.0));
    Region h2 = make_halfplane(geodesic_from_ideal_angles(H, pi - 1.0, pi + 1.0));
    CHECK(intersect_regions(h1, h2).kind == IntersectionKind::noncompact);
    Region h3 = make_halfplane(geodesic_from_ideal_angles(H, pi / 2 - 1.0, pi / 2 + 1.0));
    CHECK(intersect_regions(h1, h3).kind == IntersectionKind::noncompact);
    // opposite half-planes share only the line: contact without interior
    Geodesic g = geodesic_from_ideal_angles(H, 0.3, 2.1);
    CHECK_THROWS_AS(intersect_regions(make_halfplane(g), make_halfplane(reversed(g))),
                    degenerate_contact_error);
}

TEST_CASE("two-component construction and the four-arc kernel") {
    double alpha = 2.2, lambda = 0.3;
    Isometry id = Isometry::identity(H);
    Region K = construct_two_component_region(H, alpha, lambda, id);
    CHECK(K.core.size() == 2);
    CHECK(boundary_components(K).size() == 2);
    CHECK(contains(K, base_point(H)) == Containment::interior);
    CHECK(ideal_component_count(ideal_set(K)) == 2);
    // the construction is centrally symmetric about the pose origin by design
    Region K_ref = transform_region(point_reflection(base_point(H)), K);
    CHECK(region_equal(K_ref, K, 1e-9));
    // mirror base lines: each core's ideal endpoints are the antipodes of the
    // other's
    auto e0 = ideal_points(boundary_components(K)[0]);
    auto e1 = ideal_points(boundary_components(K)[1]);
    REQUIRE(e0.size() == 2);
    REQUIRE(e1.size() == 2);
    double m0 = std::min(angle_gap(e0[0] + pi, e1[0]), angle_gap(e0[0] + pi, e1[1]));
    double m1 = std::min(angle_gap(e0[1] + pi, e1[0]), angle_gap(e0[1] + pi, e1[1]));
    CHECK(m0 < 1e-9);
    CHECK(m1 < 1e-9);

    Region L = transform_region(rotation_about_point(base_point(H), pi / 2), K);
    auto res = intersect_regions(K, L);
    CHECK(res.kind == IntersectionKind::compact);
    REQUIRE(res.polygon);
    CHECK(res.polygon->arcs.size() == 4);
    CHECK(arcs_interleave(*res.polygon));
    for (const auto& a : res.polygon->arcs) CHECK(a.cycle.kind == CycleKind::hypercycle);
    // owners alternate around the kernel
    for (size_t i = 0; i < 4; ++i)
        CHECK(res.polygon->arcs[i].owner != res.polygon->arcs[(i + 1) % 4].owner);

    // below the straight-angle threshold the free arcs meet: noncompact
    Region K2 = construct_two_component_region(H, 1.2, lambda, id);
    Region L2 = transform_region(rotation_about_point(base_point(H), pi / 2), K2);
    CHECK(intersect_regions(K2, L2).kind == IntersectionKind::noncompact);
}

TEST_CASE("reduction to single components") {
    Tolerances tol = default_tolerances();
    Geodesic gK1 = geodesic_from_ideal_angles(H, -0.9, 0.9);
    Geodesic gK2 = geodesic_from_ideal_angles(H, pi - 0.5, pi + 0.5);
    Region K = make_padded({gK1, gK2}, 0.4);
    Geodesic gL1 = geodesic_from_ideal_angles(H, 0.5, -0.5);
    Geodesic gL2 = geodesic_from_ideal_angles(H, -0.2, 0.2);
    Region L = make_padded({gL1, gL2}, 0.4);
    auto [K1, L1] = reduce_to_single_components(K, 0, L, 0, tol);
    CHECK(K1.core.size() == 1);
    CHECK(L1.core.size() == 1);
    CHECK(same_geodesic(K1.core[0], gK1, 1e-9));
    CHECK(same_geodesic(L1.core[0], gL1, 1e-9));
    CHECK(intersect_regions(K1, L1).kind == IntersectionKind::compact);

    // membership sampling: the full intersection equals the reduced one
    Rng rng(12345u);
    int disagree = 0;
    for (int i = 0; i < 20000; ++i) {
        double rho = std::sqrt(rng.unit()) * 0.999;
        double phi = rng.angle();
        Point p = from_chart(ChartKind::poincare, H, Vec(rho * std::cos(phi), rho * std::sin(phi)));
        bool in_full = region_member(K, p) && region_member(L, p);
        bool in_red = region_member(K1, p) && region_member(L1, p);
        if (in_full != in_red) ++disagree;
    }
    CHECK(disagree == 0);

    // crossing bases violate clause 1
    Region C1 = construct_two_component_region(H, 2.2, 0.3, Isometry::identity(H));
    Region C2 = transform_region(rotation_about_point(base_point(H), 0.1), C1);
    bool clause1 = false;
    try {
        reduce_to_single_components(C1, 0, C2, 0, tol);
    } catch (const hypothesis_violated_error& e) {
        clause1 = (e.clause == 1);
    }
    CHECK(clause1);
    // components facing away violate clause 2
    bool clause2 = false;
    try {
        reduce_to_single_components(K, 1, L, 0, tol);
    } catch (const hypothesis_violated_error& e) {
        clause2 = (e.clause == 2);
    }
    CHECK(clause2);
}

TEST_CASE("spherical lune") {
    Point n1 = make_point(S, Vec(1.0, 0.0, 0.0));
    Point n2 = make_point(S, Vec(0.0, 1.0, 0.0));
    auto res = intersect_regions(make_disk(n1, pi / 2), make_disk(n2, pi / 2));
    CHECK(res.kind == IntersectionKind::compact);
    REQUIRE(res.polygon);
    CHECK(res.polygon->arcs.size() == 2);
    CHECK(std::fabs(distance(res.polygon->vertices[0], res.polygon->vertices[1]) - pi) < 1e-9);
    // antipodal hemispheres: closures share the full boundary circle only
    CHECK_THROWS_AS(intersect_regions(make_disk(n1, pi / 2),
                                      make_disk(make_point(S, Vec(-1.0, 0.0, 0.0)), pi / 2)),
                    degenerate_contact_error);
}

TEST_CASE("random disk pairs: vertices on both circles") {
    for (SpaceKind sp : {S, E, H}) {
        Rng rng(777u);
        int seen = 0;
        for (int i = 0; i < 200; ++i) {
            Isometry f = random_isometry(sp, rng, 1.0);
            Isometry g = random_isometry(sp, rng, 1.0);
            double r1 = 0.3 + 0.9 * rng.unit();
            double r2 = 0.3 + 0.9 * rng.unit();
            if (sp.curv == CurvatureSign::spherical) {
                r1 *= 0.8;
                r2 *= 0.8;
            }
            Point c1 = apply(f, base_point(sp));
            Point c2 = apply(g, base_point(sp));
            IntersectionResult res;
            try {
                res = intersect_regions(make_disk(c1, r1), make_disk(c2, r2));
            } catch (const geometry_error&) {
                continue;
            }
            if (res.kind != IntersectionKind::compact) continue;
            if (res.polygon->arcs.size() != 2) continue;
            if (res.polygon->arcs[0].owner != res.polygon->arcs[1].owner) {
                ++seen;
                for (const auto& v : res.polygon->vertices) {
                    CHECK(std::fabs(distance(c1, v) - r1) < 1e-8);
                    CHECK(std::fabs(distance(c2, v) - r2) < 1e-8);
                }
            } else {
                bool inner_a = res.polygon->arcs[0].owner == Owner::a;
                const Point& cc = inner_a ? c1 : c2;
                double rr = inner_a ? r1 : r2;
                CHECK(distance(c1, c2) < std::fabs(r1 - r2) + 1e-9);
                for (const auto& v : res.polygon->vertices)
                    CHECK(std::fabs(distance(cc, v) - rr) < 1e-8);
            }
        }
        CHECK(seen > 40);
    }
}

TEST_CASE("hull of two disks") {
    for (SpaceKind sp : {S, E, H}) {
        Point m1 = base_point(sp);
        Point m2 = step_from(m1, 1.2);
        double r1 = 0.4, r2 = 0.7;
        HullBoundary hull = hull_union_disks(make_disk(m1, r1), make_disk(m2, r2));
        CHECK(!hull.single_circle);
        for (const Geodesic* g : {&hull.line_1, &hull.line_2}) {
            // outer supporting line: both centers on the region side at their radii
            CHECK(std::fabs(signed_geodesic_distance(*g, m1) - r1) < 1e-9);
            CHECK(std::fabs(signed_geodesic_distance(*g, m2) - r2) < 1e-9);
        }
        // tangency points lie on the circles and the lines
        CHECK(std::fabs(distance(hull.a1, m1) - r1) < 1e-9);
        CHECK(std::fabs(distance(hull.a2, m1) - r1) < 1e-9);
        CHECK(std::fabs(distance(hull.b1, m2) - r2) < 1e-9);
        CHECK(std::fabs(distance(hull.b2, m2) - r2) < 1e-9);
        CHECK(std::fabs(signed_geodesic_distance(hull.line_1, hull.a1)) < 1e-9);
        CHECK(std::fabs(signed_geodesic_distance(hull.line_1, hull.b1)) < 1e-9);
        CHECK(std::fabs(signed_geodesic_distance(hull.line_2, hull.a2)) < 1e-9);
        CHECK(std::fabs(signed_geodesic_distance(hull.line_2, hull.b2)) < 1e-9);
        CHECK_THROWS_AS(hull_union_disks(make_disk(m1, 1.2),
                                         make_disk(step_from(m1, 0.2), 0.3)),
                        nested_disks_error);
    }
    // congruent disks: equal tangency spans on both sides
    Point m1 = base_point(H);
    Point m2 = step_from(m1, 1.2);
    HullBoundary hull = hull_union_disks(make_disk(m1, 0.5), make_disk(m2, 0.5));
    CHECK(std::fabs(distance(hull.a1, hull.b1) - distance(hull.a2, hull.b2)) < 1e-9);
}

TEST_CASE("mixed kinds") {
    Region d = make_disk(base_point(H), 1.0);
    Region h = make_halfplane(geodesic_from_ideal_angles(H, -pi / 2, pi / 2));
    auto res = intersect_regions(d, h);
    CHECK(res.kind == IntersectionKind::compact);
    REQUIRE(res.polygon);
    CHECK(res.polygon->arcs.size() == 2);
    // one arc from each owner: a circle arc and a geodesic arc
    CycleKind k0 = res.polygon->arcs[0].cycle.kind;
    CycleKind k1 = res.polygon->arcs[1].cycle.kind;
    CHECK(((k0 == CycleKind::circle && k1 == CycleKind::geodesic) ||
           (k0 == CycleKind::geodesic && k1 == CycleKind::circle)));

    Region K = construct_two_component_region(H, 2.2, 0.3, Isometry::identity(H));
    Region small = make_disk(base_point(H), 0.2);
    auto res2 = intersect_regions(K, small);
    CHECK(res2.kind == IntersectionKind::compact);
    REQUIRE(res2.polygon);
    CHECK(res2.polygon->arcs.size() == 2);
}

TEST_CASE("region equality and transforms") {
    Rng rng(313u);
    Isometry f = random_isometry(H, rng, 0.8);
    Region d = make_disk(step_from(base_point(H), 0.4), 0.6);
    Region K = construct_two_component_region(H, 2.0, 0.25, Isometry::identity(H));
    Region pb = make_paraball(H, 1.1, 0.3);
    Region hp = make_halfplane(geodesic_from_ideal_angles(H, 0.1, 1.3));
    for (const Region* r : {&d, &K, &pb, &hp}) {
        Region t = transform_region(f, *r);
        CHECK(t.kind == r->kind);
        CHECK(!region_equal(t, *r, 1e-9));
        CHECK(region_equal(transform_region(inverse(f), t), *r, 1e-8));
        // anchors map along
        CHECK(contains(t, apply(f, region_anchor(*r))) != Containment::outside);
    }
    // transform_polygon carries vertices along
    auto res = intersect_regions(make_disk(base_point(H), 0.8),
                                 make_disk(step_from(base_point(H), 1.0), 0.8));
    REQUIRE(res.kind == IntersectionKind::compact);
    ArcPolygon moved = transform_polygon(f, *res.polygon);
    for (size_t i = 0; i < moved.vertices.size(); ++i)
        CHECK(points_close(moved.vertices[i], apply(f, res.polygon->vertices[i]), 1e-9));
    CHECK(std::fabs(polygon_diameter(moved) - polygon_diameter(*res.polygon)) < 1e-8);
}
