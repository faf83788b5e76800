// Hypersphere-bounded convex regions and their intersections.
//
// Region kinds: geodesic disks (any space), paraballs (horoball bounded by a
// paracycle), parallel domains of half-plane intersections (each boundary
// component a hypercycle at distance lambda over one supporting line), and
// half-planes. Supporting lines of a parallel-domain core never cross at a
// finite point, so every boundary component is a complete cycle.
//
// Intersections of two regions are traced in the conformal chart as arc
// polygons with strictly alternating owners.
#pragma once

#include <optional>
#include <vector>

#include "ccg/cycles.hpp"

namespace ccg {

// ---------------------------------------------------------------------------
// Ideal boundary subsets (hyperbolic plane only)

// Closed arc starting at angle `lo`, extending counterclockwise by `len`
// (len = 0 encodes a single boundary point).
struct IdealArc {
    double lo = 0;
    double len = 0;
};

struct IdealSet {
    bool full = false;
    std::vector<IdealArc> arcs;  // disjoint, sorted by lo

    bool empty() const { return !full && arcs.empty(); }
};

IdealSet intersect_ideal_sets(const IdealSet& a, const IdealSet& b);
bool ideal_set_contains(const IdealSet& s, double angle, double tol = 1e-9);
// Number of connected components (degenerate points count as components).
int ideal_component_count(const IdealSet& s);

// ---------------------------------------------------------------------------
// Regions

enum class RegionKind { disk, paraball, padded, halfplane };

struct Region {
    SpaceKind space;
    RegionKind kind = RegionKind::disk;

    Point center;        // disk
    double radius = 0;   // disk

    double ideal_angle = 0;  // paraball
    double horo_param = 0;   // paraball

    std::vector<Geodesic> core;  // padded: supporting lines, region side positive
    double lambda = 0;           // padded

    Geodesic boundary_line;  // halfplane: region on the positive side
};

Region make_disk(const Point& center, double radius);
Region make_paraball(const SpaceKind& space, double ideal_angle, double horo_param);
// Core lines must be pairwise non-crossing with disjoint outer caps.
Region make_padded(const std::vector<Geodesic>& core, double lambda);
Region make_halfplane(const Geodesic& boundary);

enum class Containment { interior, boundary, outside };

Containment contains(const Region& r, const Point& p,
                     const Tolerances& tol = default_tolerances());
// Signed distance to the region: negative inside, zero on the boundary.
double region_signed_distance(const Region& r, const Point& p);

// Complete boundary cycles, one per component.
std::vector<Cycle> boundary_components(const Region& r);

// Trace of the region's closure on the ideal boundary circle (hyperbolic).
IdealSet ideal_set(const Region& r);

// A point in the region's interior (used as a deterministic probe).
Point region_anchor(const Region& r);

Region transform_region(const Isometry& f, const Region& r);

bool region_equal(const Region& a, const Region& b, double tol);

// ---------------------------------------------------------------------------
// Arc polygons

enum class Owner { a, b };

struct PolygonArc {
    Cycle cycle;
    Owner owner = Owner::a;
    // Directed parameter interval along the traversal (interior on the left);
    // parameter midpoints are arclength midpoints.
    double t_begin = 0, t_end = 0;
    int v_begin = 0, v_end = 0;  // vertex indices
};

struct ArcPolygon {
    std::vector<PolygonArc> arcs;     // cyclic order, counterclockwise
    std::vector<Point> vertices;      // vertices[i] starts arcs[i]
};

// Point at fraction f (0..1) along a polygon arc.
Point arc_point(const PolygonArc& arc, double f);
// Vertices plus arclength midpoints of every arc.
std::vector<Point> polygon_sample_points(const ArcPolygon& poly);
std::vector<Point> polygon_boundary_samples(const ArcPolygon& poly, int per_arc);
double polygon_diameter(const ArcPolygon& poly);

// Adjacent hypercycle arcs: their base lines' four ideal points must be
// pairwise distinct and separate each other around the boundary circle.
bool arcs_interleave(const ArcPolygon& poly);

ArcPolygon transform_polygon(const Isometry& f, const ArcPolygon& poly);

// ---------------------------------------------------------------------------
// Intersection

enum class IntersectionKind { empty, empty_interior, compact, noncompact };

struct IntersectionResult {
    IntersectionKind kind = IntersectionKind::empty;
    std::optional<ArcPolygon> polygon;  // compact case
    IdealSet ideal;                     // noncompact case (common ideal trace)
};

// Classifies and traces the intersection of two convex regions. Throws
// degenerate_contact_error when closures touch without common interior and
// degenerate_vertex_error for non-generic boundary contact (a vertex on a
// third component, tangential crossings).
IntersectionResult intersect_regions(const Region& a, const Region& b,
                                     const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Constructions

// Two parallel-domain regions with one selected boundary component each,
// whose base lines share no finite point and at most one ideal point, and
// whose cores face away from each other: the intersection of the two regions
// equals the intersection of the single-component regions returned here.
// Throws hypothesis_violated_error (clause 1 or 2) otherwise.
std::pair<Region, Region> reduce_to_single_components(const Region& a, int comp_a,
                                                      const Region& b, int comp_b,
                                                      const Tolerances& tol = default_tolerances());

// Centrally symmetric two-component parallel domain: the two base lines are
// mirror chords whose endpoint diameters cross at the pose image of the
// origin with opening angle `alpha` (0 < alpha < pi).
Region construct_two_component_region(const SpaceKind& space, double alpha, double lambda,
                                      const Isometry& pose);

// ---------------------------------------------------------------------------
// Hulls

struct HullBoundary {
    bool single_circle = false;
    Cycle circle_a, circle_b;
    Geodesic line_1, line_2;     // outer supporting lines
    Point a1, a2, b1, b2;        // tangency points: line_1/line_2 on each circle
};

// Boundary of the closed convex hull of two disks (two arcs plus two outer
// supporting segments). Throws nested_disks_error when one disk contains the
// other (no outer supporting line exists).
HullBoundary hull_union_disks(const Region& disk_a, const Region& disk_b);

}  // namespace ccg
