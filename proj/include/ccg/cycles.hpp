// Cycles: the constant geodesic-curvature curves of each plane.
//   sphere     : circles (radius in (0, pi/2]) and great circles
//   flat plane : circles and lines
//   hyperbolic : circles, paracycles, hypercycles (distance lines), geodesics
//
// Every hyperbolic cycle appears in the conformal disk as a Euclidean circle
// or line (its "footprint"); the same holds in the stereographic chart of the
// sphere. All cycle-cycle intersection work happens on footprints.
#pragma once

#include <vector>

#include "ccg/space_core.hpp"

namespace ccg {

enum class CycleKind { circle, paracycle, hypercycle, geodesic };

struct Cycle {
    SpaceKind space;
    CycleKind kind = CycleKind::geodesic;

    // circle
    Point center;
    double radius = 0;

    // paracycle: boundary angle of the ideal point plus the signed distance
    // from the chart origin to the cycle's point on the axis through the
    // ideal point (positive toward the ideal point)
    double ideal_angle = 0;
    double horo_param = 0;

    // hypercycle: base line, distance offset > 0, side (+1 = positive side
    // of the base orientation); geodesic kind uses `base` alone
    Geodesic base;
    double offset = 0;
    int side = +1;
};

Cycle make_circle(const Point& center, double radius);
Cycle make_paracycle(const SpaceKind& space, double ideal_angle, double horo_param);
Cycle make_hypercycle(const Geodesic& base, double offset, int side);
Cycle make_geodesic_cycle(const Geodesic& line);

// Point of the paracycle on its axis (the parameter-zero point).
Point paracycle_apex(const Cycle& c);

// Geodesic curvature (nonnegative): cot r / coth r / 1 / tanh offset / 0.
double curvature(const Cycle& c);

// Three-point turning-angle estimate at arclength step h; h in (1e-6, 1e-2).
double finite_difference_curvature(const Cycle& c, double step);

// Boundary angles of the cycle's ideal points (hyperbolic cycles only):
// circle -> {}, paracycle -> {angle}, hypercycle/geodesic -> both ends.
std::vector<double> ideal_points(const Cycle& c);

// Constant-speed parametrization. Circles use the angle around the center
// (period 2*pi, arclength = angle * metric_sine(radius)); hypercycles use the
// arclength along the base line (speed cosh(offset)); paracycles and
// geodesics are parametrized by exact arclength. Parameter midpoints are
// arclength midpoints for every kind.
Point cycle_point(const Cycle& c, double s);
double cycle_parameter_of(const Cycle& c, const Point& p);
// Period of the parameter (2*pi for circles, 0 for unbounded cycles).
double cycle_period(const Cycle& c);
// Parameter increment corresponding to an arclength step from parameter 0.
double step_to_parameter(const Cycle& c, double s);

// Unsigned / signed distance from a point to the cycle. The signed variant is
// negative on the convex side (inside the disk / horoball / hull of the
// hypercycle, left of a geodesic).
double distance_to_cycle(const Cycle& c, const Point& p);
double signed_distance_to_cycle(const Cycle& c, const Point& p);

// Euclidean footprint of a cycle in the space's conformal chart.
struct Footprint {
    bool is_line = false;
    Vec center;       // circle form
    double radius = 0;
    Vec point;        // line form: base point
    Vec dir;          // line form: unit direction
};

// Chart footprint in the conformal chart of the cycle's own space.
Footprint chart_footprint(const Cycle& c);
// The hyperbolic case of the above (the collinear/conformal model pair the
// library exposes); throws for other spaces.
Footprint conformal_footprint(const Cycle& c);

// Finite intersection points of two cycles (0, 1 or 2). Tangency is reported
// as a single point when the footprint discriminant is below the tangency
// threshold. Throws coincident_cycles_error for equal cycles.
std::vector<Point> intersect_cycles(const Cycle& a, const Cycle& b,
                                    const Tolerances& tol = default_tolerances());

Cycle transform_cycle(const Isometry& f, const Cycle& c);

// Same kind and matching metric invariants (radius / offset); any two
// paracycles are congruent.
bool congruent_cycles(const Cycle& a, const Cycle& b, double tol);

bool same_cycle(const Cycle& a, const Cycle& b, double tol);

// Circumference sine of the space: sin r, r, sinh r.
double metric_sine(const SpaceKind& space, double r);

}  // namespace ccg
