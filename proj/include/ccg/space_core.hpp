// Points, distances, geodesics, isometries and model charts for the three
// constant-curvature planes (and their dimension-3 siblings for ball tests).
//
// Ambient models: unit sphere in R^{d+1}; Euclidean R^d; hyperboloid sheet
// {<x,x> = -1, x0 > 0} in Minkowski space with form -x0^2 + x1^2 + ... .
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "ccg/core.hpp"

namespace ccg {

// ---------------------------------------------------------------------------
// Points

struct Point {
    SpaceKind space;
    Vec v;
};

// Residual of the ambient constraint (|x|^2 - 1, <x,x> + 1, or 0 for flat).
double point_residual(const Point& p);

// Projects back onto the model surface; cheap guard against drift.
Point renormalized(const Point& p);

Point make_point(const SpaceKind& space, const Vec& ambient);

// Base point of each model: sphere/hyperboloid apex (1,0,...,0), flat origin.
Point base_point(const SpaceKind& space);

bool points_close(const Point& p, const Point& q, double tol);

// ---------------------------------------------------------------------------
// Metric and exponential structure

// Geodesic distance; range [0, pi] on the sphere.
double distance(const Point& p, const Point& q);

// Point at parameter t of the unit-speed-independent interpolation from p to
// q (t = 0 -> p, t = 1 -> q). Throws antipodal_pair_error on the sphere when
// the segment is not unique.
Point geodesic_point(const Point& p, const Point& q, double t);

// Tangent vector at p pointing toward q with length distance(p, q), as an
// ambient vector in the tangent space of p.
Vec log_map(const Point& p, const Point& q);

// Point reached from p along tangent u (ambient coordinates, tangent at p).
Point exp_map(const Point& p, const Vec& u);

// Orthonormal tangent frame at p (dim vectors). In dimension 2 the frame is
// oriented so that rotating e1 toward e2 is the counterclockwise sense of the
// model charts.
std::vector<Vec> tangent_frame(const Point& p);

// Angle at apex between directions toward a and b, in [0, pi].
double angle_at(const Point& apex, const Point& a, const Point& b);

// ---------------------------------------------------------------------------
// Isometries

// Orientation-preserving congruence. Curved spaces: ambient linear map
// preserving the bilinear form (and the hyperboloid sheet). Flat space:
// rotation block plus translation vector.
struct Isometry {
    SpaceKind space;
    Mat linear;
    Vec translation;  // used by flat spaces only

    static Isometry identity(const SpaceKind& space);
};

Point apply(const Isometry& f, const Point& p);
Vec apply_tangent(const Isometry& f, const Vec& u);
Isometry compose(const Isometry& f, const Isometry& g);  // acts as f after g
Isometry inverse(const Isometry& f);

// Largest violation of the form-preservation constraint; 0 for exact members
// of the isometry group.
double isometry_residual(const Isometry& f);

// Rotation by pi about c (dimension 2 only, where it is sense-preserving).
Isometry point_reflection(const Point& c);

// Point image under the geodesic reflection through c; any dimension.
Point reflect_through_point(const Point& c, const Point& p);

// Rotation about a fixed point by an angle (dimension 2).
Isometry rotation_about_point(const Point& c, double angle);

struct Geodesic;  // below

// Translation shifting a geodesic along itself by arclength s (dimension 2;
// rotation about the poles on the sphere).
Isometry translation_along_geodesic(const Geodesic& g, double s);

// ---------------------------------------------------------------------------
// Geodesics (dimension 2)

// Unoriented support with an orientation convention:
//  - hyperbolic: ordered ideal endpoint angles (theta1 -> theta2) on the
//    boundary circle of the conformal disk; the "left" side of the travel
//    direction is the positive side.
//  - spherical: oriented great circle via its unit pole; positive side is the
//    open hemisphere around the pole.
//  - flat: oriented line {x : normal . x = offset} with unit left-normal;
//    positive side is {normal . x > offset}.
struct Geodesic {
    SpaceKind space;
    double theta1 = 0, theta2 = 0;  // hyperbolic
    Vec pole;                       // spherical
    Vec normal;                     // flat
    double offset = 0;              // flat
};

Geodesic geodesic_from_ideal_angles(const SpaceKind& space, double theta1, double theta2);
Geodesic geodesic_through_points(const Point& p, const Point& q);
// Geodesic through p with unit tangent direction u at p.
Geodesic geodesic_through_direction(const Point& p, const Vec& u);
Geodesic reversed(const Geodesic& g);

// Unit-speed parametrization; gamma(0) is the point closest to the model base
// point (hyperbolic/flat) or a fixed representative (sphere).
Point geodesic_at(const Geodesic& g, double u);
// Parameter of the orthogonal projection of p onto g.
double geodesic_parameter_of(const Geodesic& g, const Point& p);

// Signed distance to the geodesic, positive on the positive side.
double signed_geodesic_distance(const Geodesic& g, const Point& p);
Point foot_of_perpendicular(const Geodesic& g, const Point& p);

// Spacelike unit pole of a hyperbolic geodesic (internal but widely useful).
Vec hyperbolic_pole(const Geodesic& g);

// Whether two geodesics are the same unoriented line.
bool same_geodesic(const Geodesic& a, const Geodesic& b, double tol);

enum class GeodesicRelation { intersecting, asymptotic, ultraparallel };

// Classification plus data: intersecting -> common point; ultraparallel
// (hyperbolic) -> none here (see common_perpendicular).
struct GeodesicMeeting {
    GeodesicRelation relation;
    std::optional<Point> point;
};

GeodesicMeeting meet_geodesics(const Geodesic& a, const Geodesic& b,
                               const Tolerances& tol = default_tolerances());

struct PerpendicularSegment {
    Point foot_a, foot_b;
    double length;
    Geodesic line;  // the common perpendicular itself, oriented foot_a -> foot_b
};

// Common perpendicular of two ultraparallel hyperbolic lines. Throws
// lines_intersect_error / lines_asymptotic_error otherwise.
PerpendicularSegment common_perpendicular(const Geodesic& a, const Geodesic& b,
                                          const Tolerances& tol = default_tolerances());

// Perpendicular geodesic through p (p need not lie on g), oriented so it
// crosses g from the negative to the positive side.
Geodesic perpendicular_through(const Geodesic& g, const Point& p);

// Ideal endpoint angles of a hyperbolic geodesic through two points.
std::pair<double, double> ideal_angles_through(const Point& p, const Point& q);

// Action of a hyperbolic isometry on boundary angles.
double boundary_angle_image(const Isometry& f, double theta);

// ---------------------------------------------------------------------------
// Model charts

enum class ChartKind {
    klein,          // hyperbolic collinear (geodesics -> chords)
    poincare,       // hyperbolic conformal (cycles -> circles/lines)
    gnomonic,       // spherical collinear (domain: open hemisphere x0 > 0)
    stereographic,  // spherical conformal (domain: sphere minus (-1,0,0))
    identity        // flat
};

// Natural conformal chart of each space (poincare / stereographic / identity).
ChartKind conformal_chart(const SpaceKind& space);

Vec to_chart(ChartKind chart, const Point& p);           // 2-vector
Point from_chart(ChartKind chart, const SpaceKind& space, const Vec& xy);

// ---------------------------------------------------------------------------
// Deterministic randomness

// Thin wrapper so that double streams are reproducible bit-for-bit: doubles
// are derived from raw 64-bit draws, never from distribution objects.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double unit() {  // [0, 1)
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    double angle() { return uniform(0.0, 2 * pi); }
    std::uint64_t raw() { return gen(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen() % n); }
};

// Stable 64-bit FNV-1a; used to derive per-experiment seeds from a master
// seed and the experiment name.
std::uint64_t fnv1a64(const std::string& s);
std::uint64_t derive_seed(std::uint64_t master, const std::string& name);

// Random orientation-preserving isometry moving the model base point at most
// radius_bound (radius_bound = 0 -> rotation fixing the base point).
Isometry random_isometry(const SpaceKind& space, Rng& rng, double radius_bound);

}  // namespace ccg
