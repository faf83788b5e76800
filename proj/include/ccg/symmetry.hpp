// Central-symmetry detection. Candidate centres come from finite geometric
// constructions (midpoints of centres, midpoint of the common perpendicular,
// paracycle axis chords) and are then verified by reflecting boundary
// samples; a minimal-enclosing-ball oracle cross-checks reported centres.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccg/regions.hpp"

namespace ccg {

enum class CenterLocus { unique_point, line_locus, none };

struct CandidateCenter {
    CenterLocus kind = CenterLocus::none;
    Point point;    // unique_point
    Geodesic line;  // line_locus: every point of the line is a centre
};

// Trichotomy on the total number of ideal points of the two base lines:
// 2 (same base) -> line_locus, 3 (asymptotic bases) -> none,
// 4 (ultraparallel bases) -> midpoint of the common perpendicular.
// Crossing bases throw common_finite_point_error; mismatched offsets throw
// not_congruent_error. Accepts hypercycles and geodesics (offset 0).
CandidateCenter candidate_center_two_hypercycles(
    const Cycle& h1, const Cycle& h2,
    const Tolerances& tol = default_tolerances());

// Kind-dispatched candidate for a reflection mapping cycle a onto cycle b:
// congruent circles -> midpoint of the centres; paracycles -> midpoint of
// the chord cut on the geodesic joining their ideal points; hypercycles and
// geodesics -> the trichotomy above.
CandidateCenter candidate_center_pair(const Cycle& a, const Cycle& b,
                                      const Tolerances& tol = default_tolerances());

enum class SymmetryVerdict { symmetric, not_symmetric, indeterminate };
enum class SymmetryMethod { disk_midpoint, arc_pairing, meb_cross_check };

struct SymmetryReport {
    SymmetryVerdict verdict = SymmetryVerdict::not_symmetric;
    std::optional<Point> center;
    double residual = 0;
    std::optional<int> pairing;  // verified cyclic shift of the arc pairing
    SymmetryMethod method = SymmetryMethod::arc_pairing;
    std::string certificate;
};

// Scan all n cyclic arc pairings; derive the centre candidate from the cycle
// pair (falling back to the vertex-orbit midpoint when the cycles alone
// leave a line locus), verify every arc against its partner at sampled
// fractions, and report the first pairing below tol. Residuals in
// [tol, 10*tol] yield an indeterminate verdict, never a silent class.
SymmetryReport is_centrally_symmetric_polygon(const ArcPolygon& poly, double tol);

// Certificate path for whole regions: disks are symmetric about the centre;
// paraballs (one ideal point), half-planes and single-component padded
// regions are never symmetric; two-component padded regions go through the
// hypercycle trichotomy plus reflection verification. More components are
// unsupported (intersect and use the polygon path).
SymmetryReport is_centrally_symmetric_region(const Region& r, double tol);

struct Ball {
    Point center;
    double radius = 0;
    std::vector<Point> support;  // input points at distance == radius
};

// Minimal enclosing ball by recursive boundary-set descent with exact one,
// two and three-support solves (ambient circumcenter on curved spaces). On
// the sphere the point set must fit in an open hemisphere.
Ball min_enclosing_ball(const std::vector<Point>& pts,
                        const Tolerances& tol = default_tolerances());

// The centre of the minimal ball of the polygon samples must coincide with
// the reported symmetry centre (requires report.verdict == symmetric).
bool meb_cross_check(const ArcPolygon& poly, const SymmetryReport& report);

}  // namespace ccg
