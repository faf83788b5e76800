#include "ccg/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace ccg {

namespace {

bool is_hyperbolic(const SpaceKind& s) {
    return s.curved() && s.curv == CurvatureSign::hyperbolic;
}

Vec rot90(const Vec& v) { return Vec(-v[1], v[0]); }

bool lex_less(const Vec& p, const Vec& q) {
    if (std::fabs(p[0] - q[0]) > 1e-12) return p[0] < q[0];
    return p[1] < q[1] - 1e-12;
}

// Oriented equality (same locus and same positive side).
bool oriented_same_geodesic(const Geodesic& a, const Geodesic& b, double tol) {
    if (!(a.space == b.space)) return false;
    if (a.space.curved()) {
        Vec pa = a.space.curv == CurvatureSign::hyperbolic ? hyperbolic_pole(a) : a.pole;
        Vec pb = b.space.curv == CurvatureSign::hyperbolic ? hyperbolic_pole(b) : b.pole;
        return norm(pa - pb) <= tol;
    }
    return norm(a.normal - b.normal) <= tol && std::fabs(a.offset - b.offset) <= tol;
}

double cap_length(const Geodesic& g) { return ccw_span(g.theta1, g.theta2); }

// Overlap length of two circular intervals [lo, lo+len].
double arc_overlap(double lo1, double len1, double lo2, double len2) {
    double total = 0;
    for (int k = -1; k <= 1; ++k) {
        double shift = 2 * pi * k;
        double lo = std::max(lo1, lo2 + shift);
        double hi = std::min(lo1 + len1, lo2 + shift + len2);
        if (hi > lo) total += hi - lo;
    }
    return total;
}

void normalize_ideal(IdealSet& s) {
    if (s.full) {
        s.arcs.clear();
        return;
    }
    for (auto& a : s.arcs) {
        a.lo = wrap_angle(a.lo);
        a.len = std::max(0.0, std::min(a.len, 2 * pi));
    }
    std::sort(s.arcs.begin(), s.arcs.end(),
              [](const IdealArc& x, const IdealArc& y) { return x.lo < y.lo; });
    std::vector<IdealArc> merged;
    for (const auto& a : s.arcs) {
        if (!merged.empty() && a.lo <= merged.back().lo + merged.back().len + 1e-12) {
            merged.back().len = std::max(merged.back().len, a.lo + a.len - merged.back().lo);
        } else {
            merged.push_back(a);
        }
    }
    // wrap-around merge
    if (merged.size() >= 2) {
        IdealArc& last = merged.back();
        const IdealArc& first = merged.front();
        if (last.lo + last.len >= first.lo + 2 * pi - 1e-12) {
            last.len = std::max(last.len, first.lo + first.len + 2 * pi - last.lo);
            merged.erase(merged.begin());
        }
    }
    if (merged.size() == 1 && merged[0].len >= 2 * pi - 1e-12) {
        s.full = true;
        merged.clear();
    }
    s.arcs = std::move(merged);
}

}  // namespace

// ---------------------------------------------------------------------------
// Ideal sets

IdealSet intersect_ideal_sets(const IdealSet& a, const IdealSet& b) {
    if (a.full) {
        IdealSet r = b;
        normalize_ideal(r);
        return r;
    }
    if (b.full) {
        IdealSet r = a;
        normalize_ideal(r);
        return r;
    }
    IdealSet r;
    for (const auto& p : a.arcs) {
        for (const auto& q : b.arcs) {
            for (int k = -1; k <= 1; ++k) {
                double shift = 2 * pi * k;
                double lo = std::max(p.lo, q.lo + shift);
                double hi = std::min(p.lo + p.len, q.lo + shift + q.len);
                if (hi - lo >= -1e-12) r.arcs.push_back({wrap_angle(lo), std::max(0.0, hi - lo)});
            }
        }
    }
    normalize_ideal(r);
    return r;
}

bool ideal_set_contains(const IdealSet& s, double angle, double tol) {
    if (s.full) return true;
    for (const auto& a : s.arcs) {
        double span = ccw_span(a.lo, angle);
        if (span <= a.len + tol || span >= 2 * pi - tol) return true;
    }
    return false;
}

int ideal_component_count(const IdealSet& s) {
    if (s.full) return 1;
    return static_cast<int>(s.arcs.size());
}

// ---------------------------------------------------------------------------
// Region constructors

Region make_disk(const Point& center, double radius) {
    if (!(radius > 1e-12)) throw geometry_error("disk radius must be positive");
    if (center.space.curved() && center.space.curv == CurvatureSign::spherical &&
        radius > pi / 2 + 1e-12)
        throw geometry_error("spherical disk radius must stay within a hemisphere");
    if (center.space.dim != 2) throw unsupported_region_error("regions are two-dimensional");
    Region r;
    r.space = center.space;
    r.kind = RegionKind::disk;
    r.center = center;
    r.radius = radius;
    return r;
}

Region make_paraball(const SpaceKind& space, double ideal_angle, double horo_param) {
    if (!is_hyperbolic(space) || space.dim != 2)
        throw unsupported_region_error("paraballs exist in the hyperbolic plane only");
    Region r;
    r.space = space;
    r.kind = RegionKind::paraball;
    r.ideal_angle = wrap_angle(ideal_angle);
    r.horo_param = horo_param;
    return r;
}

Region make_padded(const std::vector<Geodesic>& core, double lambda) {
    if (core.empty()) throw geometry_error("parallel domain needs at least one supporting line");
    if (!(lambda > 1e-12)) throw geometry_error("parallel domain pad must be positive");
    const SpaceKind space = core.front().space;
    if (!is_hyperbolic(space) || space.dim != 2)
        throw unsupported_region_error("parallel domains exist in the hyperbolic plane only");
    for (const auto& g : core)
        if (!(g.space == space)) throw space_mismatch_error("core lines in different spaces");
    for (std::size_t i = 0; i < core.size(); ++i) {
        for (std::size_t j = i + 1; j < core.size(); ++j) {
            bool same_locus = false;
            try {
                auto meet = meet_geodesics(core[i], core[j]);
                if (meet.relation == GeodesicRelation::intersecting)
                    throw geometry_error("supporting lines must not cross");
            } catch (const coincident_cycles_error&) {
                same_locus = true;
            }
            if (same_locus && oriented_same_geodesic(core[i], core[j], 1e-9))
                throw geometry_error("duplicate supporting line");
            double ov = arc_overlap(core[i].theta1, cap_length(core[i]), core[j].theta1,
                                    cap_length(core[j]));
            if (ov > 1e-9) throw geometry_error("supporting caps must be disjoint");
        }
    }
    Region r;
    r.space = space;
    r.kind = RegionKind::padded;
    r.core = core;
    r.lambda = lambda;
    return r;
}

Region make_halfplane(const Geodesic& boundary) {
    Region r;
    r.space = boundary.space;
    r.kind = RegionKind::halfplane;
    r.boundary_line = boundary;
    return r;
}

// ---------------------------------------------------------------------------
// Membership

double region_signed_distance(const Region& r, const Point& p) {
    switch (r.kind) {
        case RegionKind::disk:
            return distance(r.center, p) - r.radius;
        case RegionKind::paraball:
            return signed_distance_to_cycle(
                make_paracycle(r.space, r.ideal_angle, r.horo_param), p);
        case RegionKind::halfplane:
            return -signed_geodesic_distance(r.boundary_line, p);
        case RegionKind::padded: {
            // Supporting caps are disjoint, so the open outer half-planes are
            // pairwise disjoint: at most one line is violated and the largest
            // violation is the exact distance to the core.
            double worst = -std::numeric_limits<double>::infinity();
            for (const auto& g : r.core)
                worst = std::max(worst, -signed_geodesic_distance(g, p));
            return worst - r.lambda;
        }
    }
    throw geometry_error("unknown region kind");
}

Containment contains(const Region& r, const Point& p, const Tolerances& tol) {
    if (!(r.space == p.space)) throw space_mismatch_error("point/region space mismatch");
    double s = region_signed_distance(r, p);
    if (s < -tol.membership) return Containment::interior;
    if (s <= tol.membership) return Containment::boundary;
    return Containment::outside;
}

// ---------------------------------------------------------------------------
// Boundary structure

std::vector<Cycle> boundary_components(const Region& r) {
    switch (r.kind) {
        case RegionKind::disk:
            return {make_circle(r.center, r.radius)};
        case RegionKind::paraball:
            return {make_paracycle(r.space, r.ideal_angle, r.horo_param)};
        case RegionKind::halfplane:
            // reversed so the region is the negative side of the component,
            // matching signed_distance_to_cycle for every other kind
            return {make_geodesic_cycle(reversed(r.boundary_line))};
        case RegionKind::padded: {
            std::vector<Cycle> out;
            out.reserve(r.core.size());
            for (const auto& g : r.core) out.push_back(make_hypercycle(g, r.lambda, -1));
            return out;
        }
    }
    throw geometry_error("unknown region kind");
}

IdealSet ideal_set(const Region& r) {
    IdealSet s;
    if (!is_hyperbolic(r.space)) return s;
    switch (r.kind) {
        case RegionKind::disk:
            return s;
        case RegionKind::paraball:
            s.arcs.push_back({wrap_angle(r.ideal_angle), 0.0});
            return s;
        case RegionKind::halfplane:
            s.arcs.push_back({wrap_angle(r.boundary_line.theta2),
                              ccw_span(r.boundary_line.theta2, r.boundary_line.theta1)});
            return s;
        case RegionKind::padded: {
            // complement of the union of the open outer caps
            std::vector<IdealArc> caps;
            for (const auto& g : r.core) caps.push_back({wrap_angle(g.theta1), cap_length(g)});
            std::sort(caps.begin(), caps.end(),
                      [](const IdealArc& a, const IdealArc& b) { return a.lo < b.lo; });
            for (std::size_t k = 0; k < caps.size(); ++k) {
                double end = wrap_angle(caps[k].lo + caps[k].len);
                double next = caps[(k + 1) % caps.size()].lo;
                double gap = ccw_span(end, next);
                if (gap > 2 * pi - 1e-9) gap = 0;
                s.arcs.push_back({end, gap});
            }
            normalize_ideal(s);
            return s;
        }
    }
    throw geometry_error("unknown region kind");
}

Point region_anchor(const Region& r) {
    switch (r.kind) {
        case RegionKind::disk:
            return r.center;
        case RegionKind::paraball: {
            double u = r.horo_param + 1.0;  // unit depth inside the horoball
            Vec v(std::cosh(u), std::sinh(u) * std::cos(r.ideal_angle),
                  std::sinh(u) * std::sin(r.ideal_angle));
            return make_point(r.space, v);
        }
        case RegionKind::halfplane: {
            Point foot = geodesic_at(r.boundary_line, 0.0);
            Vec n = r.space.curved() ? hyperbolic_pole(r.boundary_line)
                                     : Vec(r.boundary_line.normal[0], r.boundary_line.normal[1]);
            return exp_map(foot, n * 0.5);
        }
        case RegionKind::padded: {
            std::vector<Point> cand;
            cand.push_back(base_point(r.space));
            cand.push_back(geodesic_at(r.core.front(), 0.0));
            for (const auto& arc : ideal_set(r).arcs) {
                double phi = wrap_angle(arc.lo + arc.len / 2);
                for (double rho : {0.5, 0.8, 0.95, 0.99, 0.999})
                    cand.push_back(from_chart(ChartKind::poincare, r.space,
                                              Vec(rho * std::cos(phi), rho * std::sin(phi))));
            }
            double best = 0;
            const Point* pick = nullptr;
            for (const auto& p : cand) {
                double s = region_signed_distance(r, p);
                if (s < best) {
                    best = s;
                    pick = &p;
                }
            }
            if (!pick || best > -1e-9) throw geometry_error("region has no usable interior point");
            return *pick;
        }
    }
    throw geometry_error("unknown region kind");
}

Region transform_region(const Isometry& f, const Region& r) {
    if (!(f.space == r.space)) throw space_mismatch_error("isometry/region space mismatch");
    switch (r.kind) {
        case RegionKind::disk:
            return make_disk(apply(f, r.center), r.radius);
        case RegionKind::paraball: {
            Cycle c = transform_cycle(f, make_paracycle(r.space, r.ideal_angle, r.horo_param));
            return make_paraball(r.space, c.ideal_angle, c.horo_param);
        }
        case RegionKind::halfplane:
            return make_halfplane(transform_cycle(f, make_geodesic_cycle(r.boundary_line)).base);
        case RegionKind::padded: {
            std::vector<Geodesic> core;
            core.reserve(r.core.size());
            for (const auto& g : r.core)
                core.push_back(transform_cycle(f, make_geodesic_cycle(g)).base);
            return make_padded(core, r.lambda);
        }
    }
    throw geometry_error("unknown region kind");
}

bool region_equal(const Region& a, const Region& b, double tol) {
    if (!(a.space == b.space) || a.kind != b.kind) return false;
    switch (a.kind) {
        case RegionKind::disk:
            return points_close(a.center, b.center, tol) && std::fabs(a.radius - b.radius) <= tol;
        case RegionKind::paraball:
            return angle_gap(a.ideal_angle, b.ideal_angle) <= tol &&
                   std::fabs(a.horo_param - b.horo_param) <= tol;
        case RegionKind::halfplane:
            return oriented_same_geodesic(a.boundary_line, b.boundary_line, tol);
        case RegionKind::padded: {
            if (std::fabs(a.lambda - b.lambda) > tol || a.core.size() != b.core.size())
                return false;
            std::vector<bool> used(b.core.size(), false);
            for (const auto& g : a.core) {
                bool hit = false;
                for (std::size_t j = 0; j < b.core.size(); ++j) {
                    if (!used[j] && oriented_same_geodesic(g, b.core[j], tol)) {
                        used[j] = hit = true;
                        break;
                    }
                }
                if (!hit) return false;
            }
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Arc polygon helpers

Point arc_point(const PolygonArc& arc, double f) {
    f = std::min(1.0, std::max(0.0, f));
    return cycle_point(arc.cycle, arc.t_begin + f * (arc.t_end - arc.t_begin));
}

std::vector<Point> polygon_sample_points(const ArcPolygon& poly) {
    std::vector<Point> pts = poly.vertices;
    for (const auto& arc : poly.arcs) pts.push_back(arc_point(arc, 0.5));
    return pts;
}

std::vector<Point> polygon_boundary_samples(const ArcPolygon& poly, int per_arc) {
    std::vector<Point> pts;
    for (const auto& arc : poly.arcs)
        for (int i = 0; i < per_arc; ++i)
            pts.push_back(arc_point(arc, (i + 0.5) / per_arc));
    return pts;
}

double polygon_diameter(const ArcPolygon& poly) {
    std::vector<Point> pts = poly.vertices;
    auto dense = polygon_boundary_samples(poly, 128);
    pts.insert(pts.end(), dense.begin(), dense.end());
    double best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, distance(pts[i], pts[j]));
    return best;
}

bool arcs_interleave(const ArcPolygon& poly) {
    std::size_t n = poly.arcs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Cycle& c1 = poly.arcs[i].cycle;
        const Cycle& c2 = poly.arcs[(i + 1) % n].cycle;
        if (c1.kind != CycleKind::hypercycle || c2.kind != CycleKind::hypercycle) continue;
        double a1 = c1.base.theta1, a2 = c1.base.theta2;
        double b1 = c2.base.theta1, b2 = c2.base.theta2;
        double angles[4] = {a1, a2, b1, b2};
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q)
                if (angle_gap(angles[p], angles[q]) < 1e-9) return false;
        double cap = ccw_span(a1, a2);
        int inside = 0;
        if (ccw_span(a1, b1) < cap) ++inside;
        if (ccw_span(a1, b2) < cap) ++inside;
        if (inside != 1) return false;
    }
    return true;
}

ArcPolygon transform_polygon(const Isometry& f, const ArcPolygon& poly) {
    ArcPolygon out;
    out.vertices.reserve(poly.vertices.size());
    for (const auto& v : poly.vertices) out.vertices.push_back(apply(f, v));
    out.arcs.reserve(poly.arcs.size());
    for (const auto& arc : poly.arcs) {
        PolygonArc t = arc;
        t.cycle = transform_cycle(f, arc.cycle);
        Point begin_img = apply(f, cycle_point(arc.cycle, arc.t_begin));
        // orientation-preserving maps shift the canonical parameter by a
        // constant, so spans carry over exactly
        t.t_begin = cycle_parameter_of(t.cycle, begin_img);
        t.t_end = t.t_begin + (arc.t_end - arc.t_begin);
        Point end_img = apply(f, cycle_point(arc.cycle, arc.t_end));
        if (!points_close(cycle_point(t.cycle, t.t_end), end_img, 1e-6))
            throw geometry_error("arc parameter transport failed");
        out.arcs.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Intersection tracer

namespace {

Vec footprint_tangent(const Footprint& f, const Vec& xy) {
    if (f.is_line) return f.dir;
    Vec d = xy - f.center;
    double n = norm(d);
    if (n < 1e-300) return Vec(1, 0);
    return rot90(d) * (1.0 / n);
}

bool tangential_at(const Cycle& a, const Cycle& b, const Point& p) {
    ChartKind chart = conformal_chart(a.space);
    Vec xy = to_chart(chart, p);
    Vec ta = footprint_tangent(chart_footprint(a), xy);
    Vec tb = footprint_tangent(chart_footprint(b), xy);
    double cross = ta[0] * tb[1] - ta[1] * tb[0];
    return std::fabs(cross) < 1e-6;
}

// Rotates so vertices[0] is the lexicographically smallest chart vertex.
void canonicalize_polygon(ArcPolygon& poly, ChartKind chart) {
    std::size_t n = poly.vertices.size();
    if (n == 0) return;
    std::size_t best = 0;
    Vec best_xy = to_chart(chart, poly.vertices[0]);
    for (std::size_t i = 1; i < n; ++i) {
        Vec xy = to_chart(chart, poly.vertices[i]);
        if (lex_less(xy, best_xy)) {
            best = i;
            best_xy = xy;
        }
    }
    if (best == 0) return;
    ArcPolygon rot;
    for (std::size_t i = 0; i < n; ++i) {
        rot.vertices.push_back(poly.vertices[(best + i) % n]);
        rot.arcs.push_back(poly.arcs[(best + i) % n]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        rot.arcs[i].v_begin = static_cast<int>(i);
        rot.arcs[i].v_end = static_cast<int>((i + 1) % n);
    }
    poly = std::move(rot);
}

IntersectionResult two_arc_split(const Cycle& circle, Owner o1, Owner o2) {
    ChartKind chart = conformal_chart(circle.space);
    ArcPolygon poly;
    poly.vertices = {cycle_point(circle, 0.0), cycle_point(circle, pi)};
    poly.arcs.push_back({circle, o1, 0.0, pi, 0, 1});
    poly.arcs.push_back({circle, o2, pi, 2 * pi, 1, 0});
    canonicalize_polygon(poly, chart);
    IntersectionResult res;
    res.kind = IntersectionKind::compact;
    res.polygon = std::move(poly);
    return res;
}

// Parameter direction along an unbounded cycle toward the given ideal angle.
double param_direction(const Cycle& c, double angle) {
    if (c.kind == CycleKind::paracycle) return 1.0;
    double g1 = angle_gap(angle, c.base.theta1);
    double g2 = angle_gap(angle, c.base.theta2);
    return g2 < g1 ? 1.0 : -1.0;
}

bool disk_inside(const Region& inner, const Region& outer, const Tolerances& tol) {
    if (inner.kind != RegionKind::disk) return false;
    if (contains(outer, inner.center, tol) != Containment::interior) return false;
    Cycle rim = make_circle(inner.center, inner.radius);
    for (int k = 0; k < 32; ++k)
        if (contains(outer, cycle_point(rim, 2 * pi * k / 32.0), tol) != Containment::interior)
            return false;
    return true;
}

}  // namespace

IntersectionResult intersect_regions(const Region& a, const Region& b, const Tolerances& tol) {
    if (!(a.space == b.space)) throw space_mismatch_error("regions live in different spaces");
    const SpaceKind space = a.space;
    const ChartKind chart = conformal_chart(space);
    const bool hyp = is_hyperbolic(space);
    if (!hyp && (a.kind == RegionKind::halfplane || b.kind == RegionKind::halfplane))
        throw unsupported_region_error(
            "half-plane intersections are supported in the hyperbolic plane only");

    // identical regions
    if (region_equal(a, b, 1e-12)) {
        if (a.kind == RegionKind::disk)
            return two_arc_split(make_circle(a.center, a.radius), Owner::a, Owner::b);
        IntersectionResult res;
        res.kind = IntersectionKind::noncompact;
        res.ideal = ideal_set(a);
        return res;
    }

    std::vector<Cycle> cyc_a = boundary_components(a);
    std::vector<Cycle> cyc_b = boundary_components(b);
    const int na = static_cast<int>(cyc_a.size());
    auto cycle_by_id = [&](int id) -> const Cycle& {
        return id < na ? cyc_a[id] : cyc_b[id - na];
    };

    struct Crossing {
        Point p;
        Vec xy;
        int ca, cb;  // cycle ids (cb already offset by na)
        double ta, tb;
    };
    std::vector<Crossing> verts;
    std::vector<Point> tangents;
    bool coincident = false;
    for (int ia = 0; ia < na; ++ia) {
        for (int ib = 0; ib < static_cast<int>(cyc_b.size()); ++ib) {
            std::vector<Point> pts;
            try {
                pts = intersect_cycles(cyc_a[ia], cyc_b[ib], tol);
            } catch (const coincident_cycles_error&) {
                coincident = true;
                continue;
            }
            for (const auto& p : pts) {
                if (tangential_at(cyc_a[ia], cyc_b[ib], p)) {
                    tangents.push_back(p);
                } else {
                    verts.push_back({p, to_chart(chart, p), ia, na + ib,
                                     cycle_parameter_of(cyc_a[ia], p),
                                     cycle_parameter_of(cyc_b[ib], p)});
                }
            }
        }
    }
    if (coincident) throw degenerate_contact_error("regions share a boundary component");

    IdealSet idl;
    if (hyp) idl = intersect_ideal_sets(ideal_set(a), ideal_set(b));

    auto noncompact = [&]() {
        IntersectionResult res;
        res.kind = IntersectionKind::noncompact;
        res.ideal = idl;
        return res;
    };

    if (!verts.empty()) {
        // a transversal boundary crossing plus a common ideal trace means the
        // intersection has interior and is unbounded
        if (!idl.empty()) return noncompact();

        if (!tangents.empty()) throw degenerate_vertex_error("tangential boundary contact");
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (norm(verts[i].xy - verts[j].xy) < 1e-9)
                    throw degenerate_vertex_error("nearly coincident vertices");
        for (const auto& v : verts) {
            for (int id = 0; id < na + static_cast<int>(cyc_b.size()); ++id) {
                if (id == v.ca || id == v.cb) continue;
                if (distance_to_cycle(cycle_by_id(id), v.p) < tol.geometry)
                    throw degenerate_vertex_error("vertex on a third boundary component");
            }
        }
        if (hyp) {
            for (const auto& v : verts)
                if (norm(v.xy) >= 1.0 - 1e-6) return noncompact();  // sentinel guard
        }

        // candidate arcs between consecutive vertices of each cycle
        std::map<int, std::vector<std::pair<double, int>>> by_cycle;
        for (std::size_t k = 0; k < verts.size(); ++k) {
            by_cycle[verts[k].ca].push_back({verts[k].ta, static_cast<int>(k)});
            by_cycle[verts[k].cb].push_back({verts[k].tb, static_cast<int>(k)});
        }

        struct Kept {
            int cyc;
            double t1, t2;
            int v1, v2;
        };
        std::vector<Kept> kept;
        std::map<std::pair<int, int>, int> degree;  // (vertex, cycle) -> kept count
        for (auto& [cid, lst] : by_cycle) {
            std::sort(lst.begin(), lst.end());
            const Cycle& C = cycle_by_id(cid);
            const Region& other = cid < na ? b : a;
            double period = cycle_period(C);
            std::size_t m = lst.size();
            std::size_t arcs_n = period > 0 ? m : (m >= 1 ? m - 1 : 0);
            for (std::size_t i = 0; i < arcs_n; ++i) {
                std::size_t j = (i + 1) % m;
                double t1 = lst[i].first;
                double t2 = j == 0 ? lst[0].first + period : lst[j].first;
                Point mid = cycle_point(C, (t1 + t2) / 2);
                Containment c = contains(other, mid, tol);
                if (c == Containment::boundary)
                    throw degenerate_vertex_error("boundary-grazing arc");
                if (c != Containment::interior) continue;
                kept.push_back({cid, t1, t2, lst[i].second, lst[j].second});
                ++degree[{lst[i].second, cid}];
                ++degree[{lst[j].second, cid}];
            }
        }
        for (std::size_t k = 0; k < verts.size(); ++k) {
            if (degree[{static_cast<int>(k), verts[k].ca}] != 1 ||
                degree[{static_cast<int>(k), verts[k].cb}] != 1)
                throw degenerate_vertex_error("non-transversal boundary crossing");
        }

        // orient each kept arc with the region interior on its left
        struct DirArc {
            int cyc;
            Owner owner;
            double t_begin, t_end;
            int v_from, v_to;
        };
        std::vector<DirArc> darcs;
        for (const auto& ka : kept) {
            const Cycle& C = cycle_by_id(ka.cyc);
            const Region& own = ka.cyc < na ? a : b;
            double mid = (ka.t1 + ka.t2) / 2;
            double span = ka.t2 - ka.t1;
            double delta = std::min(1e-4, span * 1e-3);
            Vec xm = to_chart(chart, cycle_point(C, mid));
            Vec xp = to_chart(chart, cycle_point(C, mid + delta));
            Vec xn = to_chart(chart, cycle_point(C, mid - delta));
            Vec tau = xp - xn;
            double tn = norm(tau);
            if (tn < 1e-300) throw degenerate_vertex_error("degenerate arc tangent");
            Vec nu = rot90(tau * (1.0 / tn));
            auto probe_interior = [&](const Vec& xy) {
                try {
                    return contains(own, from_chart(chart, space, xy), tol) ==
                           Containment::interior;
                } catch (const out_of_chart_domain_error&) {
                    return false;
                }
            };
            bool forward;
            if (probe_interior(xm + nu * 1e-5))
                forward = true;
            else if (probe_interior(xm - nu * 1e-5))
                forward = false;
            else
                throw degenerate_vertex_error("cannot orient boundary arc");
            Owner owner = ka.cyc < na ? Owner::a : Owner::b;
            if (forward)
                darcs.push_back({ka.cyc, owner, ka.t1, ka.t2, ka.v1, ka.v2});
            else
                darcs.push_back({ka.cyc, owner, ka.t2, ka.t1, ka.v2, ka.v1});
        }

        std::vector<int> out_edge(verts.size(), -1);
        for (std::size_t e = 0; e < darcs.size(); ++e) {
            if (out_edge[darcs[e].v_from] != -1)
                throw degenerate_vertex_error("branching boundary traversal");
            out_edge[darcs[e].v_from] = static_cast<int>(e);
        }

        int seed = 0;
        for (std::size_t k = 1; k < verts.size(); ++k)
            if (lex_less(verts[k].xy, verts[seed].xy)) seed = static_cast<int>(k);

        ArcPolygon poly;
        int cur = seed;
        std::size_t guard = 0;
        do {
            if (out_edge[cur] < 0 || guard++ > darcs.size())
                throw geometry_error("boundary traversal failed to close");
            const DirArc& d = darcs[out_edge[cur]];
            PolygonArc arc;
            arc.cycle = cycle_by_id(d.cyc);
            arc.owner = d.owner;
            arc.t_begin = d.t_begin;
            arc.t_end = d.t_end;
            arc.v_begin = static_cast<int>(poly.vertices.size());
            arc.v_end = static_cast<int>(poly.vertices.size()) + 1;
            poly.vertices.push_back(verts[d.v_from].p);
            poly.arcs.push_back(arc);
            cur = d.v_to;
        } while (cur != seed);
        if (poly.arcs.size() != darcs.size())
            throw geometry_error("boundary traversal left unused arcs");
        poly.arcs.back().v_end = 0;
        std::size_t n = poly.arcs.size();
        if (n % 2 != 0) throw geometry_error("expected an even number of boundary arcs");
        for (std::size_t i = 0; i < n; ++i)
            if (poly.arcs[i].owner == poly.arcs[(i + 1) % n].owner)
                throw geometry_error("expected alternating boundary owners");
        canonicalize_polygon(poly, chart);

        IntersectionResult res;
        res.kind = IntersectionKind::compact;
        res.polygon = std::move(poly);
        return res;
    }

    // no transversal vertices
    if (!idl.empty()) {
        auto interior_both = [&](const Point& p) {
            return contains(a, p, tol) == Containment::interior &&
                   contains(b, p, tol) == Containment::interior;
        };
        std::vector<Point> probes;
        probes.push_back(region_anchor(a));
        probes.push_back(region_anchor(b));
        for (const auto& arc : idl.arcs) {
            double phi = wrap_angle(arc.lo + arc.len / 2);
            for (double rho : {0.9, 0.99, 0.999, 0.9999, 0.99999})
                probes.push_back(from_chart(ChartKind::poincare, space,
                                            Vec(rho * std::cos(phi), rho * std::sin(phi))));
        }
        // shared ideal endpoints: midpoints of deep pairs along the cycles
        for (const auto& ca : cyc_a) {
            for (double u : ideal_points(ca)) {
                for (const auto& cb : cyc_b) {
                    for (double w : ideal_points(cb)) {
                        if (angle_gap(u, w) > 1e-6) continue;
                        for (double k : {3.0, 6.0, 9.0, 12.0}) {
                            Point pa = cycle_point(ca, param_direction(ca, u) * k);
                            Point pb = cycle_point(cb, param_direction(cb, w) * k);
                            probes.push_back(geodesic_point(pa, pb, 0.5));
                        }
                    }
                }
            }
        }
        for (const auto& p : probes)
            if (interior_both(p)) return noncompact();
    }

    if (!tangents.empty()) {
        if (contains(b, region_anchor(a), tol) == Containment::interior ||
            contains(a, region_anchor(b), tol) == Containment::interior)
            throw degenerate_vertex_error("tangential boundary contact");
        throw degenerate_contact_error("closures touch without common interior");
    }

    if (disk_inside(a, b, tol)) return two_arc_split(make_circle(a.center, a.radius), Owner::a, Owner::a);
    if (disk_inside(b, a, tol)) return two_arc_split(make_circle(b.center, b.radius), Owner::b, Owner::b);

    IntersectionResult res;
    res.kind = IntersectionKind::empty;
    return res;
}

// ---------------------------------------------------------------------------
// Reduction to single components

namespace {

bool in_closed_cap(const Geodesic& g, double angle, double tol) {
    double span = ccw_span(g.theta1, angle);
    return span <= cap_length(g) + tol || span >= 2 * pi - tol;
}

}  // namespace

std::pair<Region, Region> reduce_to_single_components(const Region& a, int comp_a,
                                                      const Region& b, int comp_b,
                                                      const Tolerances& tol) {
    if (a.kind != RegionKind::padded || b.kind != RegionKind::padded)
        throw unsupported_region_error("reduction requires parallel-domain regions");
    if (comp_a < 0 || comp_a >= static_cast<int>(a.core.size()) || comp_b < 0 ||
        comp_b >= static_cast<int>(b.core.size()))
        throw geometry_error("component index out of range");
    const Geodesic& base_a = a.core[comp_a];
    const Geodesic& base_b = b.core[comp_b];

    // clause 1: the base lines share no finite point and at most one ideal point
    try {
        auto meeting = meet_geodesics(base_a, base_b, tol);
        if (meeting.relation == GeodesicRelation::intersecting) throw hypothesis_violated_error(1, "base lines share a finite point");
    } catch (const coincident_cycles_error&) {
        throw hypothesis_violated_error(1, "base lines share a finite point");
    }

    // clause 2: the cores face away from each other across the selected bases:
    // every ideal arc of each region lies in the closed outer cap of the other
    // selected base line
    auto ideal_inside_cap = [&](const Region& r, const Geodesic& base) {
        for (const auto& arc : ideal_set(r).arcs) {
            double mid = wrap_angle(arc.lo + arc.len / 2);
            if (!in_closed_cap(base, arc.lo, 1e-9) ||
                !in_closed_cap(base, wrap_angle(arc.lo + arc.len), 1e-9) ||
                !in_closed_cap(base, mid, 1e-9))
                return false;
        }
        return true;
    };
    if (!ideal_inside_cap(b, base_a) || !ideal_inside_cap(a, base_b))
        throw hypothesis_violated_error(2, "cores do not face away across the bases");

    return {make_padded({base_a}, a.lambda), make_padded({base_b}, b.lambda)};
}

// ---------------------------------------------------------------------------
// Constructions

Region construct_two_component_region(const SpaceKind& space, double alpha, double lambda,
                                      const Isometry& pose) {
    if (!is_hyperbolic(space) || space.dim != 2)
        throw unsupported_region_error("two-component construction is hyperbolic");
    if (!(alpha > 1e-6 && alpha < pi - 1e-6))
        throw geometry_error("opening angle out of range");
    Geodesic g1 = geodesic_from_ideal_angles(space, -alpha / 2, alpha / 2);
    Geodesic g2 = geodesic_from_ideal_angles(space, pi - alpha / 2, pi + alpha / 2);
    return transform_region(pose, make_padded({g1, g2}, lambda));
}

// ---------------------------------------------------------------------------
// Hull of two disks

namespace {

// Hyperbolic line {x : <x, w> = 0} oriented so its positive side is <x,w> > 0.
Geodesic geodesic_from_hyperbolic_pole(const SpaceKind& space, const Vec& w) {
    double r = std::hypot(w[1], w[2]);
    double ratio = std::max(-1.0, std::min(1.0, w[0] / r));
    double phi = std::atan2(w[2], w[1]);
    double psi = std::acos(ratio);
    Geodesic g = geodesic_from_ideal_angles(space, phi - psi, phi + psi);
    if (norm(hyperbolic_pole(g) - w) > 1e-6)
        g = geodesic_from_ideal_angles(space, phi + psi, phi - psi);
    if (norm(hyperbolic_pole(g) - w) > 1e-6)
        throw geometry_error("pole reconstruction failed");
    return g;
}

}  // namespace

HullBoundary hull_union_disks(const Region& disk_a, const Region& disk_b) {
    if (disk_a.kind != RegionKind::disk || disk_b.kind != RegionKind::disk)
        throw unsupported_region_error("hull construction takes two disks");
    if (!(disk_a.space == disk_b.space)) throw space_mismatch_error("disks in different spaces");
    const SpaceKind space = disk_a.space;
    const Point& m1 = disk_a.center;
    const Point& m2 = disk_b.center;
    double r1 = disk_a.radius, r2 = disk_b.radius;
    double d = distance(m1, m2);

    HullBoundary hull;
    hull.circle_a = make_circle(m1, r1);
    hull.circle_b = make_circle(m2, r2);

    if (d < 1e-12) {
        if (std::fabs(r1 - r2) <= 1e-12) {
            hull.single_circle = true;
            return hull;
        }
        throw nested_disks_error("concentric disks have no outer supporting line");
    }
    if (space.curved() && space.curv == CurvatureSign::spherical && pi - d < 1e-9)
        throw geometry_error("antipodal disk centers");

    // orthonormal tangent basis at m1 with e1 toward m2
    Vec e1 = log_map(m1, m2) * (1.0 / d);
    auto frame = tangent_frame(m1);
    double c1 = bilinear(space, e1, frame[0]);
    double c2 = bilinear(space, e1, frame[1]);
    Vec e2 = frame[0] * (-c2) + frame[1] * c1;

    Geodesic lines[2];
    if (!space.curved()) {
        double kappa = (r2 - r1) / d;
        double z2 = 1 - kappa * kappa;
        if (z2 <= 1e-18) throw nested_disks_error("no outer supporting line");
        double z = std::sqrt(z2);
        for (int s = 0; s < 2; ++s) {
            Vec n = e1 * kappa + e2 * (s == 0 ? z : -z);
            Geodesic g;
            g.space = space;
            g.normal = Vec(n[0], n[1]);
            g.offset = n[0] * m1.v[0] + n[1] * m1.v[1] - r1;
            lines[s] = g;
        }
    } else if (space.curv == CurvatureSign::spherical) {
        double x = std::sin(r1);
        double y = (std::sin(r2) - std::cos(d) * std::sin(r1)) / std::sin(d);
        double z2 = std::cos(r1) * std::cos(r1) - y * y;
        if (z2 <= 1e-18) throw nested_disks_error("no outer supporting line");
        double z = std::sqrt(z2);
        for (int s = 0; s < 2; ++s) {
            Vec w = m1.v * x + e1 * y + e2 * (s == 0 ? z : -z);
            Geodesic g;
            g.space = space;
            g.pole = w * (1.0 / norm(w));
            lines[s] = g;
        }
    } else {
        double x = -std::sinh(r1);
        double y = (std::sinh(r2) - std::cosh(d) * std::sinh(r1)) / std::sinh(d);
        double z2 = std::cosh(r1) * std::cosh(r1) - y * y;
        if (z2 <= 1e-18) throw nested_disks_error("no outer supporting line");
        double z = std::sqrt(z2);
        for (int s = 0; s < 2; ++s) {
            Vec w = m1.v * x + e1 * y + e2 * (s == 0 ? z : -z);
            lines[s] = geodesic_from_hyperbolic_pole(space, w);
        }
    }

    hull.line_1 = lines[0];
    hull.line_2 = lines[1];
    hull.a1 = foot_of_perpendicular(lines[0], m1);
    hull.a2 = foot_of_perpendicular(lines[1], m1);
    hull.b1 = foot_of_perpendicular(lines[0], m2);
    hull.b2 = foot_of_perpendicular(lines[1], m2);
    return hull;
}

}  // namespace ccg
