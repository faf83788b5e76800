#include "ccg/space_core.hpp"

#include <algorithm>
#include <cassert>

namespace ccg {

namespace {

// Null direction of a boundary angle (hyperbolic ambient).
Vec null_direction(double theta) { return Vec(1.0, std::cos(theta), std::sin(theta)); }

double boundary_angle_of(const Vec& null_vec) {
    return wrap_angle(std::atan2(null_vec[2], null_vec[1]));
}

Vec normalize_timelike(const SpaceKind& space, Vec v) {
    double q = bilinear(space, v, v);
    if (q >= 0) throw geometry_error("expected a timelike vector");
    v = v * (1.0 / std::sqrt(-q));
    if (v[0] < 0) v = -v;
    return v;
}

Vec normalize_spacelike(const SpaceKind& space, const Vec& v) {
    double q = bilinear(space, v, v);
    if (q <= 0) throw geometry_error("expected a spacelike vector");
    return v * (1.0 / std::sqrt(q));
}

// Inverse of a frame matrix whose columns are form-orthonormal with Gram
// matrix G = diag(eps, 1, ..., 1): F^{-1} = G F^T J.
Mat frame_inverse(const SpaceKind& space, const Mat& F, double eps0) {
    Mat Ft = F.transposed();
    Mat R = Mat::zero(F.n);
    for (int i = 0; i < F.n; ++i)
        for (int j = 0; j < F.n; ++j) {
            double v = Ft.at(i, j);
            if (space.curv == CurvatureSign::hyperbolic && j == 0) v = -v;
            if (i == 0) v *= eps0;
            R.at(i, j) = v;
        }
    return R;
}

// Ambient frame with col0 = p (curved spaces); remaining columns are a
// form-orthonormal tangent basis starting from the preferred directions.
Mat ambient_frame(const Point& p, const std::vector<Vec>& preferred) {
    const SpaceKind& s = p.space;
    int n = s.ambient_dim();
    Mat F = Mat::zero(n);
    F.set_col(0, p.v);
    std::vector<Vec> basis;
    auto try_add = [&](Vec cand) {
        // project out p and the accepted tangent vectors w.r.t. the form
        double cp = bilinear(s, cand, p.v);
        double pp = bilinear(s, p.v, p.v);
        cand = cand - p.v * (cp / pp);
        for (const Vec& b : basis) cand = cand - b * bilinear(s, cand, b);
        double q = bilinear(s, cand, cand);
        if (q > 1e-12) basis.push_back(cand * (1.0 / std::sqrt(q)));
    };
    for (const Vec& v : preferred) {
        if (static_cast<int>(basis.size()) == n - 1) break;
        try_add(v);
    }
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i)
        try_add(Vec::axis(n, i));
    for (int j = 0; j < n - 1; ++j) F.set_col(j + 1, basis[static_cast<size_t>(j)]);
    return F;
}

// Conjugates a canonical block acting on frame coordinates: M = F B F^{-1}.
Mat conjugate_block(const Point& p, const std::vector<Vec>& preferred, const Mat& B) {
    const SpaceKind& s = p.space;
    double eps0 = s.curv == CurvatureSign::hyperbolic ? -1.0 : 1.0;
    Mat F = ambient_frame(p, preferred);
    return F * B * frame_inverse(s, F, eps0);
}

Vec rot90(const Vec& v) { return Vec(-v[1], v[0]); }

}  // namespace

// ---------------------------------------------------------------------------
// Points

double point_residual(const Point& p) {
    switch (p.space.curv) {
        case CurvatureSign::spherical: return std::fabs(dot(p.v, p.v) - 1.0);
        case CurvatureSign::flat: return 0.0;
        case CurvatureSign::hyperbolic: return std::fabs(bilinear(p.space, p.v, p.v) + 1.0);
    }
    return 0.0;
}

Point renormalized(const Point& p) {
    Point r = p;
    switch (p.space.curv) {
        case CurvatureSign::spherical: r.v = normalized(p.v); break;
        case CurvatureSign::flat: break;
        case CurvatureSign::hyperbolic: r.v = normalize_timelike(p.space, p.v); break;
    }
    return r;
}

Point make_point(const SpaceKind& space, const Vec& ambient) {
    Point p{space, ambient};
    if (space.curved()) {
        if (point_residual(p) > 1e-3)
            throw geometry_error("ambient coordinates far from the model surface");
        p = renormalized(p);
    }
    return p;
}

Point base_point(const SpaceKind& space) {
    Vec v = Vec::zero(space.ambient_dim());
    if (space.curved()) v[0] = 1.0;
    return Point{space, v};
}

bool points_close(const Point& p, const Point& q, double tol) {
    return distance(p, q) <= tol;
}

// ---------------------------------------------------------------------------
// Metric

double distance(const Point& p, const Point& q) {
    assert(p.space == q.space);
    switch (p.space.curv) {
        case CurvatureSign::flat: return norm(p.v - q.v);
        case CurvatureSign::spherical: {
            double c = dot(p.v, q.v);
            Vec perp = q.v - p.v * c;
            return std::atan2(norm(perp), c);
        }
        case CurvatureSign::hyperbolic: {
            double c = bilinear(p.space, p.v, q.v);  // <= -1
            Vec w = q.v + p.v * c;                   // tangential part at p
            double s2 = std::max(0.0, bilinear(p.space, w, w));
            return std::asinh(std::sqrt(s2));
        }
    }
    return 0.0;
}

Point geodesic_point(const Point& p, const Point& q, double t) {
    assert(p.space == q.space);
    switch (p.space.curv) {
        case CurvatureSign::flat: return Point{p.space, p.v + (q.v - p.v) * t};
        case CurvatureSign::spherical: {
            double th = distance(p, q);
            if (th < 1e-300) return p;
            if (pi - th < 1e-9)
                throw antipodal_pair_error("geodesic through antipodal points is not unique");
            double s = std::sin(th);
            return renormalized(
                Point{p.space, p.v * (std::sin((1 - t) * th) / s) + q.v * (std::sin(t * th) / s)});
        }
        case CurvatureSign::hyperbolic: {
            double d = distance(p, q);
            if (d < 1e-300) return p;
            double s = std::sinh(d);
            return renormalized(Point{
                p.space, p.v * (std::sinh((1 - t) * d) / s) + q.v * (std::sinh(t * d) / s)});
        }
    }
    return p;
}

Vec log_map(const Point& p, const Point& q) {
    switch (p.space.curv) {
        case CurvatureSign::flat: return q.v - p.v;
        case CurvatureSign::spherical: {
            double c = dot(p.v, q.v);
            Vec w = q.v - p.v * c;
            double wn = norm(w);
            double th = std::atan2(wn, c);
            if (wn < 1e-300) {
                if (c < 0) throw antipodal_pair_error("log map undefined at the antipode");
                return Vec::zero(p.v.n);
            }
            return w * (th / wn);
        }
        case CurvatureSign::hyperbolic: {
            double c = bilinear(p.space, p.v, q.v);
            Vec w = q.v + p.v * c;
            double wn = std::sqrt(std::max(0.0, bilinear(p.space, w, w)));
            if (wn < 1e-300) return Vec::zero(p.v.n);
            double d = std::asinh(wn);
            return w * (d / wn);
        }
    }
    return Vec::zero(p.v.n);
}

Point exp_map(const Point& p, const Vec& u) {
    switch (p.space.curv) {
        case CurvatureSign::flat: return Point{p.space, p.v + u};
        case CurvatureSign::spherical: {
            double d = norm(u);
            if (d < 1e-300) return p;
            return renormalized(Point{p.space, p.v * std::cos(d) + u * (std::sin(d) / d)});
        }
        case CurvatureSign::hyperbolic: {
            double d = std::sqrt(std::max(0.0, bilinear(p.space, u, u)));
            if (d < 1e-300) return p;
            return renormalized(Point{p.space, p.v * std::cosh(d) + u * (std::sinh(d) / d)});
        }
    }
    return p;
}

std::vector<Vec> tangent_frame(const Point& p) {
    const SpaceKind& s = p.space;
    if (!s.curved()) {
        std::vector<Vec> basis;
        for (int i = 0; i < s.dim; ++i) basis.push_back(Vec::axis(s.dim, i));
        return basis;
    }
    Mat F = ambient_frame(p, {});
    std::vector<Vec> basis;
    for (int j = 1; j < F.n; ++j) basis.push_back(F.col(j));
    if (s.dim == 2) {
        Mat D = Mat::zero(3);
        D.set_col(0, p.v);
        D.set_col(1, basis[0]);
        D.set_col(2, basis[1]);
        if (determinant(D) < 0) basis[1] = -basis[1];
    }
    return basis;
}

double angle_at(const Point& apex, const Point& a, const Point& b) {
    const SpaceKind& s = apex.space;
    Vec u = log_map(apex, a), v = log_map(apex, b);
    double un = std::sqrt(bilinear(s, u, u)), vn = std::sqrt(bilinear(s, v, v));
    if (un < 1e-300 || vn < 1e-300) throw geometry_error("angle at coincident points");
    u = u * (1.0 / un);
    v = v * (1.0 / vn);
    Vec d = u - v, m = u + v;
    double dn = std::sqrt(std::max(0.0, bilinear(s, d, d)));
    double mn = std::sqrt(std::max(0.0, bilinear(s, m, m)));
    return 2.0 * std::atan2(dn, mn);
}

// ---------------------------------------------------------------------------
// Isometries

Isometry Isometry::identity(const SpaceKind& space) {
    Isometry f;
    f.space = space;
    if (space.curved()) {
        f.linear = Mat::identity(space.ambient_dim());
    } else {
        f.linear = Mat::identity(space.dim);
        f.translation = Vec::zero(space.dim);
    }
    return f;
}

Point apply(const Isometry& f, const Point& p) {
    if (f.space.curved()) return renormalized(Point{p.space, f.linear * p.v});
    return Point{p.space, f.linear * p.v + f.translation};
}

Vec apply_tangent(const Isometry& f, const Vec& u) { return f.linear * u; }

Isometry compose(const Isometry& f, const Isometry& g) {
    Isometry r;
    r.space = f.space;
    r.linear = f.linear * g.linear;
    if (!f.space.curved()) r.translation = f.linear * g.translation + f.translation;
    return r;
}

Isometry inverse(const Isometry& f) {
    Isometry r;
    r.space = f.space;
    switch (f.space.curv) {
        case CurvatureSign::spherical: r.linear = f.linear.transposed(); break;
        case CurvatureSign::hyperbolic: {
            // J M^T J with J = diag(-1, 1, ..., 1)
            Mat Mt = f.linear.transposed();
            Mat R = Mt;
            for (int i = 0; i < Mt.n; ++i)
                for (int j = 0; j < Mt.n; ++j) {
                    double v = Mt.at(i, j);
                    if ((i == 0) != (j == 0)) v = -v;
                    R.at(i, j) = v;
                }
            r.linear = R;
            break;
        }
        case CurvatureSign::flat: {
            r.linear = f.linear.transposed();
            r.translation = -(r.linear * f.translation);
            break;
        }
    }
    return r;
}

double isometry_residual(const Isometry& f) {
    const SpaceKind& s = f.space;
    int n = f.linear.n;
    // G - M^T G M, with G the ambient form
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double mij = 0;
            for (int k = 0; k < n; ++k) {
                double gk = (s.curv == CurvatureSign::hyperbolic && k == 0) ? -1.0 : 1.0;
                mij += f.linear.at(k, i) * gk * f.linear.at(k, j);
            }
            double gij = (i == j) ? ((s.curv == CurvatureSign::hyperbolic && i == 0) ? -1.0 : 1.0)
                                  : 0.0;
            worst = std::max(worst, std::fabs(mij - gij));
        }
    worst = std::max(worst, std::fabs(determinant(f.linear) - 1.0));
    if (s.curv == CurvatureSign::hyperbolic && f.linear.at(0, 0) <= 0)
        worst = std::max(worst, 1.0);  // would swap the hyperboloid sheets
    return worst;
}

Isometry point_reflection(const Point& c) {
    const SpaceKind& s = c.space;
    if (s.dim != 2)
        throw geometry_error("point reflection as a group element needs dimension 2");
    Isometry f;
    f.space = s;
    switch (s.curv) {
        case CurvatureSign::spherical: {
            Mat m = Mat::zero(3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m.at(i, j) = 2 * c.v[i] * c.v[j] - (i == j ? 1 : 0);
            f.linear = m;
            break;
        }
        case CurvatureSign::hyperbolic: {
            // x -> -x - 2<x,c>c   (matrix -I - 2 c (Jc)^T)
            Mat m = Mat::zero(3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double jc = (j == 0) ? -c.v[j] : c.v[j];
                    m.at(i, j) = -2 * c.v[i] * jc - (i == j ? 1 : 0);
                }
            f.linear = m;
            break;
        }
        case CurvatureSign::flat: {
            Mat m = Mat::zero(2);
            m.at(0, 0) = m.at(1, 1) = -1;
            f.linear = m;
            f.translation = c.v * 2.0;
            break;
        }
    }
    return f;
}

Point reflect_through_point(const Point& c, const Point& p) {
    if (c.space.curv == CurvatureSign::spherical && pi - distance(c, p) < 1e-12)
        return p;  // the antipode of the center is fixed
    return exp_map(c, -log_map(c, p));
}

Isometry rotation_about_point(const Point& c, double angle) {
    const SpaceKind& s = c.space;
    if (s.dim != 2) throw geometry_error("rotation_about_point needs dimension 2");
    if (!s.curved()) {
        Isometry f;
        f.space = s;
        Mat m = Mat::zero(2);
        m.at(0, 0) = std::cos(angle);
        m.at(0, 1) = -std::sin(angle);
        m.at(1, 0) = std::sin(angle);
        m.at(1, 1) = std::cos(angle);
        f.linear = m;
        f.translation = c.v - m * c.v;
        return f;
    }
    Mat B = Mat::identity(3);
    B.at(1, 1) = std::cos(angle);
    B.at(1, 2) = -std::sin(angle);
    B.at(2, 1) = std::sin(angle);
    B.at(2, 2) = std::cos(angle);
    Isometry f;
    f.space = s;
    f.linear = conjugate_block(c, {}, B);
    return f;
}

Isometry translation_along_geodesic(const Geodesic& g, double s) {
    const SpaceKind& sp = g.space;
    Isometry f;
    f.space = sp;
    switch (sp.curv) {
        case CurvatureSign::flat: {
            f.linear = Mat::identity(2);
            Vec dir(g.normal[1], -g.normal[0]);
            f.translation = dir * s;
            return f;
        }
        case CurvatureSign::spherical: {
            Point p0 = geodesic_at(g, 0.0);
            Vec u = log_map(p0, geodesic_at(g, 0.1));
            Mat B = Mat::identity(3);
            B.at(0, 0) = std::cos(s);
            B.at(0, 1) = -std::sin(s);
            B.at(1, 0) = std::sin(s);
            B.at(1, 1) = std::cos(s);
            f.linear = conjugate_block(p0, {normalized(u)}, B);
            return f;
        }
        case CurvatureSign::hyperbolic: {
            Point p0 = geodesic_at(g, 0.0);
            Vec u = log_map(p0, geodesic_at(g, 0.1));
            double un = std::sqrt(bilinear(sp, u, u));
            Mat B = Mat::identity(3);
            B.at(0, 0) = std::cosh(s);
            B.at(0, 1) = std::sinh(s);
            B.at(1, 0) = std::sinh(s);
            B.at(1, 1) = std::cosh(s);
            f.linear = conjugate_block(p0, {u * (1.0 / un)}, B);
            return f;
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Geodesics

Geodesic geodesic_from_ideal_angles(const SpaceKind& space, double theta1, double theta2) {
    if (space.curv != CurvatureSign::hyperbolic)
        throw geometry_error("ideal endpoints exist in hyperbolic space only");
    if (angle_gap(theta1, theta2) < 1e-12)
        throw geometry_error("ideal endpoints of a geodesic must be distinct");
    Geodesic g;
    g.space = space;
    g.theta1 = wrap_angle(theta1);
    g.theta2 = wrap_angle(theta2);
    return g;
}

Geodesic geodesic_through_points(const Point& p, const Point& q) {
    const SpaceKind& s = p.space;
    switch (s.curv) {
        case CurvatureSign::hyperbolic: {
            Vec u = log_map(p, q);
            double un = std::sqrt(bilinear(s, u, u));
            if (un < 1e-12) throw geometry_error("geodesic through coincident points");
            return geodesic_through_direction(p, u * (1.0 / un));
        }
        case CurvatureSign::spherical: {
            Vec w = cross(p.v, q.v);
            if (norm(w) < 1e-12)
                throw geometry_error("great circle through (anti)coincident points");
            Geodesic g;
            g.space = s;
            g.pole = normalized(w);
            return g;
        }
        case CurvatureSign::flat: {
            Vec d = q.v - p.v;
            if (norm(d) < 1e-12) throw geometry_error("line through coincident points");
            return geodesic_through_direction(p, normalized(d));
        }
    }
    throw geometry_error("unreachable");
}

Geodesic geodesic_through_direction(const Point& p, const Vec& u) {
    const SpaceKind& s = p.space;
    Geodesic g;
    g.space = s;
    switch (s.curv) {
        case CurvatureSign::hyperbolic: {
            g.theta1 = boundary_angle_of(p.v - u);
            g.theta2 = boundary_angle_of(p.v + u);
            return g;
        }
        case CurvatureSign::spherical: {
            g.pole = normalized(cross(p.v, u));
            return g;
        }
        case CurvatureSign::flat: {
            g.normal = rot90(u);
            g.offset = dot(g.normal, p.v);
            return g;
        }
    }
    return g;
}

Geodesic reversed(const Geodesic& g) {
    Geodesic r = g;
    switch (g.space.curv) {
        case CurvatureSign::hyperbolic: std::swap(r.theta1, r.theta2); break;
        case CurvatureSign::spherical: r.pole = -g.pole; break;
        case CurvatureSign::flat:
            r.normal = -g.normal;
            r.offset = -g.offset;
            break;
    }
    return r;
}

namespace {

// Reference point of a spherical great circle: closest circle point to the
// base point, or a fixed fallback when the base point is a pole.
Point sphere_reference(const Geodesic& g) {
    Vec b = Vec::axis(3, 0);
    Vec r = b - g.pole * dot(b, g.pole);
    if (norm(r) < 1e-9) {
        Vec e = Vec::axis(3, 1);
        r = e - g.pole * dot(e, g.pole);
    }
    return Point{g.space, normalized(r)};
}

}  // namespace

Point geodesic_at(const Geodesic& g, double u) {
    const SpaceKind& s = g.space;
    switch (s.curv) {
        case CurvatureSign::hyperbolic: {
            Vec l1 = null_direction(g.theta1), l2 = null_direction(g.theta2);
            double mu = -bilinear(s, l1, l2);
            double c = 1.0 / std::sqrt(2 * mu);
            return renormalized(
                Point{s, (l1 * std::exp(-u) + l2 * std::exp(u)) * c});
        }
        case CurvatureSign::spherical: {
            Point r0 = sphere_reference(g);
            Vec d0 = cross(g.pole, r0.v);
            return renormalized(Point{s, r0.v * std::cos(u) + d0 * std::sin(u)});
        }
        case CurvatureSign::flat: {
            Vec r0 = g.normal * g.offset;
            Vec dir(g.normal[1], -g.normal[0]);
            return Point{s, r0 + dir * u};
        }
    }
    throw geometry_error("unreachable");
}

double geodesic_parameter_of(const Geodesic& g, const Point& p) {
    const SpaceKind& s = g.space;
    switch (s.curv) {
        case CurvatureSign::hyperbolic: {
            Vec l1 = null_direction(g.theta1), l2 = null_direction(g.theta2);
            double a = -bilinear(s, p.v, l1), b = -bilinear(s, p.v, l2);
            return 0.5 * std::log(a / b);
        }
        case CurvatureSign::spherical: {
            Point r0 = sphere_reference(g);
            Vec d0 = cross(g.pole, r0.v);
            Vec q = p.v - g.pole * dot(p.v, g.pole);
            if (norm(q) < 1e-12) return 0.0;  // p is a pole; every point projects
            return std::atan2(dot(d0, q), dot(r0.v, q));
        }
        case CurvatureSign::flat: {
            Vec dir(g.normal[1], -g.normal[0]);
            Vec r0 = g.normal * g.offset;
            return dot(dir, p.v - r0);
        }
    }
    return 0.0;
}

Vec hyperbolic_pole(const Geodesic& g) {
    const SpaceKind& s = g.space;
    Vec l1 = null_direction(g.theta1), l2 = null_direction(g.theta2);
    return normalize_spacelike(s, form_flip(s, cross(l1, l2)));
}

double signed_geodesic_distance(const Geodesic& g, const Point& p) {
    switch (g.space.curv) {
        case CurvatureSign::hyperbolic:
            return std::asinh(bilinear(g.space, p.v, hyperbolic_pole(g)));
        case CurvatureSign::spherical:
            return std::asin(std::clamp(dot(p.v, g.pole), -1.0, 1.0));
        case CurvatureSign::flat: return dot(g.normal, p.v) - g.offset;
    }
    return 0.0;
}

Point foot_of_perpendicular(const Geodesic& g, const Point& p) {
    const SpaceKind& s = g.space;
    switch (s.curv) {
        case CurvatureSign::hyperbolic: {
            Vec w = hyperbolic_pole(g);
            Vec f = p.v - w * bilinear(s, p.v, w);
            return renormalized(Point{s, f});
        }
        case CurvatureSign::spherical: {
            Vec q = p.v - g.pole * dot(p.v, g.pole);
            if (norm(q) < 1e-12) return sphere_reference(g);
            return Point{s, normalized(q)};
        }
        case CurvatureSign::flat:
            return Point{s, p.v - g.normal * (dot(g.normal, p.v) - g.offset)};
    }
    throw geometry_error("unreachable");
}

bool same_geodesic(const Geodesic& a, const Geodesic& b, double tol) {
    switch (a.space.curv) {
        case CurvatureSign::hyperbolic: {
            bool fwd = angle_gap(a.theta1, b.theta1) < tol && angle_gap(a.theta2, b.theta2) < tol;
            bool rev = angle_gap(a.theta1, b.theta2) < tol && angle_gap(a.theta2, b.theta1) < tol;
            return fwd || rev;
        }
        case CurvatureSign::spherical:
            return norm(a.pole - b.pole) < tol || norm(a.pole + b.pole) < tol;
        case CurvatureSign::flat: {
            bool fwd = norm(a.normal - b.normal) < tol && std::fabs(a.offset - b.offset) < tol;
            bool rev = norm(a.normal + b.normal) < tol && std::fabs(a.offset + b.offset) < tol;
            return fwd || rev;
        }
    }
    return false;
}

GeodesicMeeting meet_geodesics(const Geodesic& a, const Geodesic& b, const Tolerances& tol) {
    const SpaceKind& s = a.space;
    switch (s.curv) {
        case CurvatureSign::hyperbolic: {
            Vec wa = hyperbolic_pole(a), wb = hyperbolic_pole(b);
            Vec v = form_flip(s, cross(wa, wb));
            double q = bilinear(s, v, v);
            if (q < -tol.geometry)
                return {GeodesicRelation::intersecting, Point{s, normalize_timelike(s, v)}};
            if (q > tol.geometry) return {GeodesicRelation::ultraparallel, std::nullopt};
            return {GeodesicRelation::asymptotic, std::nullopt};
        }
        case CurvatureSign::spherical: {
            Vec v = cross(a.pole, b.pole);
            if (norm(v) < tol.geometry)
                throw coincident_cycles_error("great circles coincide");
            return {GeodesicRelation::intersecting, Point{s, normalized(v)}};
        }
        case CurvatureSign::flat: {
            double det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
            if (std::fabs(det) < tol.geometry) {
                if (same_geodesic(a, b, 1e-9)) throw coincident_cycles_error("lines coincide");
                return {GeodesicRelation::ultraparallel, std::nullopt};
            }
            double x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det;
            double y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det;
            return {GeodesicRelation::intersecting, Point{s, Vec(x, y)}};
        }
    }
    return {GeodesicRelation::ultraparallel, std::nullopt};
}

PerpendicularSegment common_perpendicular(const Geodesic& a, const Geodesic& b,
                                          const Tolerances& tol) {
    const SpaceKind& s = a.space;
    if (s.curv != CurvatureSign::hyperbolic)
        throw geometry_error("common perpendicular implemented for hyperbolic lines");
    Vec wa = hyperbolic_pole(a), wb = hyperbolic_pole(b);
    Vec v = form_flip(s, cross(wa, wb));
    double q = bilinear(s, v, v);
    if (q < -tol.geometry) throw lines_intersect_error("lines meet at a finite point");
    if (q <= tol.geometry) throw lines_asymptotic_error("lines share an ideal point");
    Vec wp = v * (1.0 / std::sqrt(q));
    auto foot_on = [&](const Vec& wline) {
        Vec f = form_flip(s, cross(wline, wp));
        return Point{s, normalize_timelike(s, f)};
    };
    PerpendicularSegment seg{foot_on(wa), foot_on(wb), 0.0,
                             Geodesic{}};
    seg.length = distance(seg.foot_a, seg.foot_b);
    seg.line = geodesic_through_points(seg.foot_a, seg.foot_b);
    return seg;
}

Geodesic perpendicular_through(const Geodesic& g, const Point& p) {
    const SpaceKind& s = g.space;
    Point foot = foot_of_perpendicular(g, p);
    switch (s.curv) {
        case CurvatureSign::hyperbolic: return geodesic_through_direction(foot, hyperbolic_pole(g));
        case CurvatureSign::spherical: {
            Vec d = g.pole - foot.v * dot(g.pole, foot.v);
            return geodesic_through_direction(foot, normalized(d));
        }
        case CurvatureSign::flat: return geodesic_through_direction(foot, g.normal);
    }
    throw geometry_error("unreachable");
}

std::pair<double, double> ideal_angles_through(const Point& p, const Point& q) {
    Geodesic g = geodesic_through_points(p, q);
    return {g.theta1, g.theta2};
}

double boundary_angle_image(const Isometry& f, double theta) {
    Vec v = f.linear * null_direction(theta);
    return boundary_angle_of(v);
}

// ---------------------------------------------------------------------------
// Charts

ChartKind conformal_chart(const SpaceKind& space) {
    switch (space.curv) {
        case CurvatureSign::hyperbolic: return ChartKind::poincare;
        case CurvatureSign::spherical: return ChartKind::stereographic;
        case CurvatureSign::flat: return ChartKind::identity;
    }
    return ChartKind::identity;
}

Vec to_chart(ChartKind chart, const Point& p) {
    const Vec& v = p.v;
    switch (chart) {
        case ChartKind::klein: return Vec(v[1] / v[0], v[2] / v[0]);
        case ChartKind::poincare: return Vec(v[1] / (1 + v[0]), v[2] / (1 + v[0]));
        case ChartKind::gnomonic:
            if (v[0] <= 0)
                throw out_of_chart_domain_error("point outside the gnomonic hemisphere");
            return Vec(v[1] / v[0], v[2] / v[0]);
        case ChartKind::stereographic:
            if (1 + v[0] < 1e-15)
                throw out_of_chart_domain_error("projection center has no chart image");
            return Vec(2 * v[1] / (1 + v[0]), 2 * v[2] / (1 + v[0]));
        case ChartKind::identity: return Vec(v[0], v[1]);
    }
    throw geometry_error("unreachable");
}

Point from_chart(ChartKind chart, const SpaceKind& space, const Vec& xy) {
    double s2 = xy[0] * xy[0] + xy[1] * xy[1];
    switch (chart) {
        case ChartKind::klein: {
            if (s2 >= 1.0) throw out_of_chart_domain_error("collinear chart needs |xi| < 1");
            double w = 1.0 / std::sqrt(1 - s2);
            return Point{space, Vec(w, xy[0] * w, xy[1] * w)};
        }
        case ChartKind::poincare: {
            if (s2 >= 1.0) throw out_of_chart_domain_error("conformal chart needs |xi| < 1");
            double w = 1.0 / (1 - s2);
            return Point{space, Vec((1 + s2) * w, 2 * xy[0] * w, 2 * xy[1] * w)};
        }
        case ChartKind::gnomonic: {
            double w = 1.0 / std::sqrt(1 + s2);
            return Point{space, Vec(w, xy[0] * w, xy[1] * w)};
        }
        case ChartKind::stereographic: {
            double w = 1.0 / (4 + s2);
            return Point{space, Vec((4 - s2) * w, 4 * xy[0] * w, 4 * xy[1] * w)};
        }
        case ChartKind::identity: return Point{space, Vec(xy[0], xy[1])};
    }
    throw geometry_error("unreachable");
}

// ---------------------------------------------------------------------------
// Deterministic randomness

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master, const std::string& name) {
    return fnv1a64(name + ":" + std::to_string(master));
}

namespace {

// Isometry carrying the base point to target along their geodesic.
Isometry transport_base_to(const Point& target) {
    const SpaceKind& s = target.space;
    Point base = base_point(s);
    double d = distance(base, target);
    if (!s.curved()) {
        Isometry f = Isometry::identity(s);
        f.translation = target.v - base.v;
        return f;
    }
    if (d < 1e-14) return Isometry::identity(s);
    Vec u = log_map(base, target);
    double un = std::sqrt(bilinear(s, u, u));
    Mat B = Mat::identity(s.ambient_dim());
    if (s.curv == CurvatureSign::spherical) {
        B.at(0, 0) = std::cos(d);
        B.at(0, 1) = -std::sin(d);
        B.at(1, 0) = std::sin(d);
        B.at(1, 1) = std::cos(d);
    } else {
        B.at(0, 0) = std::cosh(d);
        B.at(0, 1) = std::sinh(d);
        B.at(1, 0) = std::sinh(d);
        B.at(1, 1) = std::cosh(d);
    }
    Isometry f;
    f.space = s;
    f.linear = conjugate_block(base, {u * (1.0 / un)}, B);
    return f;
}

}  // namespace

Isometry random_isometry(const SpaceKind& space, Rng& rng, double radius_bound) {
    Point base = base_point(space);
    // random rotation fixing the base point
    Isometry rot;
    if (space.dim == 2) {
        rot = rotation_about_point(base, rng.angle());
    } else {
        std::vector<Vec> frame = tangent_frame(base);
        double a1 = rng.angle(), a2 = rng.angle(), a3 = rng.angle();
        // three plane rotations in frame coordinates generate SO(3) on the fiber
        auto plane_rot = [&](int i, int j, double ang) {
            int n = space.ambient_dim();
            Mat B = Mat::identity(n);
            B.at(i, i) = std::cos(ang);
            B.at(i, j) = -std::sin(ang);
            B.at(j, i) = std::sin(ang);
            B.at(j, j) = std::cos(ang);
            Isometry f;
            f.space = space;
            if (space.curved()) {
                f.linear = conjugate_block(base, frame, B);
            } else {
                f.linear = B;
                f.translation = Vec::zero(space.dim);
            }
            return f;
        };
        int off = space.curved() ? 1 : 0;
        rot = compose(plane_rot(off + 0, off + 1, a1),
                      compose(plane_rot(off + 1, off + 2, a2), plane_rot(off + 0, off + 2, a3)));
    }
    if (radius_bound <= 0) return rot;
    double dist = radius_bound * rng.unit();
    std::vector<Vec> frame = tangent_frame(base);
    Vec dir = Vec::zero(space.ambient_dim());
    if (space.dim == 2) {
        double phi = rng.angle();
        dir = frame[0] * std::cos(phi) + frame[1] * std::sin(phi);
    } else {
        double z = rng.uniform(-1.0, 1.0), phi = rng.angle();
        double r = std::sqrt(std::max(0.0, 1 - z * z));
        dir = frame[0] * (r * std::cos(phi)) + frame[1] * (r * std::sin(phi)) + frame[2] * z;
    }
    Point target = exp_map(base, dir * dist);
    return compose(transport_base_to(target), rot);
}

}  // namespace ccg
