// Core value types for the constant-curvature geometry library: space
// descriptors, small fixed-capacity vectors/matrices for ambient coordinates,
// centralized tolerances, and the error hierarchy.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccg {

// ---------------------------------------------------------------------------
// Errors

struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct antipodal_pair_error : geometry_error {
    explicit antipodal_pair_error(const std::string& msg) : geometry_error(msg) {}
};
struct out_of_chart_domain_error : geometry_error {
    explicit out_of_chart_domain_error(const std::string& msg) : geometry_error(msg) {}
};
struct lines_intersect_error : geometry_error {
    explicit lines_intersect_error(const std::string& msg) : geometry_error(msg) {}
};
struct lines_asymptotic_error : geometry_error {
    explicit lines_asymptotic_error(const std::string& msg) : geometry_error(msg) {}
};
struct coincident_cycles_error : geometry_error {
    explicit coincident_cycles_error(const std::string& msg) : geometry_error(msg) {}
};
struct step_out_of_range_error : geometry_error {
    explicit step_out_of_range_error(const std::string& msg) : geometry_error(msg) {}
};
struct not_congruent_error : geometry_error {
    explicit not_congruent_error(const std::string& msg) : geometry_error(msg) {}
};
struct common_finite_point_error : geometry_error {
    explicit common_finite_point_error(const std::string& msg) : geometry_error(msg) {}
};
struct nested_disks_error : geometry_error {
    explicit nested_disks_error(const std::string& msg) : geometry_error(msg) {}
};
struct degenerate_contact_error : geometry_error {
    explicit degenerate_contact_error(const std::string& msg) : geometry_error(msg) {}
};
struct degenerate_vertex_error : geometry_error {
    explicit degenerate_vertex_error(const std::string& msg) : geometry_error(msg) {}
};
struct unsupported_region_error : geometry_error {
    explicit unsupported_region_error(const std::string& msg) : geometry_error(msg) {}
};
struct hemisphere_violation_error : geometry_error {
    explicit hemisphere_violation_error(const std::string& msg) : geometry_error(msg) {}
};
struct angles_too_small_error : geometry_error {
    explicit angles_too_small_error(const std::string& msg) : geometry_error(msg) {}
};
// Clause records which hypothesis of the two-component reduction failed.
struct hypothesis_violated_error : geometry_error {
    int clause;
    hypothesis_violated_error(int clause_, const std::string& msg)
        : geometry_error(msg), clause(clause_) {}
};
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct space_mismatch_error : std::runtime_error {
    explicit space_mismatch_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct io_failure_error : std::runtime_error {
    explicit io_failure_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct unknown_experiment_error : std::runtime_error {
    explicit unknown_experiment_error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Space descriptor

enum class CurvatureSign : int { spherical = +1, flat = 0, hyperbolic = -1 };

struct SpaceKind {
    CurvatureSign curv = CurvatureSign::hyperbolic;
    int dim = 2;  // intrinsic dimension, 2 everywhere except ball tests (3)

    int ambient_dim() const { return curv == CurvatureSign::flat ? dim : dim + 1; }
    bool curved() const { return curv != CurvatureSign::flat; }

    bool operator==(const SpaceKind& o) const = default;

    static SpaceKind sphere(int d = 2) { return {CurvatureSign::spherical, d}; }
    static SpaceKind euclidean(int d = 2) { return {CurvatureSign::flat, d}; }
    static SpaceKind hyperbolic(int d = 2) { return {CurvatureSign::hyperbolic, d}; }
    std::string name() const {
        std::string base = curv == CurvatureSign::spherical ? "S"
                         : curv == CurvatureSign::flat      ? "E"
                                                            : "H";
        return base + std::to_string(dim);
    }
};

// ---------------------------------------------------------------------------
// Tolerances (one knob per concern, shared by all modules)

struct Tolerances {
    double form = 1e-10;         // ambient constraint / bilinear-form residuals
    double geometry = 1e-8;      // coincidence of points, angles, lengths
    double symmetry = 1e-6;      // residual below which a set counts symmetric
    double membership = 1e-9;    // half-width of the boundary classification band
    double tangency = 1e-12;     // discriminant threshold for tangency
    double chart_limit = 1e-6;   // 1 - chart_limit is the noncompactness sentinel
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

// ---------------------------------------------------------------------------
// Small vector / matrix (ambient dimension is at most 4)

struct Vec {
    std::array<double, 4> a{0, 0, 0, 0};
    int n = 0;

    Vec() = default;
    Vec(double x, double y) : a{x, y, 0, 0}, n(2) {}
    Vec(double x, double y, double z) : a{x, y, z, 0}, n(3) {}
    Vec(double x, double y, double z, double w) : a{x, y, z, w}, n(4) {}
    static Vec zero(int n) {
        Vec v;
        v.n = n;
        return v;
    }
    static Vec axis(int n, int i, double s = 1.0) {
        Vec v = zero(n);
        v.a[static_cast<size_t>(i)] = s;
        return v;
    }

    double& operator[](int i) { return a[static_cast<size_t>(i)]; }
    double operator[](int i) const { return a[static_cast<size_t>(i)]; }

    Vec operator+(const Vec& o) const {
        Vec r = *this;
        for (int i = 0; i < n; ++i) r[i] += o[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r = *this;
        for (int i = 0; i < n; ++i) r[i] -= o[i];
        return r;
    }
    Vec operator*(double s) const {
        Vec r = *this;
        for (int i = 0; i < n; ++i) r[i] *= s;
        return r;
    }
    Vec operator-() const { return *this * -1.0; }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double dot(const Vec& x, const Vec& y) {
    double s = 0;
    for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
    return s;
}

// Euclidean cross product, ambient dimension 3 only.
inline Vec cross(const Vec& x, const Vec& y) {
    return Vec(x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
               x[0] * y[1] - x[1] * y[0]);
}

inline double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

inline Vec normalized(const Vec& v) {
    double m = norm(v);
    return v * (1.0 / m);
}

// Bilinear form of the ambient model: Minkowski with signature (-,+,...,+)
// (coordinate 0 timelike) for hyperbolic space, Euclidean dot otherwise.
inline double bilinear(const SpaceKind& space, const Vec& x, const Vec& y) {
    double s = dot(x, y);
    if (space.curv == CurvatureSign::hyperbolic) s -= 2.0 * x[0] * y[0];
    return s;
}

// Applies the metric involution J = diag(-1, 1, ..., 1) for hyperbolic space;
// identity otherwise. For any a, b: bilinear(J(a x b), a) = 0 in ambient dim 3.
inline Vec form_flip(const SpaceKind& space, const Vec& v) {
    Vec r = v;
    if (space.curv == CurvatureSign::hyperbolic) r[0] = -r[0];
    return r;
}

struct Mat {
    std::array<double, 16> a{};
    int n = 0;

    static Mat identity(int n) {
        Mat m;
        m.n = n;
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
    static Mat zero(int n) {
        Mat m;
        m.n = n;
        return m;
    }

    double& at(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }

    Vec col(int j) const {
        Vec v = Vec::zero(n);
        for (int i = 0; i < n; ++i) v[i] = at(i, j);
        return v;
    }
    void set_col(int j, const Vec& v) {
        for (int i = 0; i < n; ++i) at(i, j) = v[i];
    }

    Mat operator*(const Mat& o) const {
        Mat r = zero(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double x = at(i, k);
                if (x == 0.0) continue;
                for (int j = 0; j < n; ++j) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }
    Vec operator*(const Vec& v) const {
        Vec r = Vec::zero(n);
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int j = 0; j < n; ++j) s += at(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }
    Mat transposed() const {
        Mat r = zero(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(i, j) = at(j, i);
        return r;
    }
};

inline double det2(double a, double b, double c, double d) { return a * d - b * c; }

inline double determinant(const Mat& m) {
    if (m.n == 1) return m.at(0, 0);
    if (m.n == 2) return det2(m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
    if (m.n == 3)
        return m.at(0, 0) * det2(m.at(1, 1), m.at(1, 2), m.at(2, 1), m.at(2, 2)) -
               m.at(0, 1) * det2(m.at(1, 0), m.at(1, 2), m.at(2, 0), m.at(2, 2)) +
               m.at(0, 2) * det2(m.at(1, 0), m.at(1, 1), m.at(2, 0), m.at(2, 1));
    // n == 4, cofactor expansion along the first row
    double d = 0;
    for (int j = 0; j < 4; ++j) {
        Mat sub = Mat::zero(3);
        for (int i = 1; i < 4; ++i) {
            int jj = 0;
            for (int k = 0; k < 4; ++k) {
                if (k == j) continue;
                sub.at(i - 1, jj++) = m.at(i, k);
            }
        }
        d += ((j % 2 == 0) ? 1.0 : -1.0) * m.at(0, j) * determinant(sub);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Angle helpers (angles live on [0, 2*pi))

inline constexpr double pi = 3.14159265358979323846;

inline double wrap_angle(double t) {
    t = std::fmod(t, 2 * pi);
    if (t < 0) t += 2 * pi;
    return t;
}

// Smallest absolute difference between two angles.
inline double angle_gap(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, 2 * pi - d);
}

// Counterclockwise arc length from a to b, in [0, 2*pi).
inline double ccw_span(double a, double b) { return wrap_angle(b - a); }

}  // namespace ccg
