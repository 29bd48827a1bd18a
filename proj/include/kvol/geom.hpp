#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kvol {

// Geometric predicate tolerance (template coordinates are O(1)).
inline constexpr double eps_geom = 1e-9;
// Projective direction comparison tolerance.
inline constexpr double eps_dir = 1e-10;
// Holonomy dedup grid.
inline constexpr double eps_dedup = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }  // rotate +90 degrees

// Angle of the projective direction of v, canonicalized to [0, pi).
inline double direction_angle(Vec2 v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi - 1e-15) a = 0.0;
    return a;
}

// True if a and b span the same line through the origin.
inline bool parallel_dir(Vec2 a, Vec2 b, double tol = eps_dir) {
    return std::abs(cross(a, b)) <= tol * norm(a) * norm(b);
}

struct Mat2 {
    // row-major: [[a, b], [c, d]]
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const {
        double dt = det();
        if (std::abs(dt) < 1e-300) throw std::invalid_argument("Mat2::inverse: singular matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    static Mat2 identity() { return {}; }
};

// Segment-segment intersection helper: returns parameters (s, t) with
// p + s*(q-p) == r + t*(w-r) when the segments' lines are not parallel.
struct LineHit {
    bool ok = false;
    double s = 0.0;
    double t = 0.0;
};

inline LineHit line_intersect(Vec2 p, Vec2 q, Vec2 r, Vec2 w) {
    Vec2 d1 = q - p, d2 = w - r;
    double den = cross(d1, d2);
    if (std::abs(den) <= 1e-15 * (norm(d1) * norm(d2))) return {};
    Vec2 rp = r - p;
    return {true, cross(rp, d2) / den, cross(rp, d1) / den};
}

}  // namespace kvol
