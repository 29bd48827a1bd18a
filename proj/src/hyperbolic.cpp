#include "kvol/hyperbolic.hpp"

#include <cmath>

namespace kvol {

BoundaryPoint psi(Vec2 d) {
    if (std::abs(d.y) <= eps_dir * norm(d)) return BoundaryPoint::inf();
    return BoundaryPoint::at(-d.x / d.y);
}

Vec2 psi_inverse(BoundaryPoint p) {
    if (p.infinite) return {1, 0};
    return {-p.value, 1};
}

UHPoint chi(const Mat2& m) {
    if (m.det() <= 0) throw std::invalid_argument("chi: det(M) must be positive");
    double den = m.a * m.a + m.c * m.c;
    return {(m.a * m.b + m.c * m.d) / den, m.det() / den};
}

double sin_theta_endpoints(UHPoint X, BoundaryPoint p, BoundaryPoint q) {
    if (p == q) throw std::invalid_argument("sin_theta: coincident endpoints");
    double x = X.x, y = X.y;
    if (p.infinite || q.infinite) {
        double f = p.infinite ? q.value : p.value;
        return y / std::hypot(x - f, y);
    }
    double a = p.value, b = q.value;
    double num = std::abs(y * (b - a));
    double t = (x - a) * (x - b) + y * y;
    return num / std::sqrt(t * t + y * y * (b - a) * (b - a));
}

double sin_theta(UHPoint X, Vec2 d, Vec2 dprime) {
    if (parallel_dir(d, dprime))
        throw std::invalid_argument("sin_theta: directions coincide");
    return sin_theta_endpoints(X, psi(d), psi(dprime));
}

double dist_to_geodesic(UHPoint X, const BoundaryGeodesic& g) {
    double s = sin_theta_endpoints(X, g.p, g.q);
    s = std::min(s, 1.0);
    return std::acosh(1.0 / s);
}

UHPoint moebius(const Mat2& m, UHPoint z) {
    // (az + b)/(cz + d) on x + iy
    double a = m.a, b = m.b, c = m.c, d = m.d;
    double den = (c * z.x + d) * (c * z.x + d) + c * c * z.y * z.y;
    double nx = (a * z.x + b) * (c * z.x + d) + a * c * z.y * z.y;
    double ny = m.det() * z.y;
    return {nx / den, ny / den};
}

BoundaryPoint moebius(const Mat2& m, BoundaryPoint p) {
    if (p.infinite) {
        if (std::abs(m.c) < 1e-300) return BoundaryPoint::inf();
        return BoundaryPoint::at(m.a / m.c);
    }
    double den = m.c * p.value + m.d;
    if (std::abs(den) < 1e-12) return BoundaryPoint::inf();
    return BoundaryPoint::at((m.a * p.value + m.b) / den);
}

ReductionResult reduce_to_fundamental_domain(UHPoint z, const HeckeGroup& g, int max_iter) {
    ReductionResult res;
    res.point = z;
    res.total = Mat2::identity();
    auto apply_T = [&](long long k) {
        if (k == 0) return;
        Mat2 tk{1, g.phi * k, 0, 1};
        res.point.x += g.phi * k;
        res.total = tk * res.total;
        res.word.push_back("T^" + std::to_string(k));
    };
    auto apply_R = [&]() {
        res.point = moebius(g.R, res.point);
        res.total = g.R * res.total;
        res.word.push_back("R");
    };

    for (int it = 0; it < max_iter; ++it) {
        long long k = 0;
        if (std::abs(res.point.x) > g.phi / 2 + 1e-12) k = std::llround(-res.point.x / g.phi);
        apply_T(k);
        double r2 = res.point.x * res.point.x + res.point.y * res.point.y;
        if (r2 >= 1.0 - 1e-15) {
            // boundary representatives
            if (std::abs(res.point.x - g.phi / 2) < 1e-12) apply_T(-1);
            if (std::abs(r2 - 1.0) < 1e-12 && res.point.x > 1e-12) apply_R();
            return res;
        }
        apply_R();
    }
    throw std::runtime_error("reduce_to_fundamental_domain: iteration cap exceeded at x=" +
                             std::to_string(z.x) + " y=" + std::to_string(z.y));
}

double angle_consistency_check(const Mat2& m, Vec2 d, Vec2 dprime) {
    Vec2 u = m * d, v = m * dprime;
    double euclid = std::atan2(std::abs(cross(u, v)), std::abs(dot(u, v)));
    double hyp = std::asin(std::min(1.0, sin_theta(chi(m), d, dprime)));
    return std::abs(euclid - hyp);
}

}  // namespace kvol
