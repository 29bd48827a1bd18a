#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "kvol/geom.hpp"

namespace kvol {

struct UHPoint {
    double x = 0.0;
    double y = 1.0;  // invariant: y > 0
};

// Point of the boundary circle R u {infinity}.
struct BoundaryPoint {
    double value = 0.0;
    bool infinite = false;

    static BoundaryPoint inf() { return {0.0, true}; }
    static BoundaryPoint at(double v) { return {v, false}; }
    bool operator==(const BoundaryPoint&) const = default;
};

struct BoundaryGeodesic {
    BoundaryPoint p, q;  // invariant: p != q
};

struct HeckeGroup {
    int n;
    double phi;  // 2 cos(pi/n)
    Mat2 T, R;

    explicit HeckeGroup(int n_)
        : n(n_), phi(2 * std::cos(std::numbers::pi / n_)),
          T{1, phi, 0, 1}, R{0, -1, 1, 0} {
        if (n_ < 5 || n_ % 2 == 0)
            throw std::invalid_argument("HeckeGroup: n must be odd and >= 5");
    }
};

// [x : y] -> -x/y, the identification of projective directions with boundary
// points (infinity for the horizontal direction).
BoundaryPoint psi(Vec2 d);
Vec2 psi_inverse(BoundaryPoint p);

// M = [[a,b],[c,d]] |-> (d i + b)/(c i + a); invariant under left rotations
// and positive rescaling of M.
UHPoint chi(const Mat2& m);

// sin of the unoriented angle the directions d, d' make on the surface
// chi(M) * S0; equals 1/cosh(hyperbolic distance to the geodesic joining
// psi(d), psi(d')).
double sin_theta(UHPoint X, Vec2 d, Vec2 dprime);
double sin_theta_endpoints(UHPoint X, BoundaryPoint p, BoundaryPoint q);

double dist_to_geodesic(UHPoint X, const BoundaryGeodesic& g);

struct ReductionResult {
    UHPoint point;
    std::vector<std::string> word;  // tokens "T^k" / "R", applied left to right
    Mat2 total;                     // product of the applied letters
};

// Move z into the fundamental domain {|Re| <= phi/2, |z| >= 1}; boundary
// representatives: Re = -phi/2, and |z| = 1 with Re <= 0.
ReductionResult reduce_to_fundamental_domain(UHPoint z, const HeckeGroup& g,
                                             int max_iter = 10000);

// |euclidean angle(Mu, Mv) - arcsin(sin_theta(chi(M), u, v))|
double angle_consistency_check(const Mat2& m, Vec2 d, Vec2 dprime);

// Moebius action of an SL2 matrix on the upper half plane / boundary.
UHPoint moebius(const Mat2& m, UHPoint z);
BoundaryPoint moebius(const Mat2& m, BoundaryPoint p);

}  // namespace kvol
