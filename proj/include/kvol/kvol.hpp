#pragma once

#include <optional>
#include <vector>

#include "kvol/cylinders.hpp"
#include "kvol/enumerate.hpp"
#include "kvol/homology.hpp"
#include "kvol/hyperbolic.hpp"
#include "kvol/pair_kernels.hpp"
#include "kvol/surface.hpp"

namespace kvol {

struct NoCandidatesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Certified lower bound for K(d, d') = sup |Int(a, b)| / |a ^ b| over
// connections of the staircase model in directions d and d' of length <= lmax.
struct KPairResult {
    double value = 0.0;
    SaddleConnection alpha, beta;
};
KPairResult K_pair(int n, Vec2 d, Vec2 dprime, double lmax,
                   const EnumerateOptions& opt = {});

// (n/2) cot(pi/n) / sin(pi/n) / cosh(d_hyp(X, gamma_{0,inf})).
double kvol_closed_form(int n, UHPoint X);

struct KVolReport {
    int n = 0;
    UHPoint point;
    double closed_form = 0.0;
    double empirical = 0.0;
    double lmax = 0.0;
    double gap = 0.0;  // closed_form - empirical
    int pair_alpha = -1, pair_beta = -1;
    SaddleConnection alpha, beta;
};

// Vol(M_X S0) * sup |Int| / (l l) over enumerated pairs on M_X S0, where
// M_X = [[1, x], [0, y]] / sqrt(y).  A certified lower bound at finite lmax.
KVolReport kvol_empirical(int n, UHPoint X, double lmax, const EnumerateOptions& opt = {});

// sin theta(X,0,inf) / sin theta(X,d,d') for finite boundary points d < d'.
double ratio_F(double d, double dprime, UHPoint X);
// The radicand of ratio_F (up to the 1/(d'-d)^2 factor).
double G_function(double d, double dprime, double x, double y);
double dG_dy(double d, double dprime, double x, double y);
// G restricted to the unit circle x = cos t, y = sin t, and its t-derivative.
double G_circle(double d, double dprime, double t);
double dG_circle_dt(double d, double dprime, double t);

struct ScanCell {
    double x = 0.0, y = 0.0;
    double closed_form = 0.0, empirical = 0.0, gap = 0.0;
    int pair_alpha = -1, pair_beta = -1;
};

struct ScanResult {
    int n = 0, nx = 0, ny = 0;
    double ymax = 0.0, lmax = 0.0;
    std::vector<ScanCell> cells;  // row-major: ix * ny + iy
    int argmin = -1, argmax = -1;  // empirical column
};

// Grid over the right half fundamental domain {0 <= x <= phi/2, |z| >= 1,
// y <= ymax}; each column's y-grid starts on the unit circle, so the corner
// X0 = (cos pi/n, sin pi/n) is always a grid point.
ScanResult scan_disc(int n, int nx, int ny, double ymax, double lmax, bool parallel = true);

struct ParallelViolation {
    int i = 0, j = 0;
    long long intval = 0;
};

// Pairs of parallel connections with nonzero algebraic intersection; empty on
// the Veech templates, nonempty on one-cylinder fixtures.
std::vector<ParallelViolation> check_bounded_hypothesis(const SurfaceTemplate& s, double lmax,
                                                        const EnumerateOptions& opt = {});

}  // namespace kvol
