#include "kvol/kvol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kvol {

namespace {
constexpr double pi = std::numbers::pi;
}

KPairResult K_pair(int n, Vec2 d, Vec2 dprime, double lmax, const EnumerateOptions& opt) {
    if (parallel_dir(d, dprime))
        throw std::invalid_argument("K_pair: directions must be distinct");
    SurfaceTemplate s0 = build_staircase(n);
    auto conns = enumerate_saddle_connections(s0, lmax, opt);
    std::vector<SaddleConnection> as, bs;
    for (const auto& sc : conns) {
        if (parallel_dir(sc.holonomy, d)) as.push_back(sc);
        if (parallel_dir(sc.holonomy, dprime)) bs.push_back(sc);
    }
    if (as.empty() || bs.empty())
        throw NoCandidatesError("K_pair: no candidates below Lmax in direction " +
                                std::string(as.empty() ? "d" : "d'"));
    IntMatrix B = edge_intersection_matrix(s0);
    PairBest best = max_wedge_ratio_cross(as, bs, B);
    if (best.i < 0)
        throw NoCandidatesError("K_pair: all candidate pairs have zero intersection");
    return {best.value, as[best.i], bs[best.j]};
}

double kvol_closed_form(int n, UHPoint X) {
    double s = std::sin(pi / n), c = std::cos(pi / n);
    double inv_cosh = X.y / std::hypot(X.x, X.y);  // sin theta(X, 0, inf)
    return (n / 2.0) * (c / s) * (1.0 / s) * inv_cosh;
}

KVolReport kvol_empirical(int n, UHPoint X, double lmax, const EnumerateOptions& opt) {
    if (X.y <= 0) throw std::invalid_argument("kvol_empirical: point must have y > 0");
    double rt = std::sqrt(X.y);
    Mat2 mx{1 / rt, X.x / rt, 0, rt};
    SurfaceTemplate s = apply_matrix(build_staircase(n), mx);
    auto conns = enumerate_saddle_connections(s, lmax, opt);
    if (conns.empty())
        throw NoCandidatesError("kvol_empirical: no saddle connections below Lmax");
    IntMatrix B = edge_intersection_matrix(s);
    PairBest best = max_length_ratio_pairs(conns, B);
    if (best.i < 0)
        throw NoCandidatesError("kvol_empirical: no intersecting pair below Lmax");
    KVolReport r;
    r.n = n;
    r.point = X;
    r.closed_form = kvol_closed_form(n, X);
    r.empirical = s.area() * best.value;
    r.lmax = lmax;
    r.gap = r.closed_form - r.empirical;
    r.pair_alpha = best.i;
    r.pair_beta = best.j;
    r.alpha = conns[best.i];
    r.beta = conns[best.j];
    return r;
}

double ratio_F(double d, double dprime, UHPoint X) {
    if (!(d < dprime)) throw std::invalid_argument("ratio_F: requires d < d'");
    return std::sqrt(G_function(d, dprime, X.x, X.y)) / (dprime - d);
}

double G_function(double d, double dprime, double x, double y) {
    double t = (x - d) * (x - dprime) + y * y;
    return (t * t + y * y * (dprime - d) * (dprime - d)) / (x * x + y * y);
}

double dG_dy(double d, double dprime, double x, double y) {
    double r2 = x * x + y * y;
    double poly = y * y * y * y + 2 * x * x * y * y + x * x * x * x -
                  d * dprime * (2 * x - d) * (2 * x - dprime);
    return 2 * y / (r2 * r2) * poly;
}

double G_circle(double d, double dprime, double t) {
    double s = 1 + d * dprime;
    return s * s - 2 * s * (d + dprime) * std::cos(t) + 2 * d * dprime * std::cos(2 * t) - 1;
}

double dG_circle_dt(double d, double dprime, double t) {
    return 2 * std::sin(t) * ((1 + d * dprime) * (d + dprime) - 4 * d * dprime * std::cos(t));
}

ScanResult scan_disc(int n, int nx, int ny, double ymax, double lmax, bool parallel) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("scan_disc: grid must be at least 2x2");
    double phi = 2 * std::cos(pi / n);
    ScanResult res;
    res.n = n;
    res.nx = nx;
    res.ny = ny;
    res.ymax = ymax;
    res.lmax = lmax;
    res.cells.resize(static_cast<size_t>(nx) * ny);

    int total = nx * ny;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int idx = 0; idx < total; ++idx) {
        int ix = idx / ny, iy = idx % ny;
        double x = phi / 2 * ix / (nx - 1);
        double ylo = std::sqrt(std::max(1.0 - x * x, 0.0));
        double y = ylo + (ymax - ylo) * iy / (ny - 1);
        KVolReport r = kvol_empirical(n, {x, y}, lmax, EnumerateOptions{.parallel = false});
        res.cells[idx] = {x, y, r.closed_form, r.empirical, r.gap, r.pair_alpha, r.pair_beta};
    }

    res.argmin = res.argmax = 0;
    for (int i = 1; i < total; ++i) {
        if (res.cells[i].empirical < res.cells[res.argmin].empirical) res.argmin = i;
        if (res.cells[i].empirical > res.cells[res.argmax].empirical) res.argmax = i;
    }
    return res;
}

std::vector<ParallelViolation> check_bounded_hypothesis(const SurfaceTemplate& s, double lmax,
                                                        const EnumerateOptions& opt) {
    auto conns = enumerate_saddle_connections(s, lmax, opt);
    IntMatrix B = edge_intersection_matrix(s);
    std::vector<ParallelViolation> bad;
    int n = static_cast<int>(conns.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!parallel_dir(conns[i].holonomy, conns[j].holonomy)) continue;
            long long v = algebraic_intersection(HomologyClass{conns[i].homology},
                                                 HomologyClass{conns[j].homology}, B);
            if (v != 0) bad.push_back({i, j, v});
        }
    return bad;
}

}  // namespace kvol
