#include "kvol/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kvol {

namespace {

// Relative tolerance for direction-cone membership.  A candidate exactly on a
// cone boundary is blocked by an earlier cone point (or runs along an edge)
// and must be excluded.
constexpr double delta_dir = 1e-12;

bool strictly_between(Vec2 lo, Vec2 hi, Vec2 d) {
    double nd = norm(d);
    return cross(lo, d) > delta_dir * norm(lo) * nd &&
           cross(d, hi) > delta_dir * norm(hi) * nd;
}

struct State {
    int poly = -1;
    Vec2 offset;          // developed copy = template polygon + offset
    Vec2 lo, hi;          // open direction cone as seen from the seed corner
    int parent = -1;
    int entry_side = -1;  // side of `poly` through which the corridor enters
    int exit_side_of_parent = -1;
    Crossing entry_cross;
};

// Minimal distance from origin-based point x0 to the part of segment [a, b]
// whose direction from x0 lies in the closed cone [lo, hi].
double min_dist_in_cone(Vec2 x0, Vec2 a, Vec2 b, Vec2 lo, Vec2 hi) {
    Vec2 da = a - x0, db = b - x0;
    double t0 = 0.0, t1 = 1.0;
    if (cross(lo, da) < 0) {  // a outside: clip by the lo ray
        LineHit h = line_intersect(x0, x0 + lo, a, b);
        if (h.ok && h.s > 0) t0 = std::clamp(h.t, 0.0, 1.0);
    }
    if (cross(db, hi) < 0) {  // b outside: clip by the hi ray
        LineHit h = line_intersect(x0, x0 + hi, a, b);
        if (h.ok && h.s > 0) t1 = std::clamp(h.t, 0.0, 1.0);
    }
    if (t1 < t0) std::swap(t0, t1);
    Vec2 p = a + (b - a) * t0;
    Vec2 q = a + (b - a) * t1;
    // distance from x0 to segment [p, q]
    Vec2 d = q - p;
    double len2 = dot(d, d);
    double t = len2 > 0 ? std::clamp(dot(x0 - p, d) / len2, 0.0, 1.0) : 0.0;
    return norm(p + d * t - x0);
}

// ccw boundary walk used to push a connection onto the 1-skeleton: partial
// edge traversals at crossings cancel in pairs, so only full sides count.
void add_full_sides(const SurfaceTemplate& s, int poly, int from_vertex, int to_vertex,
                    std::vector<long long>& acc) {
    int nv = s.num_sides(poly);
    for (int j = from_vertex % nv; j != to_vertex % nv; j = (j + 1) % nv) {
        const auto& g = s.side_gluing[poly][j];
        acc[g.edge] += g.sign;
    }
}

std::vector<long long> project_to_basis(const SurfaceTemplate& s,
                                        const std::vector<long long>& full) {
    std::vector<long long> pub(s.homology_basis.size(), 0);
    for (int e = 0; e < s.num_edges(); ++e) pub[s.edge_to_basis[e]] += full[e];
    return pub;
}

std::vector<SaddleConnection> enumerate_from_wedge(const SurfaceTemplate& s, int wedge,
                                                   double lmax, size_t state_cap) {
    const LinkWedge& w = s.link[wedge];
    const int p0 = w.poly, v0 = w.vertex;
    const Vec2 x0 = s.vertex(p0, v0);
    const double reach = lmax * (1 + 1e-12) + 1e-9;

    std::vector<State> states;
    State root;
    root.poly = p0;
    root.offset = {0, 0};
    root.lo = s.vertex(p0, v0 + 1) - x0;
    root.hi = s.vertex(p0, v0 + s.num_sides(p0) - 1) - x0;
    states.push_back(root);

    std::vector<SaddleConnection> out;

    for (size_t cur = 0; cur < states.size(); ++cur) {
        if (states.size() > state_cap) throw EnumerationBudgetError(state_cap);
        State st = states[cur];
        const auto& P = s.polygons[st.poly];
        int nv = static_cast<int>(P.size());

        // candidate endpoints: corners of this copy strictly inside the cone
        for (int v = 0; v < nv; ++v) {
            Vec2 d = P[v] + st.offset - x0;
            double len = norm(d);
            if (len < eps_geom || len > reach) continue;
            if (!strictly_between(st.lo, st.hi, d)) continue;

            SaddleConnection sc;
            sc.holonomy = d;
            sc.length = len;
            sc.start_wedge = wedge;
            sc.end_wedge = s.wedge_index(st.poly, v);

            // unwind the corridor chain
            std::vector<size_t> chain;
            for (int i = static_cast<int>(cur); i >= 0; i = states[i].parent)
                chain.push_back(static_cast<size_t>(i));
            std::reverse(chain.begin(), chain.end());

            for (size_t k = 1; k < chain.size(); ++k) {
                const State& c = states[chain[k]];
                sc.crossings.push_back(c.entry_cross);
                SideRef es{c.poly, c.entry_side};
                Vec2 a = s.side_a(es) + c.offset, b = s.side_b(es) + c.offset;
                LineHit h = line_intersect(x0, x0 + d, a, b);
                sc.cross_t.push_back(h.ok ? std::clamp(h.s, 0.0, 1.0) : 0.0);
            }
            // passages in template coordinates
            for (size_t k = 0; k < chain.size(); ++k) {
                const State& c = states[chain[k]];
                double ta = k == 0 ? 0.0 : sc.cross_t[k - 1];
                double tb = k + 1 < chain.size() ? sc.cross_t[k] : 1.0;
                sc.passages.push_back({c.poly, x0 + d * ta - c.offset, x0 + d * tb - c.offset});
            }
            // homology: ccw walks, full sides only
            std::vector<long long> full(s.num_edges(), 0);
            for (size_t k = 0; k < chain.size(); ++k) {
                const State& c = states[chain[k]];
                int from = k == 0 ? v0 : c.entry_side + 1;
                int to = k + 1 < chain.size() ? states[chain[k + 1]].exit_side_of_parent : v;
                add_full_sides(s, c.poly, from, to, full);
            }
            sc.homology = project_to_basis(s, full);
            out.push_back(std::move(sc));
        }

        // propagate through exit sides
        for (int f = 0; f < nv; ++f) {
            if (f == st.entry_side) continue;
            Vec2 a = P[f] + st.offset;
            Vec2 b = P[(f + 1) % nv] + st.offset;
            Vec2 da = a - x0, db = b - x0;
            // exit side: x0 strictly on the interior side of its line
            double side_len = norm(b - a);
            if (cross(b - a, x0 - a) <= delta_dir * side_len * (norm(da) + 1.0)) continue;

            Vec2 lo = cross(st.lo, da) > 0 ? da : st.lo;
            Vec2 hi = cross(db, st.hi) > 0 ? db : st.hi;
            if (cross(lo, hi) <= delta_dir * norm(lo) * norm(hi)) continue;
            if (min_dist_in_cone(x0, a, b, lo, hi) > reach) continue;

            const auto& g = s.side_gluing[st.poly][f];
            State nxt;
            nxt.poly = g.other.poly;
            nxt.offset = s.cross_offset({st.poly, f}, st.offset);
            nxt.lo = lo;
            nxt.hi = hi;
            nxt.parent = static_cast<int>(cur);
            nxt.entry_side = g.other.side;
            nxt.exit_side_of_parent = f;
            nxt.entry_cross = {g.edge, -g.sign};
            states.push_back(nxt);
        }
    }
    return out;
}

// Connections that run along cell edges (edge interiors contain no corner,
// so every edge is a saddle connection; longer collinear runs pass through
// the cone point and are excluded).
std::vector<SaddleConnection> edge_connections(const SurfaceTemplate& s, double lmax) {
    std::vector<SaddleConnection> out;
    for (int e = 0; e < s.num_edges(); ++e) {
        SideRef inst = s.edge_instance[e];
        Vec2 v = s.side_vec(inst);
        double len = norm(v);
        if (len > lmax * (1 + 1e-12) + 1e-9) continue;
        SideRef other = s.gluing(inst).other;
        for (int orient : {+1, -1}) {
            SaddleConnection sc;
            sc.holonomy = orient > 0 ? v : -v;
            sc.length = len;
            sc.along_edge = e;
            sc.along_sign = orient;
            int nv1 = s.num_sides(inst.poly);
            int nv2 = s.num_sides(other.poly);
            if (orient > 0) {
                sc.start_wedge = s.wedge_index(inst.poly, inst.side);
                sc.end_wedge = s.wedge_index(inst.poly, (inst.side + 1) % nv1);
            } else {
                sc.start_wedge = s.wedge_index(inst.poly, (inst.side + 1) % nv1);
                sc.end_wedge = s.wedge_index(inst.poly, inst.side);
            }
            Vec2 a1 = s.side_a(inst), b1 = s.side_b(inst);
            Vec2 a2 = s.side_a(other), b2 = s.side_b(other);
            if (orient > 0) {
                sc.passages.push_back({inst.poly, a1, b1});
                sc.passages.push_back({other.poly, b2, a2});
            } else {
                sc.passages.push_back({inst.poly, b1, a1});
                sc.passages.push_back({other.poly, a2, b2});
            }
            (void)nv2;
            std::vector<long long> full(s.num_edges(), 0);
            full[e] = orient;
            sc.homology = project_to_basis(s, full);
            out.push_back(std::move(sc));
        }
    }
    return out;
}

}  // namespace

std::vector<SaddleConnection> enumerate_saddle_connections(const SurfaceTemplate& s,
                                                           double lmax,
                                                           const EnumerateOptions& opt) {
    int nw = static_cast<int>(s.link.size());
    std::vector<std::vector<SaddleConnection>> per_wedge(nw);
    std::optional<EnumerationBudgetError> budget_err;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
    for (int wi = 0; wi < nw; ++wi) {
        try {
            per_wedge[wi] = enumerate_from_wedge(s, wi, lmax, opt.state_cap);
        } catch (const EnumerationBudgetError& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            budget_err = e;
        }
    }
    if (budget_err) throw *budget_err;

    std::vector<SaddleConnection> all = edge_connections(s, lmax);
    for (auto& v : per_wedge)
        for (auto& sc : v) all.push_back(std::move(sc));

    // dedup: rounded holonomy + crossing sequence + start wedge
    std::map<std::tuple<long long, long long, std::vector<std::pair<int, int>>, int>, size_t> seen;
    std::vector<SaddleConnection> uniq;
    for (auto& sc : all) {
        std::vector<std::pair<int, int>> cr;
        cr.reserve(sc.crossings.size());
        for (const auto& c : sc.crossings) cr.emplace_back(c.edge, c.sign);
        auto key = std::make_tuple(std::llround(sc.holonomy.x / eps_dedup),
                                   std::llround(sc.holonomy.y / eps_dedup), std::move(cr),
                                   sc.start_wedge);
        if (seen.emplace(std::move(key), uniq.size()).second) uniq.push_back(std::move(sc));
    }
    std::sort(uniq.begin(), uniq.end(), [](const SaddleConnection& a, const SaddleConnection& b) {
        return std::tie(a.length, a.holonomy.x, a.holonomy.y, a.start_wedge) <
               std::tie(b.length, b.holonomy.x, b.holonomy.y, b.start_wedge);
    });
    return uniq;
}

std::vector<double> periodic_directions(const SurfaceTemplate& s, double lmax,
                                        const EnumerateOptions& opt) {
    auto conns = enumerate_saddle_connections(s, lmax, opt);
    std::vector<double> angles;
    for (const auto& sc : conns) angles.push_back(direction_angle(sc.holonomy));
    std::sort(angles.begin(), angles.end());
    std::vector<double> uniq;
    for (double a : angles)
        if (uniq.empty() || a - uniq.back() > eps_dir) uniq.push_back(a);
    // the wrap pair 0 ~ pi is already canonicalized by direction_angle
    return uniq;
}

TraceResult trace_ray(const SurfaceTemplate& s, int poly, Vec2 start, Vec2 dir,
                      double max_len, int max_steps) {
    TraceResult res;
    Vec2 u = dir * (1.0 / norm(dir));
    int q = poly;
    Vec2 p = start;
    int came_from = -1;  // side of q we entered through
    for (int step = 0; step < max_steps; ++step) {
        const auto& P = s.polygons[q];
        int nv = static_cast<int>(P.size());
        double best_s = std::numeric_limits<double>::infinity();
        int best_f = -1;
        double best_t = 0;
        for (int f = 0; f < nv; ++f) {
            if (f == came_from) continue;
            LineHit h = line_intersect(p, p + u, P[f], P[(f + 1) % nv]);
            if (!h.ok) continue;
            if (h.s > 1e-12 && h.t > -1e-9 && h.t < 1 + 1e-9 && h.s < best_s) {
                best_s = h.s;
                best_f = f;
                best_t = h.t;
            }
        }
        if (best_f < 0) {
            res.end = TraceResult::End::Budget;  // should not happen inside a closed template
            return res;
        }
        Vec2 c = p + u * best_s;
        res.passages.push_back({q, p, c});
        res.length += best_s;
        if (res.length > max_len) {
            res.end = TraceResult::End::Budget;
            return res;
        }
        Vec2 A = P[best_f], B = P[(best_f + 1) % nv];
        if (norm(c - A) < eps_geom || norm(c - B) < eps_geom) {
            res.end = TraceResult::End::Corner;
            res.end_poly = q;
            res.end_vertex = norm(c - A) < eps_geom ? best_f : (best_f + 1) % nv;
            res.end_point = c;
            return res;
        }
        const auto& g = s.side_gluing[q][best_f];
        res.crossings.push_back({g.edge, -g.sign});
        // map crossing point to the partner side (opposite orientation)
        SideRef o = g.other;
        Vec2 c2 = s.side_a(o) + (s.side_b(o) - s.side_a(o)) * (1.0 - best_t);
        q = o.poly;
        p = c2;
        came_from = o.side;
    }
    res.end = TraceResult::End::Budget;
    return res;
}

}  // namespace kvol
