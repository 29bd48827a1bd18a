#include "kvol/cylinders.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace kvol {

namespace {

bool point_in_poly(const std::vector<Vec2>& P, Vec2 p, double tol) {
    int nv = static_cast<int>(P.size());
    for (int i = 0; i < nv; ++i) {
        Vec2 a = P[i], b = P[(i + 1) % nv];
        if (cross(b - a, p - a) < -tol) return false;
    }
    return true;
}

struct WalkPassage {
    int poly;
    Vec2 a, b;
    int entry_side;  // -1 for the first passage
    int exit_side;
};

// Straight flow from an interior (or inward-boundary) point.  Stops when
// `stop` returns a parameter along the current passage, at a corner hit, or
// when budgets run out.
struct WalkResult {
    enum class End { Stopped, Corner, Budget } end = End::Budget;
    std::vector<WalkPassage> passages;
    double length = 0.0;      // total length up to the stop point
    Vec2 stop_point;          // template coordinates when Stopped
};

template <typename StopFn>
WalkResult walk_flow(const SurfaceTemplate& s, int poly, Vec2 start, Vec2 u,
                     double max_len, int max_steps, StopFn&& stop) {
    WalkResult res;
    int q = poly;
    Vec2 p = start;
    int came_from = -1;
    double acc = 0.0;
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
        if (best_f < 0) return res;
        Vec2 c = p + u * best_s;
        WalkPassage pass{q, p, c, came_from, best_f};
        if (auto stop_at = stop(pass, acc)) {
            res.end = WalkResult::End::Stopped;
            pass.b = p + u * (*stop_at);
            res.passages.push_back(pass);
            res.length = acc + *stop_at;
            res.stop_point = pass.b;
            return res;
        }
        res.passages.push_back(pass);
        acc += best_s;
        res.length = acc;
        if (acc > max_len) return res;
        Vec2 A = P[best_f], B = P[(best_f + 1) % nv];
        if (norm(c - A) < eps_geom || norm(c - B) < eps_geom) {
            res.end = WalkResult::End::Corner;
            return res;
        }
        const auto& g = s.side_gluing[q][best_f];
        SideRef o = g.other;
        p = s.side_a(o) + (s.side_b(o) - s.side_a(o)) * (1.0 - best_t);
        q = o.poly;
        came_from = o.side;
    }
    return res;
}

std::vector<long long> cyclic_core_class(const SurfaceTemplate& s,
                                         const std::vector<WalkPassage>& loop) {
    // merge the first and last passage (the loop closes inside one chart)
    std::vector<std::pair<int, std::pair<int, int>>> passes;  // poly, (entry, exit)
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        int entry = i == 0 ? loop.back().entry_side : loop[i].entry_side;
        passes.push_back({loop[i].poly, {entry, loop[i].exit_side}});
    }
    std::vector<long long> full(s.num_edges(), 0);
    for (auto& [poly, io] : passes) {
        int nv = s.num_sides(poly);
        for (int j = (io.first + 1) % nv; j != io.second; j = (j + 1) % nv) {
            const auto& g = s.side_gluing[poly][j];
            full[g.edge] += g.sign;
        }
    }
    std::vector<long long> pub(s.homology_basis.size(), 0);
    for (int e = 0; e < s.num_edges(); ++e) pub[s.edge_to_basis[e]] += full[e];
    return pub;
}

}  // namespace

std::vector<Cylinder> cylinder_decomposition(const SurfaceTemplate& s, Vec2 d,
                                             double length_budget, int step_budget) {
    Vec2 u = d * (1.0 / norm(d));

    // separatrices: rays of direction +-u inside each wedge of the cone point
    struct Sep {
        std::vector<Passage> passages;
    };
    std::vector<Sep> seps;
    for (const auto& w : s.link) {
        for (Vec2 dir : {u, -u}) {
            Vec2 a = s.vertex(w.poly, w.vertex);
            Vec2 fwd = s.vertex(w.poly, w.vertex + 1) - a;
            double off = std::atan2(cross(fwd, dir), dot(fwd, dir));
            if (off < -1e-12) off += 2 * std::numbers::pi;
            if (off > w.angle + 1e-12) continue;  // direction not in this wedge
            TraceResult tr = trace_ray(s, w.poly, a, dir, length_budget, step_budget);
            if (tr.end != TraceResult::End::Corner) {
                if (tr.length > length_budget - 1)
                    throw NonPeriodicDirectionError(
                        "separatrix did not close within the length budget");
                throw FlowBudgetError("separatrix flow exhausted the step budget");
            }
            seps.push_back({tr.passages});
        }
    }

    // bucket separatrix passages by polygon for height ray tests; a passage
    // running along a glued side is visible from both adjacent charts
    std::vector<std::vector<std::pair<Vec2, Vec2>>> by_poly(s.polygons.size());
    for (const auto& sp : seps)
        for (const auto& pa : sp.passages) {
            by_poly[pa.poly].push_back({pa.a, pa.b});
            int nv = s.num_sides(pa.poly);
            for (int f = 0; f < nv; ++f) {
                SideRef sr{pa.poly, f};
                Vec2 A = s.side_a(sr), B = s.side_b(sr);
                Vec2 sv = B - A;
                double len = norm(sv);
                if (std::abs(cross(sv, pa.a - A)) > eps_geom * len) continue;
                if (std::abs(cross(sv, pa.b - A)) > eps_geom * len) continue;
                double ta = dot(pa.a - A, sv) / (len * len);
                double tb = dot(pa.b - A, sv) / (len * len);
                if (std::min(ta, tb) < -1e-9 || std::max(ta, tb) > 1 + 1e-9) continue;
                SideRef o = s.gluing(sr).other;
                Vec2 A2 = s.side_a(o), B2 = s.side_b(o);
                auto map_pt = [&](double t) { return A2 + (B2 - A2) * (1.0 - t); };
                by_poly[o.poly].push_back({map_pt(ta), map_pt(tb)});
            }
        }

    auto first_hit = [&](const WalkPassage& pass, double) -> std::optional<double> {
        double best = std::numeric_limits<double>::infinity();
        Vec2 dir = pass.b - pass.a;
        for (auto& [ga, gb] : by_poly[pass.poly]) {
            LineHit h = line_intersect(pass.a, pass.b, ga, gb);
            if (!h.ok) continue;
            if (h.s > 1e-9 / norm(dir) && h.s < 1 + 1e-12 && h.t > -1e-9 && h.t < 1 + 1e-9)
                best = std::min(best, h.s * norm(dir));
        }
        if (best < std::numeric_limits<double>::infinity()) return best;
        return std::nullopt;
    };

    std::vector<Cylinder> found;
    std::vector<std::pair<int, Vec2>> midline_pts;
    std::vector<std::vector<WalkPassage>> midline_loops;

    for (const auto& sp : seps) {
        for (int sigma : {+1, -1}) {
            Vec2 nrm = perp(u) * static_cast<double>(sigma);
            // A perpendicular ray from the connection can run straight into a
            // cone point (symmetric templates do this from midpoints), so try
            // a few base points along the connection.
            double height = -1;
            int mq = -1;
            Vec2 mp;
            for (double t_off : {0.37, 0.63, 0.17, 0.83, 0.5}) {
                int q = -1;
                Vec2 base;
                for (const auto& pa : sp.passages) {
                    Vec2 m = pa.a + (pa.b - pa.a) * t_off;
                    if (point_in_poly(s.polygons[pa.poly], m + nrm * 1e-9, -1e-12)) {
                        q = pa.poly;
                        base = m;
                        break;
                    }
                }
                if (q < 0) break;  // normal leaves every chart: the partner instance seeds it

                WalkResult hw = walk_flow(s, q, base, nrm, length_budget, step_budget, first_hit);
                if (hw.end != WalkResult::End::Stopped) continue;
                double half = hw.length / 2;
                WalkResult mw = walk_flow(s, q, base, nrm, length_budget, step_budget,
                                          [&](const WalkPassage& pass, double acc)
                                              -> std::optional<double> {
                                              double len = norm(pass.b - pass.a);
                                              if (acc + len >= half) return half - acc;
                                              return std::nullopt;
                                          });
                if (mw.end != WalkResult::End::Stopped) continue;
                height = hw.length;
                mq = mw.passages.back().poly;
                mp = mw.stop_point;
                break;
            }
            if (mq < 0) continue;

            // skip if this midline point lies on an already-found cylinder
            bool dup = false;
            for (size_t i = 0; i < midline_loops.size() && !dup; ++i) {
                if (std::abs(found[i].height - height) > 1e-7) continue;
                for (const auto& pa : midline_loops[i]) {
                    if (pa.poly != mq) continue;
                    Vec2 dd = pa.b - pa.a;
                    double len2 = dot(dd, dd);
                    if (len2 == 0) continue;
                    double t = std::clamp(dot(mp - pa.a, dd) / len2, 0.0, 1.0);
                    if (norm(pa.a + dd * t - mp) < 1e-7) {
                        dup = true;
                        break;
                    }
                }
            }
            if (dup) continue;

            // closed leaf through the midline point
            WalkResult leaf = walk_flow(s, mq, mp, u, length_budget, step_budget,
                                        [&](const WalkPassage& pass, double acc)
                                            -> std::optional<double> {
                                            if (pass.poly != mq || acc == 0) return std::nullopt;
                                            Vec2 dd = pass.b - pass.a;
                                            double len = norm(dd);
                                            double t = dot(mp - pass.a, dd) / (len * len);
                                            if (t < -1e-9 || t > 1 + 1e-9) return std::nullopt;
                                            if (norm(pass.a + dd * t - mp) > 1e-7)
                                                return std::nullopt;
                                            return t * len;
                                        });
            if (leaf.end != WalkResult::End::Stopped)
                throw NonPeriodicDirectionError("leaf did not close: direction is not periodic");

            Cylinder cyl;
            cyl.direction = u;
            cyl.height = height;
            cyl.width = leaf.length;
            cyl.core_class = HomologyClass{cyclic_core_class(s, leaf.passages)};
            found.push_back(cyl);
            midline_pts.push_back({mq, mp});
            midline_loops.push_back(leaf.passages);
        }
    }

    double covered = 0;
    for (const auto& c : found) covered += c.area();
    if (std::abs(covered - s.area()) > 1e-6)
        throw FlowBudgetError("cylinder decomposition does not cover the surface");

    std::sort(found.begin(), found.end(), [](const Cylinder& a, const Cylinder& b) {
        if (std::abs(a.height - b.height) > 1e-12) return a.height < b.height;
        if (std::abs(a.width - b.width) > 1e-12) return a.width < b.width;
        return a.core_class.coords < b.core_class.coords;
    });
    return found;
}

}  // namespace kvol
