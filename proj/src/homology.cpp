#include "kvol/homology.hpp"

#include <cmath>
#include <numbers>

namespace kvol {

namespace {

constexpr double pi = std::numbers::pi;

struct RayPair {
    double out = 0.0;  // angular position of the outgoing ray around the cone
    double in = 0.0;   // angular position of the incoming ray
};

RayPair connection_rays(const SaddleConnection& sc, const SurfaceTemplate& s) {
    const LinkWedge& ws = s.link[sc.start_wedge];
    const LinkWedge& we = s.link[sc.end_wedge];
    Vec2 d = sc.holonomy;
    if (sc.along_edge >= 0) {
        // the segment lies along an edge: directions in the corners' charts
        SideRef inst = s.edge_instance[sc.along_edge];
        Vec2 v = s.side_vec(inst);
        d = sc.along_sign > 0 ? v : -v;
    }
    RayPair r;
    r.out = s.ray_position(ws.poly, ws.vertex, d);
    r.in = s.ray_position(we.poly, we.vertex, -d);
    return r;
}

// Chord endpoints on the rescaled unit circle; the loop enters the cone-point
// disk along the incoming ray and leaves along the outgoing one.
struct Chord {
    Vec2 p, q;
};

Chord chord_of(const RayPair& r, double total) {
    double k = 2 * pi / total;
    return {{std::cos(r.in * k), std::sin(r.in * k)}, {std::cos(r.out * k), std::sin(r.out * k)}};
}

int cone_term(const RayPair& a, const RayPair& b, double total) {
    // shared ray germ (identical or mutually reversed connections): tangential
    for (double x : {a.out, a.in})
        for (double y : {b.out, b.in}) {
            double d = std::fmod(std::abs(x - y), total);
            if (std::min(d, total - d) < 1e-9) return 0;
        }
    Chord ca = chord_of(a, total), cb = chord_of(b, total);
    auto side = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
    double d1 = side(ca.p, ca.q, cb.p), d2 = side(ca.p, ca.q, cb.q);
    double d3 = side(cb.p, cb.q, ca.p), d4 = side(cb.p, cb.q, ca.q);
    if (d1 * d2 < 0 && d3 * d4 < 0)
        return cross(ca.q - ca.p, cb.q - cb.p) > 0 ? 1 : -1;
    return 0;
}

}  // namespace

IntMatrix edge_intersection_matrix(const SurfaceTemplate& s) {
    int nb = static_cast<int>(s.homology_basis.size());
    std::vector<RayPair> rays(nb);
    for (int i = 0; i < nb; ++i) {
        int e = s.homology_basis[i];
        SideRef inst = s.edge_instance[e];
        Vec2 v = s.side_vec(inst);
        int nv = s.num_sides(inst.poly);
        RayPair r;
        r.out = s.ray_position(inst.poly, inst.side, v);
        r.in = s.ray_position(inst.poly, (inst.side + 1) % nv, -v);
        rays[i] = r;
    }
    IntMatrix B(nb, std::vector<long long>(nb, 0));
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            if (i != j) B[i][j] = cone_term(rays[i], rays[j], s.cone_angle);
    return B;
}

HomologyClass homology_class(const SaddleConnection& sc, const SurfaceTemplate& s) {
    if (sc.homology.size() != s.homology_basis.size())
        throw std::invalid_argument("homology_class: connection not enumerated on this template");
    return HomologyClass{sc.homology};
}

long long algebraic_intersection(const HomologyClass& a, const HomologyClass& b,
                                 const IntMatrix& B) {
    if (a.coords.size() != B.size() || b.coords.size() != B.size())
        throw std::invalid_argument("algebraic_intersection: dimension mismatch");
    long long acc = 0;
    for (size_t i = 0; i < B.size(); ++i) {
        if (a.coords[i] == 0) continue;
        long long row = 0;
        for (size_t j = 0; j < B.size(); ++j) row += B[i][j] * b.coords[j];
        acc += a.coords[i] * row;
    }
    return acc;
}

std::vector<long long> pairing_kernel(const SurfaceTemplate& s) {
    // Boundary of the first polygon, expressed in the public basis.
    std::vector<long long> full(s.num_edges(), 0);
    for (int j = 0; j < s.num_sides(0); ++j) {
        const auto& g = s.side_gluing[0][j];
        full[g.edge] += g.sign;
    }
    std::vector<long long> pub(s.homology_basis.size(), 0);
    for (int e = 0; e < s.num_edges(); ++e) pub[s.edge_to_basis[e]] += full[e];
    return pub;
}

namespace {

long long interior_crossings(const SaddleConnection& a, const SaddleConnection& b,
                             const SurfaceTemplate& s, Vec2 shift_b) {
    long long total = 0;
    for (const auto& pa : a.passages) {
        Vec2 da = pa.b - pa.a;
        double la = norm(da);
        if (la < eps_geom) continue;
        for (const auto& pb : b.passages) {
            if (pa.poly != pb.poly) continue;
            Vec2 b0 = pb.a + shift_b, b1 = pb.b + shift_b;
            double lb = norm(b1 - b0);
            if (lb < eps_geom) continue;
            LineHit h = line_intersect(pa.a, pa.b, b0, b1);
            if (!h.ok) continue;
            double ta = eps_geom / la, tb = eps_geom / lb;
            if (h.s < -ta || h.s > 1 + ta || h.t < -tb || h.t > 1 + tb) continue;
            Vec2 at = pa.a + da * h.s;

            // contact at the cone point belongs to the cone term
            bool at_vertex = false;
            for (const Vec2& c : s.polygons[pa.poly]) at_vertex |= norm(at - c) < eps_geom;
            if (at_vertex) continue;

            // a crossing on a glued side is seen from both charts; count it
            // once, in the chart holding the canonical edge instance
            bool on_edge = false, counted_here = true;
            int nv = s.num_sides(pa.poly);
            for (int f = 0; f < nv && !on_edge; ++f) {
                SideRef sr{pa.poly, f};
                Vec2 A = s.side_a(sr), B = s.side_b(sr);
                Vec2 sv = B - A;
                double len = norm(sv);
                double offside = cross(sv, at - A) / len;
                double along = dot(at - A, sv) / (len * len);
                if (std::abs(offside) < eps_geom && along > -1e-9 && along < 1 + 1e-9) {
                    on_edge = true;
                    counted_here = s.gluing(sr).sign == +1;
                }
            }
            if (!counted_here) continue;
            total += cross(da, b1 - b0) > 0 ? 1 : -1;
        }
    }
    return total;
}

}  // namespace

long long geometric_signed_crossings(const SaddleConnection& a, const SaddleConnection& b,
                                     const SurfaceTemplate& s) {
    RayPair ra = connection_rays(a, s), rb = connection_rays(b, s);
    long long cone = cone_term(ra, rb, s.cone_angle);
    if (parallel_dir(a.holonomy, b.holonomy)) return cone;
    long long inter;
    try {
        inter = interior_crossings(a, b, s, {0, 0});
    } catch (const DegenerateCrossingError&) {
        // perturbation retry with a small normal offset of b
        Vec2 nb = perp(b.holonomy);
        nb = nb * (1e-7 / norm(nb));
        inter = interior_crossings(a, b, s, nb);
    }
    return inter + cone;
}

int singularity_angle_index(const SaddleConnection& sc, const SurfaceTemplate& s) {
    RayPair r = connection_rays(sc, s);
    double d = std::fmod(r.in - r.out, s.cone_angle);
    if (d < 0) d += s.cone_angle;
    double k = d / pi;
    int ki = static_cast<int>(std::llround(k));
    if (std::abs(k - ki) > 1e-9)
        throw std::logic_error("singularity_angle_index: rays are not pi-separated");
    int total = static_cast<int>(std::llround(s.cone_angle / pi));
    return std::min(ki, total - ki);
}

}  // namespace kvol
