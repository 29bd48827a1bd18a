#include "kvol/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace kvol {

namespace {

constexpr double pi = std::numbers::pi;

// Wedge interior angle at vertex v of a ccw polygon.
double corner_angle(const std::vector<Vec2>& P, int v) {
    int nv = static_cast<int>(P.size());
    Vec2 a = P[v];
    Vec2 fwd = P[(v + 1) % nv] - a;
    Vec2 back = P[(v + nv - 1) % nv] - a;
    double ang = std::atan2(cross(fwd, back), dot(fwd, back));
    if (ang < 0) ang += 2 * pi;
    return ang;
}

}  // namespace

double SurfaceTemplate::area() const {
    double total = 0.0;
    for (const auto& P : polygons) {
        double a = 0.0;
        int nv = static_cast<int>(P.size());
        for (int i = 0; i < nv; ++i) a += cross(P[i], P[(i + 1) % nv]);
        total += a / 2;
    }
    return total;
}

double SurfaceTemplate::shortest_edge() const {
    double best = std::numeric_limits<double>::infinity();
    for (int e = 0; e < num_edges(); ++e) best = std::min(best, norm(side_vec(edge_instance[e])));
    return best;
}

int SurfaceTemplate::wedge_index(int poly, int v) const {
    for (int i = 0; i < static_cast<int>(link.size()); ++i)
        if (link[i].poly == poly && link[i].vertex == v) return i;
    throw std::logic_error("wedge_index: corner not in link");
}

double SurfaceTemplate::ray_position(int poly, int v, Vec2 d) const {
    const LinkWedge& w = link[wedge_index(poly, v)];
    Vec2 start = vertex(poly, v + 1) - vertex(poly, v);
    double off = std::atan2(cross(start, d), dot(start, d));
    if (off < -1e-9) off += 2 * pi;
    if (off > w.angle + 1e-9)
        throw std::logic_error("ray_position: direction outside wedge");
    return w.cum + std::clamp(off, 0.0, w.angle);
}

void SurfaceTemplate::validate() const {
    for (int p = 0; p < static_cast<int>(polygons.size()); ++p) {
        for (int i = 0; i < num_sides(p); ++i) {
            SideRef s{p, i};
            const Gluing& g = gluing(s);
            if (g.edge < 0) throw std::logic_error("validate: unglued side");
            Vec2 mismatch = side_vec(s) + side_vec(g.other);
            if (norm(mismatch) >= eps_geom)
                throw std::logic_error("validate: glued sides are not translates (" +
                                       edge_labels[g.edge] + ")");
            if (gluing(g.other).other != s)
                throw std::logic_error("validate: gluing is not involutive");
        }
    }
    size_t corners = 0;
    for (const auto& P : polygons) corners += P.size();
    if (link.size() != corners)
        throw std::logic_error("validate: more than one vertex class");
    if (area() <= 0) throw std::logic_error("validate: non-positive area");
}

SurfaceTemplate make_template(std::vector<std::vector<Vec2>> polygons,
                              std::vector<std::pair<SideRef, SideRef>> gluings,
                              std::vector<std::string> labels,
                              std::string model, int n) {
    if (gluings.size() != labels.size())
        throw std::invalid_argument("make_template: one label per glued pair");
    SurfaceTemplate t;
    t.n = n;
    t.model = std::move(model);
    t.polygons = std::move(polygons);
    t.side_gluing.resize(t.polygons.size());
    for (size_t p = 0; p < t.polygons.size(); ++p)
        t.side_gluing[p].resize(t.polygons[p].size());

    for (size_t e = 0; e < gluings.size(); ++e) {
        auto [s1, s2] = gluings[e];
        t.side_gluing[s1.poly][s1.side] = {s2, static_cast<int>(e), +1};
        t.side_gluing[s2.poly][s2.side] = {s1, static_cast<int>(e), -1};
        t.edge_labels.push_back(labels[e]);
        t.edge_instance.push_back(s1);
    }
    for (const auto& per_poly : t.side_gluing)
        for (const auto& g : per_poly)
            if (g.edge < 0) throw std::invalid_argument("make_template: unglued side");

    // Walk the link of the unique vertex: from corner (p, v), the next wedge
    // counterclockwise is the start vertex of the partner of side (p, v-1).
    int p0 = 0, v0 = 0;
    int p = p0, v = v0;
    double cum = 0.0;
    do {
        LinkWedge w;
        w.poly = p;
        w.vertex = v;
        w.angle = corner_angle(t.polygons[p], v);
        w.cum = cum;
        cum += w.angle;
        t.link.push_back(w);
        int nv = static_cast<int>(t.polygons[p].size());
        SideRef cw_side{p, (v + nv - 1) % nv};
        SideRef nxt = t.gluing(cw_side).other;
        p = nxt.poly;
        v = nxt.side;
    } while (!(p == p0 && v == v0));
    t.cone_angle = cum;

    t.homology_basis.resize(t.edge_labels.size());
    t.edge_to_basis.resize(t.edge_labels.size());
    for (int e = 0; e < t.num_edges(); ++e) {
        t.homology_basis[e] = e;
        t.edge_to_basis[e] = e;
    }
    t.validate();
    return t;
}

SurfaceTemplate build_double_ngon(int n) {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("build_double_ngon: n must be odd and >= 5");
    int m = (n - 1) / 2;
    std::vector<Vec2> right(n), left(n);
    for (int j = 0; j < n; ++j) {
        double a = pi / 2 + 2 * pi * (j - 1) / n;
        right[j] = {std::cos(a), std::sin(a)};
    }
    // Left polygon: point reflection through the midpoint of side e0
    // (vertices m, m+1 of the right polygon).  Reflection preserves ccw order.
    Vec2 c = (right[m] + right[m + 1]) * 0.5;
    for (int j = 0; j < n; ++j) left[j] = c * 2.0 - right[j];

    std::vector<std::pair<SideRef, SideRef>> gluings;
    std::vector<std::string> labels;
    for (int k = 0; k < n; ++k) {
        int j = (k + m) % n;
        gluings.push_back({SideRef{0, j}, SideRef{1, j}});
        labels.push_back("e" + std::to_string(k));
    }
    SurfaceTemplate t = make_template({right, left}, gluings, labels, "double", n);
    double expected = 2 * pi * (n - 2);
    if (std::abs(t.cone_angle - expected) > 1e-9)
        throw std::logic_error("build_double_ngon: wrong cone angle");
    return t;
}

SurfaceTemplate build_staircase(int n) {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("build_staircase: n must be odd and >= 5");
    int m = (n - 1) / 2;
    std::vector<double> s(m + 1, 0.0), L(m + 1, 0.0), R(m + 1, 0.0), y(m + 1, 0.0);
    for (int k = 1; k <= m; ++k) s[k] = std::sin(2 * k * pi / n);
    for (int k = 2; k <= m; ++k) L[k] = L[k - 1] - s[k];
    for (int k = 1; k <= m; ++k) R[k] = L[k] + s[k - 1] + s[k];
    for (int k = 1; k <= m; ++k) y[k] = y[k - 1] + s[m - k + 1];

    std::vector<std::vector<Vec2>> polys(m);
    std::map<std::string, SideRef> at;
    for (int k = 1; k <= m; ++k) {
        std::vector<Vec2> P;
        auto side_name = [&](const std::string& base, int idx) { return base + std::to_string(idx); };
        int p = k - 1;
        auto mark = [&](const std::string& key) { at[key] = SideRef{p, static_cast<int>(P.size()) - 1}; };
        // bottom, left to right
        P.push_back({L[k], y[k - 1]});
        if (k >= 2) {
            mark(side_name("alo", k));       // lower instance of a_k
            P.push_back({L[k - 1], y[k - 1]});
            mark(side_name("ilo", k - 1));   // lower instance of interface i_{k-1}
        } else {
            mark("alo1");
        }
        P.push_back({R[k], y[k - 1]});
        mark(side_name("br", m - k + 1));    // right instance of b_{m-k+1}
        P.push_back({R[k], y[k]});
        // top, right to left
        double split = L[k] + s[k];
        if (k < m) {
            if (k >= 2) {
                mark(side_name("ahi", k - 1));  // upper instance of a_{k-1}
                P.push_back({split, y[k]});
                mark(side_name("ihi", k));
            } else {
                mark(side_name("ihi", 1));      // top of C1 is the single interface i1 (m>1)
                if (m == 1) at.erase("ihi1");
            }
        } else {
            mark(side_name("ahi", k - 1));
            P.push_back({split, y[k]});
            mark(side_name("ahi", m));
        }
        P.push_back({L[k], y[k]});
        mark(side_name("bl", m - k + 1));    // left instance of b_{m-k+1}
        polys[p] = P;
    }
    // For m == 1 (n = 3) the loop above degenerates; n >= 5 guarantees m >= 2.

    std::vector<std::pair<SideRef, SideRef>> gluings;
    std::vector<std::string> labels;
    auto glue = [&](const std::string& k1, const std::string& k2, const std::string& label) {
        gluings.push_back({at.at(k1), at.at(k2)});
        labels.push_back(label);
    };
    for (int k = 1; k <= m; ++k)
        glue("alo" + std::to_string(k), "ahi" + std::to_string(k), "a" + std::to_string(k));
    for (int j = 1; j <= m; ++j)
        glue("br" + std::to_string(j), "bl" + std::to_string(j), "b" + std::to_string(j));
    for (int k = 1; k < m; ++k)
        glue("ilo" + std::to_string(k), "ihi" + std::to_string(k), "i" + std::to_string(k));

    SurfaceTemplate t = make_template(polys, gluings, labels, "staircase", n);
    double expected = 2 * pi * (n - 2);
    if (std::abs(t.cone_angle - expected) > 1e-9)
        throw std::logic_error("build_staircase: wrong cone angle");

    // Public homology basis: a1..am, b1..bm.  Interface i_k is homologous to
    // a_k (the boundary relation of the k-th cylinder telescopes to i_k = a_k).
    t.homology_basis.clear();
    t.edge_to_basis.assign(t.num_edges(), -1);
    for (int e = 0; e < t.num_edges(); ++e)
        if (t.edge_labels[e][0] != 'i') {
            t.edge_to_basis[e] = static_cast<int>(t.homology_basis.size());
            t.homology_basis.push_back(e);
        }
    for (int e = 0; e < t.num_edges(); ++e)
        if (t.edge_labels[e][0] == 'i') {
            std::string alias = "a" + t.edge_labels[e].substr(1);
            for (int f = 0; f < t.num_edges(); ++f)
                if (t.edge_labels[f] == alias) t.edge_to_basis[e] = t.edge_to_basis[f];
        }
    return t;
}

SurfaceTemplate apply_matrix(const SurfaceTemplate& s, const Mat2& m) {
    if (m.det() <= 0)
        throw std::invalid_argument("apply_matrix: det(M) must be positive");
    std::vector<std::vector<Vec2>> polys = s.polygons;
    for (auto& P : polys)
        for (auto& v : P) v = m * v;
    std::vector<std::pair<SideRef, SideRef>> gluings;
    std::vector<std::string> labels;
    for (int e = 0; e < s.num_edges(); ++e) {
        SideRef a = s.edge_instance[e];
        gluings.push_back({a, s.gluing(a).other});
        labels.push_back(s.edge_labels[e]);
    }
    SurfaceTemplate t = make_template(std::move(polys), gluings, labels, s.model, s.n);
    t.homology_basis = s.homology_basis;
    t.edge_to_basis = s.edge_to_basis;
    return t;
}

}  // namespace kvol
