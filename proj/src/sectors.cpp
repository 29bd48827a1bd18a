#include "kvol/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace kvol {

namespace {

constexpr double pi = std::numbers::pi;

double boundary_offset(int n, Vec2 d) {
    double w = pi / n;
    double a = direction_angle(d);
    double nearest = std::round(a / w) * w;
    return std::abs(a - nearest);
}

}  // namespace

bool on_sector_boundary(int n, Vec2 d) { return boundary_offset(n, d) <= eps_dir; }

int sector_of(int n, Vec2 d) {
    double w = pi / n;
    double a = direction_angle(d);
    if (on_sector_boundary(n, d)) {
        int b = static_cast<int>(std::llround(a / w)) % n;
        return b == 0 ? 0 : b - 1;  // boundary b separates sectors b-1 and b
    }
    int k = static_cast<int>(std::floor(a / w));
    return std::clamp(k, 0, n - 1);
}

TransitionDiagram transition_diagram(int n, int sector) {
    if (sector < 0 || sector >= n) throw std::invalid_argument("transition_diagram: bad sector");
    SurfaceTemplate t = build_double_ngon(n);
    const auto& P = t.polygons[0];
    int m = (n - 1) / 2;

    double theta = (sector + 0.5) * pi / n;
    Vec2 u{std::cos(theta), std::sin(theta)};
    Vec2 w = perp(u);

    // sweep the perpendicular axis: each breakpoint interval pairs one entry
    // side with one exit side, and the pairs chain into a path
    struct SideInfo {
        int label;
        bool exit;
        double lo, hi;
    };
    std::vector<SideInfo> sides;
    std::vector<double> brk;
    for (int j = 0; j < n; ++j) {
        Vec2 a = P[j], b = P[(j + 1) % n];
        Vec2 outward = -perp(b - a);
        int label = ((j - m) % n + n) % n;
        double pa = dot(a, w), pb = dot(b, w);
        sides.push_back({label, dot(outward, u) > 0, std::min(pa, pb), std::max(pa, pb)});
        brk.push_back(pa);
    }
    std::sort(brk.begin(), brk.end());

    std::vector<std::pair<int, int>> edges;  // (entry label, exit label), sweeping downward
    for (int i = static_cast<int>(brk.size()) - 1; i > 0; --i) {
        double mid = (brk[i - 1] + brk[i]) / 2;
        int ent = -1, exi = -1;
        for (const auto& si : sides) {
            if (si.lo < mid && mid < si.hi) (si.exit ? exi : ent) = si.label;
        }
        if (ent < 0 || exi < 0) throw std::logic_error("transition_diagram: degenerate sweep");
        edges.push_back({ent, exi});
    }

    TransitionDiagram d;
    d.n = n;
    d.sector = sector;
    auto share = [](std::pair<int, int> a, std::pair<int, int> b) {
        if (a.first == b.first || a.first == b.second) return a.first;
        return a.second;
    };
    int shared = share(edges[0], edges[1]);
    int first = edges[0].first == shared ? edges[0].second : edges[0].first;
    d.order.push_back(first);
    int cur = shared;
    d.order.push_back(cur);
    for (size_t i = 1; i < edges.size(); ++i) {
        int nxt = edges[i].first == cur ? edges[i].second : edges[i].first;
        d.order.push_back(nxt);
        cur = nxt;
    }

    // print orientation: start from the sandwiched side whose direction is the
    // lower sector boundary
    auto side_dir_angle = [&](int label) {
        int j = (label + m) % n;
        return direction_angle(P[(j + 1) % n] - P[j]);
    };
    double lo_bdry = sector * pi / n;
    auto close = [&](double a, double b) {
        double diff = std::abs(a - b);
        return std::min(diff, pi - diff) < 1e-9;
    };
    if (!close(side_dir_angle(d.order.front()), lo_bdry)) {
        if (!close(side_dir_angle(d.order.back()), lo_bdry))
            throw std::logic_error("transition_diagram: sandwiched sides mismatch boundaries");
        std::reverse(d.order.begin(), d.order.end());
    }
    d.sandwiched[0] = {d.order[0], d.order[1]};
    d.sandwiched[1] = {d.order[n - 1], d.order[n - 2]};
    return d;
}

std::vector<SubSegment> subdivide(const SaddleConnection& sc, const SurfaceTemplate& s) {
    if (s.model != "double")
        throw std::invalid_argument("subdivide: expects the double n-gon template");
    int n = s.n;

    if (on_sector_boundary(n, sc.holonomy)) {
        // sides and diagonals: never divided
        if (!sc.crossings.empty())
            throw std::logic_error(
                "subdivide: boundary-direction connection crosses a side (corrupt template)");
        return {{SubSegment::Kind::InitialFinal, sc.length, -1, -1}};
    }

    TransitionDiagram dia = transition_diagram(n, sector_of(n, sc.holonomy));
    std::map<int, int> sandwiched_by;
    for (auto [side, by] : dia.sandwiched) sandwiched_by[side] = by;

    auto label_of = [&](int edge) { return std::stoi(s.edge_labels[edge].substr(1)); };

    std::vector<SubSegment> out;
    double seg_start = 0.0;
    int pending_sand = -1;
    bool first = true;
    for (size_t i = 0; i < sc.crossings.size(); ++i) {
        int lab = label_of(sc.crossings[i].edge);
        if (sandwiched_by.count(lab)) {
            pending_sand = lab;
            continue;
        }
        // cut here
        SubSegment seg;
        seg.length = (sc.cross_t[i] - seg_start) * sc.length;
        if (pending_sand >= 0) {
            seg.kind = SubSegment::Kind::Sandwiched;
            seg.sandwiched_side = pending_sand;
            seg.sandwiching_side = sandwiched_by[pending_sand];
        } else {
            seg.kind = SubSegment::Kind::NonSandwiched;
        }
        if (first) seg.kind = SubSegment::Kind::InitialFinal;
        out.push_back(seg);
        seg_start = sc.cross_t[i];
        pending_sand = -1;
        first = false;
    }
    SubSegment last;
    last.length = (1.0 - seg_start) * sc.length;
    last.kind = SubSegment::Kind::InitialFinal;
    if (pending_sand >= 0) {
        last.sandwiched_side = pending_sand;
        last.sandwiching_side = sandwiched_by[pending_sand];
    }
    out.push_back(last);
    return out;
}

}  // namespace kvol
