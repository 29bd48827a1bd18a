#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "kvol/enumerate.hpp"
#include "kvol/sectors.hpp"
#include "kvol/surface.hpp"

using namespace kvol;
namespace {
constexpr double pi = std::numbers::pi;

std::multiset<std::pair<long long, long long>> holonomy_multiset(
    const std::vector<SaddleConnection>& conns) {
    std::multiset<std::pair<long long, long long>> ms;
    for (const auto& sc : conns)
        ms.insert({std::llround(sc.holonomy.x * 1e9), std::llround(sc.holonomy.y * 1e9)});
    return ms;
}
}  // namespace

TEST_CASE("shortest connections of the double 5-gon are its ten oriented sides") {
    SurfaceTemplate x0 = build_double_ngon(5);
    auto conns = enumerate_saddle_connections(x0, 1.2);
    double l0 = 2 * std::sin(pi / 5);
    REQUIRE(conns.size() == 10);
    std::set<int> classes;
    for (const auto& sc : conns) {
        CHECK(sc.length == doctest::Approx(l0).epsilon(1e-12));
        CHECK(sc.along_edge >= 0);
        classes.insert(sc.along_edge);
    }
    CHECK(classes.size() == 5);
}

TEST_CASE("short staircase connections for n = 5") {
    SurfaceTemplate s0 = build_staircase(5);
    auto conns = enumerate_saddle_connections(s0, 0.6);
    double s2 = std::sin(4 * pi / 5);
    REQUIRE(conns.size() == 4);
    std::multiset<std::pair<long long, long long>> got = holonomy_multiset(conns);
    std::multiset<std::pair<long long, long long>> want = {
        {std::llround(s2 * 1e9), 0}, {std::llround(-s2 * 1e9), 0},
        {0, std::llround(s2 * 1e9)}, {0, std::llround(-s2 * 1e9)}};
    CHECK(got == want);
}

TEST_CASE("lmax below every edge yields an empty list, not an error") {
    SurfaceTemplate s0 = build_staircase(5);
    CHECK(enumerate_saddle_connections(s0, 0.1).empty());
}

TEST_CASE("holonomy is reproduced by the crossing sequence") {
    SurfaceTemplate x0 = build_double_ngon(5);
    auto conns = enumerate_saddle_connections(x0, 2.2);
    for (const auto& sc : conns) {
        CHECK(std::abs(sc.length - norm(sc.holonomy)) < 1e-12);
        if (sc.along_edge >= 0) continue;
        // replay the developed offsets along the crossing chain
        REQUIRE(!sc.passages.empty());
        Vec2 start = sc.passages.front().a;
        Vec2 dev_end = sc.passages.back().b;
        Vec2 offset{0, 0};
        for (size_t k = 0; k + 1 < sc.passages.size(); ++k) {
            // crossing k leaves passage k through a glued side
            const Passage& cur = sc.passages[k];
            const Passage& nxt = sc.passages[k + 1];
            offset = offset + (cur.b - nxt.a);
        }
        Vec2 hol = dev_end + offset - start;
        CHECK(norm(hol - sc.holonomy) < eps_geom);
    }
}

TEST_CASE("dihedral symmetry of the double 5-gon holonomy multiset") {
    SurfaceTemplate x0 = build_double_ngon(5);
    auto conns = enumerate_saddle_connections(x0, 2.2);
    auto base = holonomy_multiset(conns);

    auto transform = [&](Mat2 m) {
        std::multiset<std::pair<long long, long long>> ms;
        for (const auto& sc : conns) {
            Vec2 v = m * sc.holonomy;
            ms.insert({std::llround(v.x * 1e9), std::llround(v.y * 1e9)});
        }
        return ms;
    };
    double c = std::cos(pi / 5), s = std::sin(pi / 5);
    CHECK(transform({c, -s, s, c}) == base);  // rotation by pi/5
    // reflection across the template's mirror axis (angle pi/2 - 2 pi/5)
    double a = pi / 2 - 2 * pi / 5;
    double c2 = std::cos(2 * a), s2 = std::sin(2 * a);
    CHECK(transform({c2, s2, s2, -c2}) == base);
}

TEST_CASE("determinism: repeated and serial runs agree") {
    SurfaceTemplate x0 = build_double_ngon(5);
    auto a = enumerate_saddle_connections(x0, 2.0);
    auto b = enumerate_saddle_connections(x0, 2.0);
    auto c = enumerate_saddle_connections(x0, 2.0, {.parallel = false});
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].holonomy.x == b[i].holonomy.x);
        CHECK(a[i].holonomy.y == b[i].holonomy.y);
        CHECK(a[i].holonomy.x == c[i].holonomy.x);
        CHECK(a[i].crossings == c[i].crossings);
        CHECK(a[i].start_wedge == c[i].start_wedge);
    }
}

TEST_CASE("budget exhaustion raises with the cap") {
    SurfaceTemplate x0 = build_double_ngon(5);
    CHECK_THROWS_AS(enumerate_saddle_connections(x0, 40.0, {.state_cap = 500}),
                    EnumerationBudgetError);
}

TEST_CASE("periodic directions of short connections") {
    SurfaceTemplate s0 = build_staircase(5);
    auto dirs = enumerate_saddle_connections(s0, 1.0);
    auto angles = periodic_directions(s0, 1.0);
    CHECK(!angles.empty());
    bool has_hor = false, has_ver = false;
    for (double a : angles) {
        if (std::abs(a) < 1e-12) has_hor = true;
        if (std::abs(a - pi / 2) < 1e-12) has_ver = true;
    }
    CHECK(has_hor);
    CHECK(has_ver);

    // cylinder-diagonal direction with co-slope -phi appears below lmax = 2
    auto angles2 = periodic_directions(s0, 2.0);
    double phi = 2 * std::cos(pi / 5);
    double want = direction_angle({-phi, 1});
    bool has_diag = false;
    for (double a : angles2) has_diag = has_diag || std::abs(a - want) < 1e-9;
    CHECK(has_diag);

    // independent recount from the enumeration output
    SurfaceTemplate x0 = build_double_ngon(5);
    auto conns = enumerate_saddle_connections(x0, 2.2);
    std::set<long long> uniq;
    for (const auto& sc : conns) uniq.insert(std::llround(direction_angle(sc.holonomy) * 1e9));
    CHECK(uniq.size() == periodic_directions(x0, 2.2).size());
    (void)dirs;
}

TEST_CASE("sector indexing") {
    // horizontal lies on the boundary between the last sector and sector 0
    CHECK(sector_of(7, {1, 0}) == 0);
    CHECK(on_sector_boundary(7, {1, 0}));

    double t0 = 0.4 * pi / 7;  // interior of sector 0
    Vec2 d0{std::cos(t0), std::sin(t0)};
    CHECK(sector_of(7, d0) == 0);
    Vec2 d1{std::cos(t0 + pi / 7), std::sin(t0 + pi / 7)};
    CHECK(sector_of(7, d1) == 1);

    // boundary between sectors 1 and 2 resolves to the lower index
    double b = 2 * pi / 5;
    CHECK(sector_of(5, {std::cos(b), std::sin(b)}) == 1);
}

TEST_CASE("heptagon transition diagrams match the published table") {
    const std::vector<std::vector<int>> rows = {
        {1, 2, 0, 3, 6, 4, 5}, {5, 6, 4, 0, 3, 1, 2}, {2, 3, 1, 4, 0, 5, 6},
        {6, 0, 5, 1, 4, 2, 3}, {3, 4, 2, 5, 1, 6, 0}, {0, 1, 6, 2, 5, 3, 4},
        {4, 5, 3, 6, 2, 0, 1}};
    for (int sec = 0; sec < 7; ++sec) {
        TransitionDiagram d = transition_diagram(7, sec);
        CHECK(d.order == rows[sec]);
        CHECK(d.sandwiched[0].first == rows[sec].front());
        CHECK(d.sandwiched[0].second == rows[sec][1]);
        CHECK(d.sandwiched[1].first == rows[sec].back());
        CHECK(d.sandwiched[1].second == rows[sec][5]);
    }
}

TEST_CASE("pentagon diagrams validated against traced crossing sequences") {
    SurfaceTemplate x0 = build_double_ngon(5);
    std::mt19937_64 g(7);
    auto rnd = [&](double a, double b) { return a + (b - a) * ((g() >> 11) * 0x1.0p-53); };
    for (int sec = 0; sec < 5; ++sec) {
        TransitionDiagram dia = transition_diagram(5, sec);
        std::vector<int> pos(5);
        for (int k = 0; k < 5; ++k) pos[dia.order[k]] = k;
        for (int trial = 0; trial < 100; ++trial) {
            double t = (sec + rnd(0.05, 0.95)) * pi / 5;
            Vec2 u{std::cos(t), std::sin(t)};
            Vec2 start{rnd(-0.2, 0.2), rnd(-0.2, 0.2)};
            TraceResult tr = trace_ray(x0, 0, start, u, 6.0);
            REQUIRE(tr.crossings.size() >= 2);
            for (size_t k = 0; k + 1 < tr.crossings.size(); ++k) {
                int a = std::stoi(x0.edge_labels[tr.crossings[k].edge].substr(1));
                int b = std::stoi(x0.edge_labels[tr.crossings[k + 1].edge].substr(1));
                CHECK(std::abs(pos[a] - pos[b]) == 1);
            }
        }
    }
}

TEST_CASE("enumerated crossing sequences are admissible for their sector") {
    SurfaceTemplate x0 = build_double_ngon(5);
    auto conns = enumerate_saddle_connections(x0, 2.2);
    for (const auto& sc : conns) {
        if (on_sector_boundary(5, sc.holonomy)) {
            CHECK(sc.crossings.empty());
            continue;
        }
        TransitionDiagram dia = transition_diagram(5, sector_of(5, sc.holonomy));
        std::vector<int> pos(5);
        for (int k = 0; k < 5; ++k) pos[dia.order[k]] = k;
        for (size_t k = 0; k + 1 < sc.crossings.size(); ++k) {
            int a = std::stoi(x0.edge_labels[sc.crossings[k].edge].substr(1));
            int b = std::stoi(x0.edge_labels[sc.crossings[k + 1].edge].substr(1));
            CHECK(std::abs(pos[a] - pos[b]) == 1);
        }
    }
}

TEST_CASE("subdivision: sides and diagonals stay whole; segments sum and bound") {
    SurfaceTemplate x0 = build_double_ngon(7);
    double l0 = 2 * std::sin(pi / 7);
    auto conns = enumerate_saddle_connections(x0, 3.0);
    bool saw_multi = false;
    for (const auto& sc : conns) {
        auto parts = subdivide(sc, x0);
        REQUIRE(parts.size() >= 1);
        if (sc.along_edge >= 0) CHECK(parts.size() == 1);
        double total = 0;
        for (const auto& p : parts) {
            total += p.length;
            CHECK(p.length >= l0 * (1 - 1e-12));
        }
        CHECK(total == doctest::Approx(sc.length).epsilon(1e-12));
        saw_multi = saw_multi || parts.size() > 1;
        if (parts.size() > 1)
            for (size_t i = 1; i + 1 < parts.size(); ++i)
                if (parts[i].kind == SubSegment::Kind::Sandwiched)
                    CHECK(parts[i].sandwiching_side >= 0);
    }
    CHECK(saw_multi);
}
