#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "kvol/surface.hpp"

namespace kvol {

// Raised when the developed-polygon frontier exceeds the configured cap.
struct EnumerationBudgetError : std::runtime_error {
    size_t cap;
    explicit EnumerationBudgetError(size_t c)
        : std::runtime_error("enumeration budget exhausted (state cap " + std::to_string(c) + ")"),
          cap(c) {}
};

struct Crossing {
    int edge = -1;
    int sign = 0;  // sign of cross(canonical edge direction, segment direction)
    bool operator==(const Crossing&) const = default;
};

struct Passage {
    int poly = -1;
    Vec2 a, b;  // sub-segment in template coordinates of `poly`
};

struct SaddleConnection {
    Vec2 holonomy;
    double length = 0.0;
    int start_wedge = -1;  // link index of the outgoing ray's wedge
    int end_wedge = -1;    // link index of the incoming ray's wedge
    std::vector<Crossing> crossings;
    std::vector<double> cross_t;      // crossing positions as parameters along the segment
    std::vector<Passage> passages;
    std::vector<long long> homology;  // public-basis coordinates
    int along_edge = -1;              // edge id when the connection runs along a cell edge
    int along_sign = 0;
};

struct EnumerateOptions {
    size_t state_cap = 4'000'000;
    bool parallel = true;
};

// All saddle connections of length <= lmax, one entry per orientation,
// deduplicated and sorted by (length, holonomy x, holonomy y).
std::vector<SaddleConnection> enumerate_saddle_connections(
    const SurfaceTemplate& s, double lmax, const EnumerateOptions& opt = {});

// Distinct projective directions (angles in [0, pi)) of connections <= lmax.
std::vector<double> periodic_directions(const SurfaceTemplate& s, double lmax,
                                        const EnumerateOptions& opt = {});

// Straight-line flow from a point of the surface, used for cylinder
// decompositions and for validating transition diagrams.
struct TraceResult {
    enum class End { Corner, Budget };
    End end = End::Budget;
    std::vector<Passage> passages;
    std::vector<Crossing> crossings;
    double length = 0.0;
    int end_poly = -1, end_vertex = -1;  // set when End::Corner
    Vec2 end_point;                      // template coordinates in the final polygon
};

TraceResult trace_ray(const SurfaceTemplate& s, int poly, Vec2 start, Vec2 dir,
                      double max_len, int max_steps = 100000);

}  // namespace kvol
