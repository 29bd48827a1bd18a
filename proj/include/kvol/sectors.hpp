#pragma once

#include <array>
#include <string>
#include <vector>

#include "kvol/enumerate.hpp"
#include "kvol/surface.hpp"

namespace kvol {

// Linear order of the double n-gon sides crossed by geodesics in one angular
// sector.  Sectors have width pi/n; sector 0 starts at the direction of the
// horizontal side e1.
struct TransitionDiagram {
    int n = 0;
    int sector = 0;
    std::vector<int> order;  // side labels k of e_k, first entry at the lower sector boundary
    std::array<std::pair<int, int>, 2> sandwiched;  // (side, sandwiching side) at the two ends
};

// Index of the closed sector containing direction d; boundary directions go
// to the lower index.
int sector_of(int n, Vec2 d);

// True if d lies within eps_dir of a sector boundary (a side/diagonal direction).
bool on_sector_boundary(int n, Vec2 d);

TransitionDiagram transition_diagram(int n, int sector);

struct SubSegment {
    enum class Kind { NonSandwiched, Sandwiched, InitialFinal };
    Kind kind = Kind::NonSandwiched;
    double length = 0.0;
    int sandwiched_side = -1;   // e index, for Kind::Sandwiched
    int sandwiching_side = -1;  // the e' of the type e' -> e -> e'
};

// Cut a saddle connection of the double n-gon at each crossing of a
// non-sandwiched side (the subdivision behind the segment-length and
// intersection-count bounds).
std::vector<SubSegment> subdivide(const SaddleConnection& sc, const SurfaceTemplate& s);

}  // namespace kvol
