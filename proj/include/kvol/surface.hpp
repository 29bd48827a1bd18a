#pragma once

#include <string>
#include <vector>

#include "kvol/geom.hpp"

namespace kvol {

// A side of a template polygon, addressed as (polygon index, side index).
// Side i of polygon p runs from vertex i to vertex i+1 (mod size), ccw.
struct SideRef {
    int poly = -1;
    int side = -1;
    bool operator==(const SideRef&) const = default;
};

// One corner instance in the cyclic order of wedges around the unique
// cone point. `angle` is the interior angle of the wedge.
struct LinkWedge {
    int poly = 0;
    int vertex = 0;
    double angle = 0.0;
    double cum = 0.0;  // angular position of the wedge start around the cone
};

// Planar polygonal template with translation gluings.  All types in this
// header are immutable after construction.
class SurfaceTemplate {
public:
    struct Gluing {
        SideRef other;       // partner side
        int edge = -1;       // cell-complex edge id
        int sign = 0;        // +1 if this side's ccw direction is the edge's canonical one
    };

    int n = 0;                        // defining n for the n-gon families, 0 for ad-hoc templates
    std::string model;                // "double", "staircase", or a fixture name
    std::vector<std::vector<Vec2>> polygons;       // ccw vertex lists (convex; collinear corners allowed)
    std::vector<std::vector<Gluing>> side_gluing;  // parallel to polygons/sides
    std::vector<std::string> edge_labels;          // edge id -> label
    std::vector<SideRef> edge_instance;            // edge id -> canonical (+1) instance
    std::vector<int> homology_basis;               // edge ids forming the public homology basis
    std::vector<int> edge_to_basis;                // edge id -> index into homology_basis, or the
                                                   // id of the basis edge it is homologous to (see cpp)
    std::vector<LinkWedge> link;                   // wedges in ccw cyclic order around the cone point
    double cone_angle = 0.0;

    int num_edges() const { return static_cast<int>(edge_labels.size()); }
    int num_sides(int poly) const { return static_cast<int>(polygons[poly].size()); }

    Vec2 vertex(int poly, int v) const {
        const auto& P = polygons[poly];
        return P[static_cast<size_t>(v) % P.size()];
    }
    Vec2 side_a(SideRef s) const { return vertex(s.poly, s.side); }
    Vec2 side_b(SideRef s) const { return vertex(s.poly, s.side + 1); }
    Vec2 side_vec(SideRef s) const { return side_b(s) - side_a(s); }

    const Gluing& gluing(SideRef s) const { return side_gluing[s.poly][s.side]; }

    // Offset of the partner polygon copy when a developed copy of s.poly at
    // `offset` is crossed through side s.
    Vec2 cross_offset(SideRef s, Vec2 offset) const {
        const Gluing& g = gluing(s);
        // partner side occupies side_a(g.other) .. side_b(g.other); it must land on this side.
        Vec2 shift = side_a(s) - side_b(g.other);
        return offset + shift;
    }

    double area() const;
    double shortest_edge() const;
    int wedge_index(int poly, int v) const;  // index into link

    // Angular position around the cone point of a ray leaving the given
    // corner in direction d (d must lie inside the closed wedge).
    double ray_position(int poly, int v, Vec2 d) const;

    void validate() const;  // gluing consistency, single vertex class
};

// Double regular n-gon (odd n >= 5), circumradius 1.  Edge e1 is the bottom
// horizontal side of the right-hand polygon; the left polygon is the point
// reflection of the right one through the midpoint of the shared side e0.
SurfaceTemplate build_double_ngon(int n);

// Right-angled staircase model: horizontal edges a1..am and vertical edges
// b1..bm of length sin(2k*pi/n), lower-left corner of the a1 x bm step at the
// origin, steps ascending leftwards.  Interface edges i1..i(m-1) separate
// consecutive horizontal cylinders; they are homologous to a1..a(m-1) and are
// excluded from the public homology basis.
SurfaceTemplate build_staircase(int n);

// Linear deformation by M (det M > 0).  Gluings and labels are preserved.
SurfaceTemplate apply_matrix(const SurfaceTemplate& s, const Mat2& m);

// Generic constructor used by tests and fixtures: polygons plus a list of
// glued side pairs.  Labels one per pair.
SurfaceTemplate make_template(std::vector<std::vector<Vec2>> polygons,
                              std::vector<std::pair<SideRef, SideRef>> gluings,
                              std::vector<std::string> labels,
                              std::string model, int n = 0);

}  // namespace kvol
