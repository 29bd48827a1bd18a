#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kvol/enumerate.hpp"
#include "kvol/surface.hpp"

namespace kvol {

// Integer vector in the public edge basis of the one-vertex cell complex.
struct HomologyClass {
    std::vector<long long> coords;
};

using IntMatrix = std::vector<std::vector<long long>>;

// Intersection pairing of the basis edge loops, computed from the cyclic
// order of edge ends around the unique cone point.  Antisymmetric; rank
// n-1 for the double n-gon, 2m for the staircase basis.
IntMatrix edge_intersection_matrix(const SurfaceTemplate& s);

// Class of a saddle connection (it is a loop through the cone point).
HomologyClass homology_class(const SaddleConnection& sc, const SurfaceTemplate& s);

// a^T B b, exact integer arithmetic.
long long algebraic_intersection(const HomologyClass& a, const HomologyClass& b,
                                 const IntMatrix& B);

// Face-relation kernel vector of B (zero when B is nondegenerate).  Homology
// classes of the double n-gon are well defined up to integer multiples of it.
std::vector<long long> pairing_kernel(const SurfaceTemplate& s);

struct DegenerateCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signed count of transversal interior crossings plus the cone-point
// contribution; equals the homological pairing.
long long geometric_signed_crossings(const SaddleConnection& a, const SaddleConnection& b,
                                     const SurfaceTemplate& s);

// Number of angular pi-sectors between the outgoing and incoming rays of a
// saddle connection at the cone point (an odd integer; 1 for the boundary of
// an embedded metric cylinder).
int singularity_angle_index(const SaddleConnection& sc, const SurfaceTemplate& s);

}  // namespace kvol
