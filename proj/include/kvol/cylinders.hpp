#pragma once

#include <stdexcept>
#include <vector>

#include "kvol/enumerate.hpp"
#include "kvol/homology.hpp"
#include "kvol/surface.hpp"

namespace kvol {

struct Cylinder {
    Vec2 direction;          // projective direction of the closed leaves
    double height = 0.0;
    double width = 0.0;      // circumference of the closed leaves
    HomologyClass core_class;

    double modulus() const { return height / width; }
    double area() const { return height * width; }
};

struct NonPeriodicDirectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FlowBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complete list of maximal cylinders in a periodic direction d.  Raises
// NonPeriodicDirectionError when a separatrix fails to close within the
// length budget and FlowBudgetError when the step budget is exhausted.
std::vector<Cylinder> cylinder_decomposition(const SurfaceTemplate& s, Vec2 d,
                                             double length_budget = 1e3,
                                             int step_budget = 200000);

}  // namespace kvol
