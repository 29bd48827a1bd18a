#pragma once

#include <string>
#include <vector>

#include "kvol/surface.hpp"

namespace kvol {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;   // worst observed deviation (criterion-specific)
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceConfig {
    unsigned long long seed = 0;
    bool extended_precision = false;
    int threads = 0;          // 0 = library default
    bool include_scan = true; // criterion 5 dominates the runtime
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    bool all_pass = false;
};

AcceptanceReport run_acceptance(const AcceptanceConfig& cfg);

std::string acceptance_report_to_json(const AcceptanceReport& rep, const AcceptanceConfig& cfg);

// Square-tiled one-cylinder surface in H(2): three unit squares in a single
// horizontal cylinder whose top is glued to the bottom by the order-reversing
// pairing.  Carries parallel saddle connections with nonzero intersection.
SurfaceTemplate one_cylinder_fixture();

}  // namespace kvol
