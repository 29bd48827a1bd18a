#include <cstring>
#include <iostream>

#include "kvol/acceptance.hpp"

// Runs every acceptance criterion and prints one pass/fail line per criterion.
int main(int argc, char** argv) {
    kvol::AcceptanceConfig cfg;
    cfg.extended_precision = true;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--skip-scan") == 0) cfg.include_scan = false;
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            cfg.seed = std::strtoull(argv[++i], nullptr, 10);
    }
    kvol::AcceptanceReport rep = kvol::run_acceptance(cfg);
    for (const auto& r : rep.results) {
        std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name
                  << "  (measured " << r.measured << ", tolerance " << r.tolerance << ", "
                  << r.seconds << " s)";
        if (!r.detail.empty()) std::cout << "  -- " << r.detail;
        std::cout << "\n";
    }
    std::cout << (rep.all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
    return rep.all_pass ? 0 : 1;
}
