#pragma once

#include <iosfwd>
#include <string>

#include "kvol/enumerate.hpp"
#include "kvol/hyperbolic.hpp"
#include "kvol/kvol.hpp"
#include "kvol/pair_kernels.hpp"
#include "kvol/surface.hpp"

namespace kvol {

struct RunConfig {
    int n = 5;
    std::string model = "double";  // "double" | "staircase"
    double lmax = 2.2;
    int nx = 20, ny = 20;
    double ymax = 3.0;
    std::string precision = "standard";  // "standard" | "extended"
    unsigned long long seed = 0;
    int threads = 0;  // 0 = library default
    std::string out;

    void validate() const;
};

// Floats in emitted files carry 15 significant digits.
std::string format_float(double v);

std::string template_to_json(const SurfaceTemplate& s);
void connections_to_csv(const std::vector<SaddleConnection>& conns, const SurfaceTemplate& s,
                        std::ostream& os);
void scan_to_csv(const ScanResult& scan, std::ostream& os);
std::string kvol_report_to_json(const KVolReport& r);
std::string pairing_summary_to_json(const OracleStats& st);
std::string reduction_to_json(const ReductionResult& r);

}  // namespace kvol
