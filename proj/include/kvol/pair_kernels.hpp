#pragma once

#include <tuple>
#include <vector>

#include "kvol/enumerate.hpp"
#include "kvol/homology.hpp"

namespace kvol {

// Result of a pairwise supremum search.  Ties are broken toward the smallest
// (i, j); the enumeration order (length, holonomy) makes that the
// lexicographically smallest (length a, length b, holonomy a, holonomy b).
struct PairBest {
    double value = -1.0;
    int i = -1;
    int j = -1;
    long long intval = 0;
};

// max |Int(c_i, c_j)| / (l_i l_j) over unordered pairs of one list.
// The _serial variant is the reference implementation; the OpenMP kernel must
// return bit-identical results for any thread count.
PairBest max_length_ratio_pairs_serial(const std::vector<SaddleConnection>& conns,
                                       const IntMatrix& B);
PairBest max_length_ratio_pairs(const std::vector<SaddleConnection>& conns, const IntMatrix& B);

// max |Int(a_i, b_j)| / |a_i ^ b_j| over the cross product of two candidate
// sets (wedge of the holonomy vectors).
PairBest max_wedge_ratio_cross_serial(const std::vector<SaddleConnection>& as,
                                      const std::vector<SaddleConnection>& bs,
                                      const IntMatrix& B);
PairBest max_wedge_ratio_cross(const std::vector<SaddleConnection>& as,
                               const std::vector<SaddleConnection>& bs, const IntMatrix& B);

struct OracleMismatch {
    int i = 0, j = 0;
    long long geometric = 0;
    long long algebraic = 0;
};

struct OracleStats {
    long long pairs = 0;
    long long max_abs_int = 0;
    std::vector<OracleMismatch> mismatches;
};

// geometric signed crossings vs homological pairing over all unordered pairs.
OracleStats oracle_equivalence_scan_serial(const SurfaceTemplate& s,
                                           const std::vector<SaddleConnection>& conns,
                                           const IntMatrix& B);
OracleStats oracle_equivalence_scan(const SurfaceTemplate& s,
                                    const std::vector<SaddleConnection>& conns,
                                    const IntMatrix& B);

}  // namespace kvol
