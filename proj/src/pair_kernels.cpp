#include "kvol/pair_kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kvol {

namespace {

inline long long pair_int(const std::vector<long long>& a, const std::vector<long long>& b,
                          const IntMatrix& B) {
    long long acc = 0;
    size_t nb = B.size();
    for (size_t i = 0; i < nb; ++i) {
        if (a[i] == 0) continue;
        long long row = 0;
        for (size_t j = 0; j < nb; ++j) row += B[i][j] * b[j];
        acc += a[i] * row;
    }
    return acc;
}

inline bool better(const PairBest& cand, const PairBest& best) {
    if (cand.value != best.value) return cand.value > best.value;
    return std::tie(cand.i, cand.j) < std::tie(best.i, best.j);
}

}  // namespace

PairBest max_length_ratio_pairs_serial(const std::vector<SaddleConnection>& conns,
                                       const IntMatrix& B) {
    PairBest best;
    int n = static_cast<int>(conns.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long v = pair_int(conns[i].homology, conns[j].homology, B);
            if (v == 0) continue;
            PairBest cand{std::llabs(v) / (conns[i].length * conns[j].length), i, j, v};
            if (best.i < 0 || better(cand, best)) best = cand;
        }
    return best;
}

PairBest max_length_ratio_pairs(const std::vector<SaddleConnection>& conns, const IntMatrix& B) {
    int n = static_cast<int>(conns.size());
    PairBest best;
#ifdef _OPENMP
#pragma omp parallel
    {
        PairBest local;
#pragma omp for schedule(dynamic, 8) nowait
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                long long v = pair_int(conns[i].homology, conns[j].homology, B);
                if (v == 0) continue;
                PairBest cand{std::llabs(v) / (conns[i].length * conns[j].length), i, j, v};
                if (local.i < 0 || better(cand, local)) local = cand;
            }
#pragma omp critical
        if (local.i >= 0 && (best.i < 0 || better(local, best))) best = local;
    }
#else
    best = max_length_ratio_pairs_serial(conns, B);
#endif
    return best;
}

PairBest max_wedge_ratio_cross_serial(const std::vector<SaddleConnection>& as,
                                      const std::vector<SaddleConnection>& bs,
                                      const IntMatrix& B) {
    PairBest best;
    for (int i = 0; i < static_cast<int>(as.size()); ++i)
        for (int j = 0; j < static_cast<int>(bs.size()); ++j) {
            double wedge = std::abs(cross(as[i].holonomy, bs[j].holonomy));
            if (wedge < 1e-15) continue;
            long long v = pair_int(as[i].homology, bs[j].homology, B);
            if (v == 0) continue;
            PairBest cand{std::llabs(v) / wedge, i, j, v};
            if (best.i < 0 || better(cand, best)) best = cand;
        }
    return best;
}

PairBest max_wedge_ratio_cross(const std::vector<SaddleConnection>& as,
                               const std::vector<SaddleConnection>& bs, const IntMatrix& B) {
    PairBest best;
    int n = static_cast<int>(as.size());
#ifdef _OPENMP
#pragma omp parallel
    {
        PairBest local;
#pragma omp for schedule(dynamic, 8) nowait
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < static_cast<int>(bs.size()); ++j) {
                double wedge = std::abs(cross(as[i].holonomy, bs[j].holonomy));
                if (wedge < 1e-15) continue;
                long long v = pair_int(as[i].homology, bs[j].homology, B);
                if (v == 0) continue;
                PairBest cand{std::llabs(v) / wedge, i, j, v};
                if (local.i < 0 || better(cand, local)) local = cand;
            }
#pragma omp critical
        if (local.i >= 0 && (best.i < 0 || better(local, best))) best = local;
    }
#else
    best = max_wedge_ratio_cross_serial(as, bs, B);
#endif
    return best;
}

OracleStats oracle_equivalence_scan_serial(const SurfaceTemplate& s,
                                           const std::vector<SaddleConnection>& conns,
                                           const IntMatrix& B) {
    OracleStats st;
    int n = static_cast<int>(conns.size());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            long long alg = pair_int(conns[i].homology, conns[j].homology, B);
            long long geo = geometric_signed_crossings(conns[i], conns[j], s);
            ++st.pairs;
            st.max_abs_int = std::max(st.max_abs_int, std::llabs(alg));
            if (alg != geo) st.mismatches.push_back({i, j, geo, alg});
        }
    return st;
}

OracleStats oracle_equivalence_scan(const SurfaceTemplate& s,
                                    const std::vector<SaddleConnection>& conns,
                                    const IntMatrix& B) {
#ifndef _OPENMP
    return oracle_equivalence_scan_serial(s, conns, B);
#else
    OracleStats st;
    int n = static_cast<int>(conns.size());
#pragma omp parallel
    {
        OracleStats local;
#pragma omp for schedule(dynamic, 4) nowait
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                long long alg = pair_int(conns[i].homology, conns[j].homology, B);
                long long geo = geometric_signed_crossings(conns[i], conns[j], s);
                ++local.pairs;
                local.max_abs_int = std::max(local.max_abs_int, std::llabs(alg));
                if (alg != geo) local.mismatches.push_back({i, j, geo, alg});
            }
#pragma omp critical
        {
            st.pairs += local.pairs;
            st.max_abs_int = std::max(st.max_abs_int, local.max_abs_int);
            st.mismatches.insert(st.mismatches.end(), local.mismatches.begin(),
                                 local.mismatches.end());
        }
    }
    std::sort(st.mismatches.begin(), st.mismatches.end(),
              [](const OracleMismatch& a, const OracleMismatch& b) {
                  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
              });
    return st;
#endif
}

}  // namespace kvol
