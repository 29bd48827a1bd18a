#include <chrono>
#include <cstdio>

#include "kvol/enumerate.hpp"
#include "kvol/homology.hpp"
#include "kvol/kvol.hpp"
#include "kvol/pair_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Times the serial reference implementations against the OpenMP kernels on a
// fixed workload and prints a small table.
using namespace kvol;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        if (ms < best) best = ms;
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; serial timings only\n");
#endif

    SurfaceTemplate x0 = build_double_ngon(5);
    auto conns = enumerate_saddle_connections(x0, 3.2);
    IntMatrix B = edge_intersection_matrix(x0);
    std::printf("workload: double 5-gon, lmax = 3.2, %zu connections\n", conns.size());

    PairBest ser, par;
    double t_ser = time_ms([&] { ser = max_length_ratio_pairs_serial(conns, B); });
    double t_par = time_ms([&] { par = max_length_ratio_pairs(conns, B); });
    std::printf("%-28s %10.2f ms\n", "pair sup (serial)", t_ser);
    std::printf("%-28s %10.2f ms   speedup %.2fx   %s\n", "pair sup (OpenMP)", t_par,
                t_ser / t_par, (ser.i == par.i && ser.j == par.j) ? "match" : "MISMATCH");

    auto small = enumerate_saddle_connections(x0, 2.2);
    OracleStats oser, opar;
    double o_ser = time_ms([&] { oser = oracle_equivalence_scan_serial(x0, small, B); }, 1);
    double o_par = time_ms([&] { opar = oracle_equivalence_scan(x0, small, B); }, 1);
    std::printf("%-28s %10.2f ms\n", "oracle scan (serial)", o_ser);
    std::printf("%-28s %10.2f ms   speedup %.2fx   %s\n", "oracle scan (OpenMP)", o_par,
                o_ser / o_par,
                (oser.pairs == opar.pairs && oser.mismatches.size() == opar.mismatches.size())
                    ? "match"
                    : "MISMATCH");

    ScanResult sser, spar;
    double s_ser = time_ms([&] { sser = scan_disc(5, 6, 6, 2.2, 4.5, false); }, 1);
    double s_par = time_ms([&] { spar = scan_disc(5, 6, 6, 2.2, 4.5, true); }, 1);
    bool match = sser.argmin == spar.argmin && sser.argmax == spar.argmax;
    std::printf("%-28s %10.2f ms\n", "disc scan 6x6 (serial)", s_ser);
    std::printf("%-28s %10.2f ms   speedup %.2fx   %s\n", "disc scan 6x6 (OpenMP)", s_par,
                s_ser / s_par, match ? "match" : "MISMATCH");

    double e_ser = time_ms(
        [&] { enumerate_saddle_connections(x0, 3.2, {.parallel = false}); }, 1);
    double e_par = time_ms([&] { enumerate_saddle_connections(x0, 3.2, {.parallel = true}); }, 1);
    std::printf("%-28s %10.2f ms\n", "enumeration (serial)", e_ser);
    std::printf("%-28s %10.2f ms   speedup %.2fx\n", "enumeration (OpenMP)", e_par,
                e_ser / e_par);
    return 0;
}
