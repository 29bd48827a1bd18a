#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kvol/acceptance.hpp"
#include "kvol/cylinders.hpp"
#include "kvol/enumerate.hpp"
#include "kvol/homology.hpp"
#include "kvol/hyperbolic.hpp"
#include "kvol/io.hpp"
#include "kvol/kvol.hpp"
#include "kvol/sectors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace kvol;

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

SurfaceTemplate build_model(int n, const std::string& model) {
    if (model == "double") return build_double_ngon(n);
    if (model == "staircase") return build_staircase(n);
    throw std::invalid_argument("model must be 'double' or 'staircase'");
}

// "3.2+0.4i", "-1+2.5i", "0.7i", "4"
UHPoint parse_uhpoint(std::string s) {
    std::erase(s, ' ');
    double x = 0, y = 0;
    if (!s.empty() && s.back() == 'i') {
        s.pop_back();
        size_t split = std::string::npos;
        for (size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            y = s.empty() || s == "+" ? 1.0 : (s == "-" ? -1.0 : std::stod(s));
        } else {
            x = std::stod(s.substr(0, split));
            std::string im = s.substr(split);
            y = im == "+" ? 1.0 : (im == "-" ? -1.0 : std::stod(im));
        }
    } else {
        x = std::stod(s);
    }
    if (y <= 0) throw std::invalid_argument("point must lie in the upper half plane (y > 0)");
    return {x, y};
}

void print_acceptance(const AcceptanceReport& rep, std::ostream& os) {
    for (const auto& r : rep.results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
           << "  (measured " << r.measured << ", tolerance " << r.tolerance << ", "
           << r.seconds << " s)";
        if (!r.detail.empty()) os << "  -- " << r.detail;
        os << "\n";
    }
    os << (rep.all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KVol on the Teichmueller disc of the double regular n-gon"};
    app.require_subcommand(1);

    std::string precision = "standard";
    int threads = 0;
    unsigned long long seed = 0;
    app.add_option("--precision", precision, "standard | extended")
        ->check(CLI::IsMember({"standard", "extended"}));
    app.add_option("--threads", threads, "worker threads (0 = library default)");
    app.add_option("--seed", seed, "seed for randomized suites");

    int n = 5;
    std::string model = "double";
    double lmax = 2.2;
    std::string out;

    auto* ngon = app.add_subcommand("ngon", "emit a surface template");
    std::string emit = "json";
    ngon->add_option("--n", n)->required();
    ngon->add_option("--model", model);
    ngon->add_option("--emit", emit)->check(CLI::IsMember({"json"}));
    ngon->add_option("--out", out);

    auto* enumerate = app.add_subcommand("enumerate", "list saddle connections up to --lmax");
    enumerate->add_option("--n", n)->required();
    enumerate->add_option("--model", model);
    enumerate->add_option("--lmax", lmax)->required();
    enumerate->add_option("--out", out);

    auto* pairing = app.add_subcommand("pairing", "intersection-pairing oracle check");
    bool check_oracle = false;
    pairing->add_option("--n", n)->required();
    pairing->add_option("--model", model);
    pairing->add_option("--lmax", lmax)->required();
    pairing->add_flag("--check-oracle", check_oracle);
    pairing->add_option("--out", out);

    auto* hyp = app.add_subcommand("hyp", "hyperbolic-plane utilities");
    auto* reduce = hyp->add_subcommand("reduce", "reduce a point to the fundamental domain");
    std::string zarg = "i";
    reduce->add_option("--n", n)->required();
    reduce->add_option("--z", zarg)->required();
    reduce->add_option("--out", out);

    auto* kv = app.add_subcommand("kvol", "KVol values");
    auto* kvc = kv->add_subcommand("closed", "closed-form KVol at a disc point");
    auto* kve = kv->add_subcommand("empirical", "enumerated KVol lower bound at a disc point");
    double px = 0.0, py = 1.0;
    kvc->add_option("--n", n)->required();
    kvc->add_option("--x", px)->required();
    kvc->add_option("--y", py)->required();
    kve->add_option("--n", n)->required();
    kve->add_option("--x", px)->required();
    kve->add_option("--y", py)->required();
    kve->add_option("--lmax", lmax)->required();
    kve->add_option("--out", out);

    auto* scan = app.add_subcommand("scan", "KVol over a grid on the half fundamental domain");
    int nx = 20, ny = 20;
    double ymax = 3.0;
    scan->add_option("--n", n)->required();
    scan->add_option("--nx", nx);
    scan->add_option("--ny", ny);
    scan->add_option("--ymax", ymax);
    scan->add_option("--lmax", lmax)->required();
    scan->add_option("--out", out);

    auto* diagrams = app.add_subcommand("diagrams", "transition diagrams of the double n-gon");
    diagrams->add_option("--n", n)->required();

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    bool skip_scan = false;
    verify->add_flag("--skip-scan", skip_scan, "skip the long disc-scan criterion (dev only)");
    verify->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        std::ofstream file;
        if (*ngon) {
            open_out(out, file) << template_to_json(build_model(n, model)) << "\n";
        } else if (*enumerate) {
            SurfaceTemplate s = build_model(n, model);
            auto conns = enumerate_saddle_connections(s, lmax);
            connections_to_csv(conns, s, open_out(out, file));
        } else if (*pairing) {
            SurfaceTemplate s = build_model(n, model);
            auto conns = enumerate_saddle_connections(s, lmax);
            IntMatrix B = edge_intersection_matrix(s);
            OracleStats st;
            if (check_oracle) {
                st = oracle_equivalence_scan(s, conns, B);
            } else {
                st.pairs = static_cast<long long>(conns.size()) *
                           (static_cast<long long>(conns.size()) + 1) / 2;
                for (const auto& a : conns)
                    for (const auto& b : conns)
                        st.max_abs_int = std::max(
                            st.max_abs_int,
                            std::llabs(algebraic_intersection(HomologyClass{a.homology},
                                                              HomologyClass{b.homology}, B)));
            }
            open_out(out, file) << pairing_summary_to_json(st) << "\n";
        } else if (*reduce) {
            HeckeGroup g(n);
            open_out(out, file) << reduction_to_json(
                                       reduce_to_fundamental_domain(parse_uhpoint(zarg), g))
                                << "\n";
        } else if (*kvc) {
            std::cout << format_float(kvol_closed_form(n, {px, py})) << "\n";
        } else if (*kve) {
            KVolReport r = kvol_empirical(n, {px, py}, lmax);
            open_out(out, file) << kvol_report_to_json(r) << "\n";
        } else if (*scan) {
            ScanResult res = scan_disc(n, nx, ny, ymax, lmax);
            scan_to_csv(res, open_out(out, file));
        } else if (*diagrams) {
            for (int sec = 0; sec < n; ++sec) {
                TransitionDiagram d = transition_diagram(n, sec);
                std::cout << "Sigma_" << sec << ":";
                for (int lab : d.order) std::cout << " e" << lab;
                std::cout << "\n";
            }
        } else if (*verify) {
            AcceptanceConfig cfg;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.extended_precision = precision == "extended";
            cfg.include_scan = !skip_scan;
            AcceptanceReport rep = run_acceptance(cfg);
            print_acceptance(rep, std::cout);
            if (!out.empty()) {
                std::ofstream jf(out);
                jf << acceptance_report_to_json(rep, cfg) << "\n";
            }
            return rep.all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
