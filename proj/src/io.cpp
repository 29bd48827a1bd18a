#include "kvol/io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace kvol {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("config: n must be odd and >= 5");
    if (model != "double" && model != "staircase")
        throw std::invalid_argument("config: model must be double or staircase");
    if (lmax <= 0) throw std::invalid_argument("config: lmax must be positive");
    if (nx < 2 || ny < 2) throw std::invalid_argument("config: grid must be at least 2x2");
    if (precision != "standard" && precision != "extended")
        throw std::invalid_argument("config: precision must be standard or extended");
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

namespace {

// parse back so JSON numbers carry exactly 15 significant digits
double sig15(double v) { return std::stod(format_float(v)); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

std::string template_to_json(const SurfaceTemplate& s) {
    ordered_json j;
    j["schema"] = "kvol-report/1";
    j["n"] = s.n;
    j["model"] = s.model;
    j["area"] = sig15(s.area());
    j["cone_angle_over_pi"] = sig15(s.cone_angle / std::numbers::pi);
    j["polygons"] = ordered_json::array();
    for (const auto& P : s.polygons) {
        ordered_json poly = ordered_json::array();
        for (const auto& v : P) poly.push_back(ordered_json::array({sig15(v.x), sig15(v.y)}));
        j["polygons"].push_back(poly);
    }
    j["edges"] = ordered_json::array();
    for (int e = 0; e < s.num_edges(); ++e) {
        SideRef a = s.edge_instance[e];
        SideRef b = s.gluing(a).other;
        ordered_json je;
        je["label"] = s.edge_labels[e];
        je["side"] = {{"poly", a.poly}, {"side", a.side}};
        je["glued_to"] = {{"poly", b.poly}, {"side", b.side}};
        j["edges"].push_back(je);
    }
    j["labels"] = s.edge_labels;
    return j.dump(2);
}

void connections_to_csv(const std::vector<SaddleConnection>& conns, const SurfaceTemplate& s,
                        std::ostream& os) {
    os << "hol_x,hol_y,length,angle,crossings,homology\n";
    for (const auto& sc : conns) {
        std::string cr;
        for (const auto& c : sc.crossings) {
            if (!cr.empty()) cr += ";";
            cr += s.edge_labels[c.edge] + (c.sign > 0 ? ":+1" : ":-1");
        }
        std::string hom;
        for (size_t i = 0; i < sc.homology.size(); ++i) {
            if (i) hom += ";";
            hom += std::to_string(sc.homology[i]);
        }
        os << format_float(sc.holonomy.x) << ',' << format_float(sc.holonomy.y) << ','
           << format_float(sc.length) << ',' << format_float(direction_angle(sc.holonomy)) << ','
           << csv_field(cr) << ',' << csv_field(hom) << '\n';
    }
}

void scan_to_csv(const ScanResult& scan, std::ostream& os) {
    os << "x,y,closed_form,empirical,gap,pair_alpha_id,pair_beta_id\n";
    for (const auto& c : scan.cells)
        os << format_float(c.x) << ',' << format_float(c.y) << ',' << format_float(c.closed_form)
           << ',' << format_float(c.empirical) << ',' << format_float(c.gap) << ','
           << c.pair_alpha << ',' << c.pair_beta << '\n';
}

std::string kvol_report_to_json(const KVolReport& r) {
    ordered_json j;
    j["schema"] = "kvol-report/1";
    j["n"] = r.n;
    j["point"] = {{"x", sig15(r.point.x)}, {"y", sig15(r.point.y)}};
    j["closed_form"] = sig15(r.closed_form);
    j["empirical"] = sig15(r.empirical);
    j["gap"] = sig15(r.gap);
    j["lmax"] = sig15(r.lmax);
    j["pair"] = {{"alpha_id", r.pair_alpha}, {"beta_id", r.pair_beta}};
    ordered_json a, b;
    a["hol"] = {sig15(r.alpha.holonomy.x), sig15(r.alpha.holonomy.y)};
    a["length"] = sig15(r.alpha.length);
    b["hol"] = {sig15(r.beta.holonomy.x), sig15(r.beta.holonomy.y)};
    b["length"] = sig15(r.beta.length);
    j["pair"]["alpha"] = a;
    j["pair"]["beta"] = b;
    return j.dump(2);
}

std::string pairing_summary_to_json(const OracleStats& st) {
    ordered_json j;
    j["schema"] = "kvol-report/1";
    j["pairs"] = st.pairs;
    j["mismatches"] = ordered_json::array();
    for (const auto& mm : st.mismatches)
        j["mismatches"].push_back(
            {{"i", mm.i}, {"j", mm.j}, {"geometric", mm.geometric}, {"algebraic", mm.algebraic}});
    j["max_abs_int"] = st.max_abs_int;
    return j.dump(2);
}

std::string reduction_to_json(const ReductionResult& r) {
    ordered_json j;
    j["schema"] = "kvol-report/1";
    j["reduced"] = {{"x", sig15(r.point.x)}, {"y", sig15(r.point.y)}};
    std::string w;
    for (const auto& tok : r.word) {
        if (!w.empty()) w += " ";
        w += tok;
    }
    j["word"] = w;
    return j.dump(2);
}

}  // namespace kvol
