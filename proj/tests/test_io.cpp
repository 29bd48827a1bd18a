#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "kvol/io.hpp"

using namespace kvol;

TEST_CASE("config validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.n = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n = 7;
    cfg.model = "torus";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.model = "staircase";
    cfg.lmax = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("template JSON carries polygons, gluings and labels") {
    SurfaceTemplate s = build_double_ngon(5);
    auto j = nlohmann::json::parse(template_to_json(s));
    CHECK(j["schema"] == "kvol-report/1");
    CHECK(j["n"] == 5);
    CHECK(j["polygons"].size() == 2);
    CHECK(j["polygons"][0].size() == 5);
    CHECK(j["labels"].size() == 5);
    CHECK(j["edges"].size() == 5);
    // identical calls emit identical bytes
    CHECK(template_to_json(s) == template_to_json(build_double_ngon(5)));
}

TEST_CASE("connection CSV layout") {
    SurfaceTemplate s = build_staircase(5);
    auto conns = enumerate_saddle_connections(s, 1.0);
    std::ostringstream os;
    connections_to_csv(conns, s, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "hol_x,hol_y,length,angle,crossings,homology");
    size_t rows = 0;
    for (std::string line; std::getline(is, line);) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
    }
    CHECK(rows == conns.size());

    std::ostringstream os2;
    connections_to_csv(conns, s, os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("kvol report JSON schema") {
    KVolReport r = kvol_empirical(5, {0, 1}, 2.0);
    auto j = nlohmann::json::parse(kvol_report_to_json(r));
    CHECK(j["schema"] == "kvol-report/1");
    CHECK(j["n"] == 5);
    CHECK(j.contains("closed_form"));
    CHECK(j.contains("empirical"));
    CHECK(j.contains("gap"));
    CHECK(j["pair"].contains("alpha_id"));
}

TEST_CASE("scan CSV layout") {
    ScanResult scan = scan_disc(5, 3, 3, 1.6, 3.0);
    std::ostringstream os;
    scan_to_csv(scan, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,y,closed_form,empirical,gap,pair_alpha_id,pair_beta_id");
    size_t rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == 9);
}

TEST_CASE("float formatting uses 15 significant digits") {
    CHECK(format_float(0.1234567890123456789) == "0.123456789012346");
    CHECK(format_float(2.0) == "2");
}
