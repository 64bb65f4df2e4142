#include <numbers>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"

#include "cbeta/report.hpp"

using namespace cbeta;

TEST_SUITE("report") {

TEST_CASE("angle parsing") {
    const double pi = std::numbers::pi;
    CHECK(parse_angle("pi") == doctest::Approx(pi).epsilon(1e-15));
    CHECK(parse_angle("2pi") == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK(parse_angle("2*pi") == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK(parse_angle("pi/8") == doctest::Approx(pi / 8.0).epsilon(1e-15));
    CHECK(parse_angle("2pi/3") == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-15));
    CHECK(parse_angle("0.75pi") == doctest::Approx(0.75 * pi).epsilon(1e-15));
    CHECK(parse_angle(" Pi ") == doctest::Approx(pi).epsilon(1e-15));
    CHECK(parse_angle("1.5") == 1.5);
    CHECK(parse_angle("3.14159265") == doctest::Approx(3.14159265));
    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("3.14abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pik"), std::invalid_argument);
}

TEST_CASE("full precision formatting") {
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(-2.5) == "-2.5");
}

TEST_CASE("reports serialize to stable JSON lines") {
    RunReport r;
    r.command = "verify theta";
    r.params["nu"] = "3";
    r.params["check"] = "m2";
    r.estimate = 0.5000123;
    r.std_error = 0.0007;
    r.predicted = 0.5;
    r.abs_gap = 0.0000123;
    r.pass = true;
    r.wall_time_ms = 12;

    const std::string line = report_to_json(r);
    CHECK(line == report_to_json(r));

    const nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.at("command") == "verify theta");
    CHECK(j.at("params").at("nu") == "3");
    CHECK(j.at("estimate") == format_real(0.5000123));
    CHECK(j.at("pass") == true);
    CHECK(j.at("wall_time_ms") == 12);

    std::ostringstream out;
    write_json_lines(out, {r, r, r});
    int lines = 0;
    for (const char c : out.str()) {
        if (c == '\n') {
            ++lines;
        }
    }
    CHECK(lines == 3);
}

TEST_CASE("csv writer") {
    std::ostringstream out;
    write_csv(out, "index", "angle", {{"0", "1.25"}, {"1", "2.5"}});
    CHECK(out.str() == "index,angle\n0,1.25\n1,2.5\n");
}

} // TEST_SUITE
