#include <doctest.h>

#include <limits>
#include <sstream>
#include <string>

#include "decohere/csv.hpp"

using namespace decohere;

TEST_SUITE("csv") {

TEST_CASE("number format") {
    CHECK(format_number(8.416e-4, 4) == "8.416e-4");
    CHECK(format_number(5.0, 3) == "5.00e0");
    CHECK(format_number(-1234.5, 2) == "-1.2e3");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN(), 4) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity(), 4) == "-inf");
    CHECK_THROWS(format_number(1.0, 0));
}

TEST_CASE("empty table is header only") {
    ScenarioTable t("e", {{"t", "time"}, {"gamma", ""}});
    std::ostringstream out;
    const auto n = emit_csv(t, out);
    CHECK(out.str() == "t (time),gamma (1),converged (bool)\n");
    CHECK(n == out.str().size());
}

TEST_CASE("rows, comments and flags") {
    ScenarioTable t("x", {{"a", ""}, {"b", ""}});
    t.add_row({8.416e-4, 1.0});
    t.add_row({2.0, 3.0}, {true, false});
    const std::vector<std::string> notes{"note"};
    std::ostringstream out;
    emit_csv(t, out, 4, notes);
    CHECK(out.str() ==
          "a (1),b (1),converged (bool)\n"
          "8.416e-4,1.000e0,1\n"
          "2.000e0,3.000e0,0\n"
          "# note\n"
          "# converged: flagged (1,1)\n");
    CHECK(out.str().find('\r') == std::string::npos);
}

TEST_CASE("write failure throws") {
    ScenarioTable t("x", {{"a", ""}});
    t.add_row({1.0});
    std::ostringstream out;
    out.setstate(std::ios::badbit);
    CHECK_THROWS_AS(emit_csv(t, out), std::ios_base::failure);
}

}
