#include "gbv/errors.hpp"
#include "gbv/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace gbv;

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(3.0) == "3");
}

TEST_CASE("report layout") {
    ExperimentReport rep({"spec", "Q", "count", "ok"});
    rep.add_row({std::string("k=1 ell=2 pairs=1:2,2:3"), 2.5, std::int64_t{7}, true}, 0.25);
    CHECK_THROWS_AS(rep.add_row({2.0}, 0.0), ValidationError);
    CHECK(rep.columns().back() == "wall_seconds");

    std::ostringstream csv;
    rep.write_csv(csv);
    CHECK(csv.str() == "spec,Q,count,ok,wall_seconds\n\"k=1 ell=2 pairs=1:2,2:3\",2.5,7,true,0.25\n");

    std::ostringstream js;
    rep.write_json(js);
    const auto parsed = nlohmann::json::parse(js.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0]["spec"] == "k=1 ell=2 pairs=1:2,2:3");
    CHECK(parsed[0]["Q"] == 2.5);
    CHECK(parsed[0]["count"] == 7);
    CHECK(parsed[0]["ok"] == true);
    CHECK(parsed[0]["wall_seconds"] == 0.25);
}
