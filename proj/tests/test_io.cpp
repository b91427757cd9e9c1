#include "afinv/io.h"

#include "doctest.h"
#include "test_util.h"

using nlohmann::json;
using num::Real;
using testutil::close_abs;

TEST_CASE("number parsing accepts numbers and exact strings") {
    CHECK(io::parse_number(json(2), "x") == Real(2));
    CHECK(io::parse_number(json("3/2"), "x") == Real("1.5"));
    CHECK(io::parse_number(json("0.25"), "x") == Real("0.25"));
    CHECK_THROWS_WITH_AS(io::parse_number(json("zebra"), "weights[1]"),
                         doctest::Contains("weights[1]"), io::SchemaError);
    CHECK_THROWS_AS(io::parse_number(json::array(), "x"), io::SchemaError);
}

TEST_CASE("1-D system files") {
    json good = json::parse(R"({"poles": ["1/2", 3], "weights": [2, "1/3"]})");
    oned::System sys = io::parse_oned_system(good);
    CHECK(sys.pole_count() == 2);
    CHECK(sys.poles[0] == Real("0.5"));
    CHECK(sys.weights[1] == Real(1) / 3);

    json empty = json::parse(R"({"poles": [], "weights": []})");
    CHECK(io::parse_oned_system(empty).pole_count() == 0);

    CHECK_THROWS_WITH_AS(
        io::parse_oned_system(json::parse(R"({"poles": [0], "weights": [-1]})")),
        doctest::Contains("weights[0]"), io::SchemaError);
    CHECK_THROWS_WITH_AS(
        io::parse_oned_system(json::parse(R"({"poles": [1, 1], "weights": [1, 1]})")),
        doctest::Contains("poles[1]"), io::SchemaError);
    CHECK_THROWS_WITH_AS(
        io::parse_oned_system(json::parse(R"({"poles": [0, 1], "weights": [1]})")),
        doctest::Contains("weights"), io::SchemaError);
    CHECK_THROWS_AS(io::parse_oned_system(json::parse(R"({"poles": [0]})")), io::SchemaError);
}

TEST_CASE("arrangement files") {
    json good = json::parse(R"({
        "n": 2,
        "hyperplanes": [
            {"u0": 0, "u": [1, 0], "lambda": 1},
            {"u0": "-1", "u": ["1", "1"], "lambda": "3/2"}
        ]
    })");
    hyper::Arrangement arr = io::parse_arrangement(good);
    CHECK(arr.dim() == 2);
    CHECK(arr.size() == 2);
    CHECK(arr.plane(1).weight == Real("1.5"));

    CHECK_THROWS_WITH_AS(io::parse_arrangement(json::parse(
                             R"({"n": 2, "hyperplanes": [{"u0": 0, "u": [1], "lambda": 1}]})")),
                         doctest::Contains("hyperplanes[0].u"), io::SchemaError);
    CHECK_THROWS_WITH_AS(
        io::parse_arrangement(json::parse(
            R"({"n": 1, "hyperplanes": [{"u0": 0, "u": [1], "lambda": 0}]})")),
        doctest::Contains("hyperplanes[0].lambda"), io::SchemaError);
    CHECK_THROWS_WITH_AS(
        io::parse_arrangement(json::parse(
            R"({"n": 1, "hyperplanes": [{"u0": 0, "u": [0], "lambda": 1}]})")),
        doctest::Contains("zero normal"), io::SchemaError);
    CHECK_THROWS_WITH_AS(
        io::parse_arrangement(json::parse(R"({"n": 1, "hyperplanes": [{"u0": 0, "u": [1]}]})")),
        doctest::Contains("lambda: missing"), io::SchemaError);
    CHECK_THROWS_AS(io::parse_arrangement(json::parse(R"({"n": 0, "hyperplanes": []})")),
                    io::SchemaError);
}

TEST_CASE("file kind detection") {
    CHECK(io::is_oned_file(json::parse(R"({"poles": [], "weights": []})")));
    CHECK_FALSE(io::is_oned_file(json::parse(R"({"n": 1, "hyperplanes": []})")));
    CHECK(io::is_arrangement_file(json::parse(R"({"n": 1, "hyperplanes": []})")));
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(io::load_json_file("/nonexistent/path.json"), io::SchemaError);
}
