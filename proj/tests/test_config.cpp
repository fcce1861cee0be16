#include <doctest.h>

#include <sstream>

#include "latmol/config.hpp"
#include "latmol/errors.hpp"

using namespace latmol;

TEST_CASE("config parsing") {
    std::istringstream in(
        "# comment\n"
        "top = 1\n"
        "[gate]\n"
        "a_a0 = 200   # trailing comment\n"
        "omega0_khz = 10.5\n"
        "ideal = true\n"
        "name = fixture\n"
        "[grid]\n"
        "n1 = 24\n");
    const Config cfg = parse_config(in);

    CHECK(cfg.get_double("top") == 1.0);
    CHECK(cfg.get_double("gate.a_a0") == 200.0);
    CHECK(cfg.get_double("GATE.A_A0") == 200.0); // keys are case-insensitive
    CHECK(cfg.get_double_or("gate.missing", 7.0) == 7.0);
    CHECK(cfg.get_int("grid.n1") == 24);
    CHECK(cfg.get_bool_or("gate.ideal", false));
    CHECK(cfg.get_string("gate.name") == "fixture");
    CHECK_FALSE(cfg.has("gate.nope"));

    SUBCASE("missing keys are named in the error") {
        CHECK_THROWS_WITH_AS(cfg.get_double("grid.i1_min_w_m2"),
                             doctest::Contains("grid.i1_min_w_m2"), ConfigError);
    }
    SUBCASE("numeric view skips non-numeric entries") {
        const auto nums = cfg.numeric_values();
        CHECK(nums.count("gate.a_a0") == 1);
        CHECK(nums.count("gate.name") == 0);
    }
}

TEST_CASE("config rejects malformed input") {
    {
        std::istringstream in("[gate\nx = 1\n");
        CHECK_THROWS_AS(parse_config(in), ConfigError);
    }
    {
        std::istringstream in("just words\n");
        CHECK_THROWS_AS(parse_config(in), ConfigError);
    }
    {
        std::istringstream in("x =\n");
        CHECK_THROWS_AS(parse_config(in), ConfigError);
    }
    {
        std::istringstream in("[gate]\nn = abc\n");
        const Config cfg = parse_config(in);
        CHECK_THROWS_AS(cfg.get_double("gate.n"), ConfigError);
        CHECK_THROWS_AS(cfg.get_int("gate.n"), ConfigError);
    }
    {
        std::istringstream in("[gate]\nn = 1.5\n");
        CHECK_THROWS_AS(parse_config(in).get_int("gate.n"), ConfigError);
    }
}

TEST_CASE("missing config file maps to an io error") {
    CHECK_THROWS_AS(load_config("/nonexistent/latmol.cfg"), IoError);
}
