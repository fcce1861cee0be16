#include <doctest.h>

#include "latmol/constants.hpp"
#include "latmol/errors.hpp"
#include "latmol/species.hpp"

using namespace latmol;
using constants::speed_of_light;
using constants::two_pi;

TEST_CASE("lookup returns the documented species data") {
    const Species li = lookup_species("Li6");
    CHECK(li.dominant_line().wavelength == doctest::Approx(671e-9).epsilon(1e-3));
    CHECK(li.mass / constants::amu == doctest::Approx(6.0151).epsilon(1e-5));
    CHECK(li.qubit_state_labels.second == "|F=3/2,mF=-1/2>");
    CHECK(li.qubit_state_labels.first == "|F=1/2,mF=+1/2>");

    const Species cs = lookup_species("Cs133");
    CHECK(cs.dominant_line().wavelength == doctest::Approx(852e-9).epsilon(1e-3));
    CHECK(cs.mass / constants::amu == doctest::Approx(132.9055).epsilon(1e-6));
    CHECK(cs.qubit_state_labels.second == "|F=4,mF=0>");
    CHECK(cs.qubit_state_labels.first == "|F=3,mF=0>");

    CHECK_THROWS_AS(lookup_species("Na23"), ConfigError);
}

TEST_CASE("species data is internally consistent") {
    for (const char* name : {"Li6", "Cs133"}) {
        const Species sp = lookup_species(name);
        for (const auto& line : sp.lines) {
            CHECK(line.linewidth > 0);
            CHECK(line.isat > 0);
            CHECK(line.omega0 ==
                  doctest::Approx(two_pi * speed_of_light / line.wavelength)
                      .epsilon(1e-9));
        }
        // alkali ordering: D1 is the longer wavelength
        CHECK(sp.line("D1").wavelength > sp.line("D2").wavelength);
    }
}

TEST_CASE("detuning sign and magnitude") {
    const Species li = lookup_species("Li6");
    const Species cs = lookup_species("Cs133");

    SUBCASE("resonance gives zero") {
        for (const auto& line : li.lines)
            CHECK(detuning(line, line.wavelength) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("Cs D2 probed at 681 nm is blue detuned") {
        CHECK(detuning(cs.line("D2"), 681e-9) > 0);
    }
    SUBCASE("Li D2 probed at 1064 nm is red detuned, magnitude cross-checked") {
        const auto& line = li.line("D2");
        const double got = detuning(line, 1064e-9);
        // independent evaluation of 2 pi c (1/lambda_laser - 1/lambda_0)
        const double expected =
            two_pi * speed_of_light * (1.0 / 1064e-9 - 1.0 / line.wavelength);
        CHECK(got < 0);
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("nonpositive wavelength rejected") {
        CHECK_THROWS_AS(detuning(li.line("D2"), 0.0), ConfigError);
    }
}

TEST_CASE("override file keys replace compiled-in constants") {
    std::map<std::string, double> ov{{"li6.mass_amu", 6.02},
                                     {"li6.d2.gamma_hz", 6.0e6},
                                     {"cs133.d1.isat_w_m2", 30.0}};
    const Species li = lookup_species("Li6", ov);
    CHECK(li.mass == doctest::Approx(6.02 * constants::amu));
    CHECK(li.line("D2").linewidth == doctest::Approx(two_pi * 6.0e6));
    const Species cs = lookup_species("Cs133", ov);
    CHECK(cs.line("D1").isat == doctest::Approx(30.0));
    // untouched values keep their defaults
    CHECK(cs.line("D2").isat == doctest::Approx(11.023));
}
