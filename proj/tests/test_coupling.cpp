#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "latmol/constants.hpp"
#include "latmol/coupling.hpp"
#include "latmol/species.hpp"

using namespace latmol;
using namespace latmol::coupling;
using constants::bohr_radius;
using constants::two_pi;

TEST_CASE("center-of-mass reduction") {
    SUBCASE("symmetric pair collapses to the single-particle values") {
        const double m = 2.2e-25, w = 2 * two_pi * 1e5;
        const auto s = reduce_system(m, w, m, w);
        CHECK(s.reduced_mass == doctest::Approx(m / 2).epsilon(1e-14));
        CHECK(s.omega_com == doctest::Approx(w).epsilon(1e-14));
        CHECK(s.omega_rel == doctest::Approx(w).epsilon(1e-14));
    }
    SUBCASE("Li-Cs reduced mass") {
        const double m1 = lookup_species("Li6").mass;
        const double m2 = lookup_species("Cs133").mass;
        const auto s = reduce_system(m1, 1e5, m2, 1e5);
        CHECK(s.reduced_mass / constants::amu == doctest::Approx(5.7547).epsilon(2e-4));
    }
    SUBCASE("equal trap frequencies of 160 kHz give omega_r of 160 kHz") {
        const double w = two_pi * 160e3;
        const auto s = reduce_system(lookup_species("Li6").mass, w,
                                     lookup_species("Cs133").mass, w);
        CHECK(s.omega_rel == doctest::Approx(w).epsilon(1e-12));
        // the derived oscillator length for this operating point
        CHECK(s.r0 == doctest::Approx(104.77e-9).epsilon(1e-3));
    }
    SUBCASE("algebraic identities on random inputs") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> logm(-27.0, -24.0);
        std::uniform_real_distribution<double> logw(3.0, 7.0);
        for (int i = 0; i < 100000; ++i) {
            const double m1 = std::pow(10.0, logm(rng)), m2 = std::pow(10.0, logm(rng));
            const double w1 = std::pow(10.0, logw(rng)), w2 = std::pow(10.0, logw(rng));
            const auto s = reduce_system(m1, w1, m2, w2);
            const double lhs = s.omega_com * s.omega_com * s.total_mass;
            const double rhs = m1 * w1 * w1 + m2 * w2 * w2;
            REQUIRE(std::abs(lhs - rhs) <= 1e-12 * rhs);
            REQUIRE(std::abs(s.omega_com * s.omega_rel - w1 * w2) <= 1e-12 * w1 * w2);
        }
    }
    SUBCASE("invalid inputs throw") {
        CHECK_THROWS_AS(reduce_system(0, 1, 1, 1), std::domain_error);
        CHECK_THROWS_AS(reduce_system(1, -1, 1, 1), std::domain_error);
    }
}

TEST_CASE("Franck-Condon factor") {
    const double r0 = 210e-9;
    SUBCASE("vanishing scattering length kills the overlap") {
        CHECK(franck_condon_closed_form(1e-12 * r0, r0) < 1e-15);
    }
    SUBCASE("operating point reproduces the published coupling window") {
        const double c = franck_condon_closed_form(200 * bohr_radius, r0);
        CHECK(c >= 0.017 * 0.99);
        CHECK(c <= 0.020);
    }
    SUBCASE("closed form scales exactly as (a/r0)^{3/2}") {
        const double a = 40 * bohr_radius;
        const double ratio = franck_condon_closed_form(2 * a, r0) /
                             franck_condon_closed_form(a, r0);
        CHECK(ratio == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-13));
    }
    SUBCASE("regime boundary is enforced") {
        CHECK_THROWS_AS(franck_condon_closed_form(0.5 * r0, r0), std::domain_error);
        CHECK_THROWS_AS(franck_condon_closed_form(0.0, r0), std::domain_error);
        CHECK_THROWS_AS(franck_condon_quadrature(0.6 * r0, r0), std::domain_error);
    }
    SUBCASE("wavefunctions are separately normalized under the same integrator") {
        CHECK(pair_state_norm(r0) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(molecular_state_norm(50 * bohr_radius, r0) ==
              doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("quadrature runs a constant factor above the closed form") {
        for (double a_b : {15.0, 60.0, 95.0}) {
            const double a = a_b * bohr_radius;
            const double ratio =
                franck_condon_quadrature(a, r0) / franck_condon_closed_form(a, r0);
            CHECK(ratio > 1.40);
            CHECK(ratio < 1.42);
        }
    }
}

TEST_CASE("Rabi rate and pulse-pair time") {
    SUBCASE("unit coupling") {
        const auto p = rabi_and_time(1.0, two_pi * 1e4);
        CHECK(p.rabi == doctest::Approx(two_pi * 1e4));
        CHECK(p.pair_time == doctest::Approx(constants::pi / (two_pi * 1e4)));
    }
    SUBCASE("published rate gives the published gate time") {
        // Omega = 2 pi x 200 Hz -> tau = 2.5 ms
        const auto p = rabi_and_time(0.02, two_pi * 1e4);
        CHECK(p.rabi == doctest::Approx(two_pi * 200.0));
        CHECK(p.pair_time == doctest::Approx(2.5e-3).epsilon(1e-12));
    }
    SUBCASE("halving the coupling doubles the time") {
        const auto a = rabi_and_time(0.02, two_pi * 1e4);
        const auto b = rabi_and_time(0.01, two_pi * 1e4);
        CHECK(b.pair_time == doctest::Approx(2 * a.pair_time));
    }
    CHECK_THROWS_AS(rabi_and_time(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rabi_and_time(1.5, 1.0), std::domain_error);
}

TEST_CASE("overlap fidelity") {
    const double r0 = 210e-9;
    CHECK(overlap_fidelity(0.0, r0) == 1.0);
    SUBCASE("10 nm offset at the published oscillator length") {
        CHECK(overlap_fidelity(10e-9, r0) == doctest::Approx(0.9977350).epsilon(1e-6));
        CHECK(overlap_fidelity_3axis(10e-9, r0) ==
              doctest::Approx(0.9932204).epsilon(1e-6));
    }
    SUBCASE("even in the offset, multiplicative composition") {
        const double f = overlap_fidelity(22e-9, r0);
        CHECK(overlap_fidelity(-22e-9, r0) == doctest::Approx(f).epsilon(1e-15));
        // two sequential operations: 0.995^2 ~ 0.99
        CHECK(f * f == doctest::Approx(overlap_fidelity(22e-9, r0) *
                                       overlap_fidelity(-22e-9, r0)));
    }
    SUBCASE("bounded in (0, 1]") {
        for (double d : {0.0, 5e-9, 50e-9, 500e-9}) {
            const double f = overlap_fidelity(d, r0);
            CHECK(f > 0.0);
            CHECK(f <= 1.0);
        }
    }
}

TEST_CASE("off-resonant leakage") {
    CHECK(offresonant_leakage(two_pi * 200, 0.0) == 1.0);
    SUBCASE("published operating point") {
        const double dp = offresonant_leakage(two_pi * 200, two_pi * 160e3);
        CHECK(dp >= 0.002);
        CHECK(dp <= 0.003);
        CHECK(dp == doctest::Approx(2.5e-3).epsilon(1e-3));
    }
    SUBCASE("monotone decreasing in the detuning") {
        double prev = 1.0;
        for (double d = 1e3; d < 1e7; d *= 3) {
            const double dp = offresonant_leakage(two_pi * 200, d);
            CHECK(dp < prev);
            prev = dp;
        }
    }
    CHECK_THROWS_AS(offresonant_leakage(0.0, 1.0), std::domain_error);
}

TEST_CASE("budget assembly") {
    const auto b = make_budget(200 * bohr_radius, two_pi * 1e4, 210e-9,
                               two_pi * 160e3, 10e-9);
    CHECK(b.delta_vib == doctest::Approx(two_pi * 160e3)); // defaults to omega_rel
    CHECK(b.franck_condon > 0);
    CHECK(b.franck_condon_quad > b.franck_condon);
    CHECK(b.rabi == doctest::Approx(b.franck_condon * two_pi * 1e4));
    CHECK(b.fidelity_per_op <= 1.0);
    CHECK(b.leakage_per_pulse <= 1.0);
    const auto b2 = make_budget(200 * bohr_radius, two_pi * 1e4, 210e-9,
                                two_pi * 160e3, 10e-9, two_pi * 1e5);
    CHECK(b2.delta_vib == doctest::Approx(two_pi * 1e5));
}
