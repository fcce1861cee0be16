#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "latmol/protocol.hpp"

using namespace latmol::protocol;

namespace {

ProtocolRegister random_free_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ProtocolRegister reg;
    for (int q = 0; q < 8; ++q) reg.amps[q] = Complex(g(rng), g(rng));
    reg.amps /= std::sqrt(reg.norm_squared());
    return reg;
}

} // namespace

TEST_CASE("pi pulse acts only on its channel") {
    const auto ch = create_channels();
    SUBCASE("off-channel state untouched") {
        const auto reg = basis_state(1, 0, 0);
        const auto out = apply_pi_pulse(reg, ch[0]);
        CHECK((out.amps - reg.amps).norm() == 0.0);
    }
    SUBCASE("two-pulse composite: |00> -> -|01> on the Cs-LiA pair") {
        // oracle: product of two 2x2 pi-pulse unitaries gives (-i)^2 = -1
        auto reg = basis_state(0, 0, 0);
        reg = apply_pi_pulse(reg, ch[0]);
        CHECK(reg.molecular_population(MolLevel::M) == doctest::Approx(1.0));
        reg = apply_pi_pulse(reg, ch[1]);
        CHECK(reg.at(MolLevel::None, 0, 1, 0).real() == doctest::Approx(-1.0));
        CHECK(std::abs(reg.at(MolLevel::None, 0, 1, 0).imag()) < 1e-15);
        CHECK(reg.molecular_population(MolLevel::M) < 1e-15);
    }
    SUBCASE("four pulses on one channel return the state") {
        auto reg = basis_state(0, 0, 0);
        for (int i = 0; i < 4; ++i) reg = apply_pi_pulse(reg, ch[0]);
        CHECK(std::abs(reg.at(MolLevel::None, 0, 0, 0) - Complex(1, 0)) < 1e-14);
    }
    SUBCASE("crossing an unfinished composite is rejected") {
        auto reg = apply_pi_pulse(basis_state(0, 0, 0), ch[0]); // occupies |M>
        CHECK_THROWS_AS(apply_pi_pulse(reg, swap_channels()[0]), std::domain_error);
    }
    SUBCASE("rf channels always involve a molecular level") {
        PulseChannel bad = ch[0];
        bad.mol = MolLevel::None;
        CHECK_THROWS_AS(apply_pi_pulse(basis_state(0, 0, 0), bad), std::domain_error);
    }
}

TEST_CASE("ideal protocol reproduces the two-step state evolution") {
    auto reg = protocol_input();
    reg = entangle_step(reg, EntangleStep::Create);

    const double s = 1.0 / std::sqrt(2.0);
    SUBCASE("step one: (-|01> + |10>) (x) |0>") {
        CHECK(std::abs(reg.at(MolLevel::None, 0, 1, 0) - Complex(-s, 0)) < 1e-12);
        CHECK(std::abs(reg.at(MolLevel::None, 1, 0, 0) - Complex(s, 0)) < 1e-12);
        for (int q = 0; q < 8; ++q)
            if (q != 2 && q != 4) CHECK(std::abs(reg.amps[q]) < 1e-12);
        CHECK(reg.molecular_population(MolLevel::M) < 1e-12);
        CHECK(reg.molecular_population(MolLevel::MPrime) < 1e-12);
    }

    reg = entangle_step(reg, EntangleStep::Swap);
    SUBCASE("step two: -|010> - |001>, messenger factored out") {
        CHECK(std::abs(reg.at(MolLevel::None, 0, 1, 0) - Complex(-s, 0)) < 1e-12);
        CHECK(std::abs(reg.at(MolLevel::None, 0, 0, 1) - Complex(-s, 0)) < 1e-12);
        for (int q = 0; q < 8; ++q)
            if (q != 2 && q != 1) CHECK(std::abs(reg.amps[q]) < 1e-12);
        CHECK(state_fidelity(reg, protocol_target()) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("entanglement diagnostics after the swap") {
        CHECK(concurrence(reg, Subsystem::LiA, Subsystem::LiB) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(concurrence(reg, Subsystem::Cs, Subsystem::LiA) ==
              doctest::Approx(0.0).epsilon(1e-10));
        CHECK(purity(reg, Subsystem::Cs) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("entangle step preconditions") {
    SUBCASE("create requires both qubits in |0>") {
        CHECK_THROWS_AS(entangle_step(basis_state(0, 1, 0), EntangleStep::Create),
                        std::domain_error);
    }
    SUBCASE("swap requires the entangled-pair subspace") {
        CHECK_THROWS_AS(entangle_step(basis_state(0, 0, 0), EntangleStep::Swap),
                        std::domain_error);
    }
    SUBCASE("error budgets outside their ranges are rejected") {
        CHECK_THROWS_AS(entangle_step(protocol_input(), EntangleStep::Create,
                                      GateErrors{1.0, 2.0}),
                        std::domain_error);
        CHECK_THROWS_AS(entangle_step(protocol_input(), EntangleStep::Create,
                                      GateErrors{0.0, 0.0}),
                        std::domain_error);
        CHECK_THROWS_AS(single_qubit_rotation(protocol_input(), Subsystem::LiA, 1.0,
                                              0.0, GateErrors{-0.5, 0.0}),
                        std::domain_error);
    }
}

TEST_CASE("unitarity of the ideal operations") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto reg = random_free_state(rng);
        SUBCASE("") {}
        auto a = apply_pi_pulse(reg, create_channels()[0]);
        CHECK(a.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
        auto b = single_qubit_rotation(reg, Subsystem::LiA, 1.1, 0.7);
        CHECK(b.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("inner products are preserved between orthogonal inputs") {
        for (int trial = 0; trial < 100; ++trial) {
            auto u = random_free_state(rng);
            auto v = random_free_state(rng);
            // orthogonalize v against u
            const Complex overlap = u.amps.dot(v.amps);
            v.amps -= overlap * u.amps;
            v.amps /= std::sqrt(v.norm_squared());
            const auto ch = create_channels()[0];
            const auto u2 = apply_pi_pulse(u, ch);
            const auto v2 = apply_pi_pulse(v, ch);
            CHECK(std::abs(u2.amps.dot(v2.amps)) < 1e-10);
        }
    }
}

TEST_CASE("single qubit rotations") {
    SUBCASE("zero angle is the identity") {
        const auto reg = basis_state(1, 0, 1);
        const auto out = single_qubit_rotation(reg, Subsystem::LiA, 0.0, 0.3);
        CHECK((out.amps - reg.amps).norm() < 1e-15);
    }
    SUBCASE("pi flip about x sends |0> to |1> up to phase") {
        const auto out = single_qubit_rotation(basis_state(0, 0, 0), Subsystem::LiA,
                                               3.14159265358979323846, 0.0);
        CHECK(std::norm(out.at(MolLevel::None, 0, 1, 0)) == doctest::Approx(1.0));
    }
    SUBCASE("rotations about one axis compose additively") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> ang(0.0, 3.0);
        for (int i = 0; i < 50; ++i) {
            const double t1 = ang(rng), t2 = ang(rng), phi = ang(rng);
            auto reg = random_free_state(rng);
            auto a = single_qubit_rotation(
                single_qubit_rotation(reg, Subsystem::LiB, t1, phi), Subsystem::LiB,
                t2, phi);
            auto b = single_qubit_rotation(reg, Subsystem::LiB, t1 + t2, phi);
            CHECK((a.amps - b.amps).norm() < 1e-12);
        }
    }
    SUBCASE("matrix-product oracle on the Bloch unitary") {
        // R(t2, phi) R(t1, phi) == R(t1 + t2, phi) as 2x2 matrices
        auto rot = [](double t, double phi) {
            Eigen::Matrix2cd m;
            const Complex mi(0, -1);
            m << std::cos(t / 2), mi * std::sin(t / 2) * std::exp(Complex(0, -phi)),
                mi * std::sin(t / 2) * std::exp(Complex(0, phi)), std::cos(t / 2);
            return m;
        };
        const Eigen::Matrix2cd lhs = rot(0.9, 0.4) * rot(0.5, 0.4);
        const Eigen::Matrix2cd rhs = rot(1.4, 0.4);
        CHECK((lhs - rhs).norm() < 1e-14);
    }
    SUBCASE("messenger rotations are not part of the molecular gate set") {
        CHECK_THROWS_AS(single_qubit_rotation(basis_state(0, 0, 0), Subsystem::Cs,
                                              1.0, 0.0),
                        std::domain_error);
    }
}

TEST_CASE("concurrence and purity diagnostics") {
    SUBCASE("product state has no entanglement") {
        CHECK(concurrence(basis_state(0, 1, 0), Subsystem::LiA, Subsystem::LiB) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("Bell pair has unit concurrence") {
        ProtocolRegister reg;
        const double s = 1.0 / std::sqrt(2.0);
        reg.at(MolLevel::None, 0, 1, 0) = s;
        reg.at(MolLevel::None, 0, 0, 1) = s;
        CHECK(concurrence(reg, Subsystem::LiA, Subsystem::LiB) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("occupied molecular level blocks the diagnostic") {
        const auto reg = apply_pi_pulse(basis_state(0, 0, 0), create_channels()[0]);
        CHECK_THROWS_AS(concurrence(reg, Subsystem::LiA, Subsystem::LiB),
                        std::domain_error);
    }
}

TEST_CASE("swap transfers entanglement exactly") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(0.1, 0.9);
    for (int i = 0; i < 40; ++i) {
        // arbitrary entangled Cs-LiA pair, LiB in |0>
        const double p = unif(rng);
        const double phase = 6.0 * unif(rng);
        ProtocolRegister reg;
        reg.at(MolLevel::None, 0, 1, 0) = std::sqrt(p);
        reg.at(MolLevel::None, 1, 0, 0) =
            std::sqrt(1 - p) * std::exp(Complex(0, phase));
        const double before = concurrence(reg, Subsystem::Cs, Subsystem::LiA);
        const auto out = entangle_step(reg, EntangleStep::Swap);
        const double after = concurrence(out, Subsystem::LiA, Subsystem::LiB);
        CHECK(after == doctest::Approx(before).epsilon(1e-10));
        CHECK(purity(out, Subsystem::Cs) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("error injection bookkeeping") {
    SUBCASE("per-pulse transmission shows up as norm loss") {
        const GateErrors err{0.99, 0.002};
        auto reg = entangle_step(protocol_input(), EntangleStep::Create, err);
        const double per_pulse = 0.99 * (1.0 - 0.002);
        CHECK(reg.norm_squared() == doctest::Approx(per_pulse * per_pulse).epsilon(1e-12));
    }
    SUBCASE("transport loss scales the whole register") {
        auto reg = apply_transport_loss(protocol_input(), 0.25);
        CHECK(reg.norm_squared() == doctest::Approx(0.75).epsilon(1e-12));
        CHECK_THROWS_AS(apply_transport_loss(protocol_input(), 1.5), std::domain_error);
    }
}

TEST_CASE("error-injected full run") {
    SUBCASE("ideal budgets give unit fidelity with zero spread") {
        const std::vector<PulseBudget> ideal(4, PulseBudget{1.0, 0.0});
        const auto rep = error_injected_run(ideal, 0.0, 200, 7);
        CHECK(rep.multiplicative == doctest::Approx(1.0));
        CHECK(rep.monte_carlo == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.mc_sigma < 1e-6); // pure floating-point summation noise
    }
    SUBCASE("published budgets compose to 97%") {
        const std::vector<PulseBudget> buds(4, PulseBudget{0.995, 0.0});
        const auto rep = error_injected_run(buds, 0.01, 10000, 12345, 2);
        CHECK(rep.multiplicative == doctest::Approx(0.9703).epsilon(5e-3));
        CHECK(std::abs(rep.monte_carlo - rep.multiplicative) <= 2 * rep.mc_sigma);
    }
    SUBCASE("budget list must cover the four transitions") {
        CHECK_THROWS_AS(error_injected_run({PulseBudget{}}, 0.0, 10, 1),
                        std::domain_error);
    }
    SUBCASE("deterministic for a fixed seed, any job count") {
        const std::vector<PulseBudget> buds(4, PulseBudget{0.997, 0.001});
        const auto a = error_injected_run(buds, 0.02, 4000, 99, 1);
        const auto b = error_injected_run(buds, 0.02, 4000, 99, 3);
        CHECK(a.monte_carlo == b.monte_carlo);
        CHECK(a.mc_sigma == b.mc_sigma);
    }
}

TEST_CASE("ket expansion labels") {
    auto reg = apply_pi_pulse(basis_state(0, 0, 1), create_channels()[0]);
    const auto terms = ket_expansion(reg);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].label == "|M(Cs-LiA) LiB:1>");
    CHECK(std::abs(terms[0].amplitude - Complex(0, -1)) < 1e-14);
}
