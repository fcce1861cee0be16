#include "latmol/coupling.hpp"

#include <cmath>
#include <stdexcept>

#include "latmol/constants.hpp"
#include "latmol/integrate.hpp"

namespace latmol::coupling {

using constants::hbar;
using constants::pi;

TwoAtomSystem reduce_system(double m1, double omega1, double m2, double omega2) {
    if (m1 <= 0 || m2 <= 0 || omega1 <= 0 || omega2 <= 0)
        throw std::domain_error("reduce_system: masses and frequencies must be positive");
    TwoAtomSystem s;
    s.m1 = m1;
    s.m2 = m2;
    s.omega1 = omega1;
    s.omega2 = omega2;
    s.total_mass = m1 + m2;
    s.reduced_mass = m1 * m2 / s.total_mass;
    s.omega_com = std::sqrt((m1 * omega1 * omega1 + m2 * omega2 * omega2) / s.total_mass);
    s.omega_rel = omega1 * omega2 / s.omega_com;
    s.r0 = oscillator_length(s.reduced_mass, s.omega_rel);
    return s;
}

double oscillator_length(double mass, double omega) {
    if (mass <= 0 || omega <= 0)
        throw std::domain_error("oscillator_length: mass and omega must be positive");
    return std::sqrt(hbar / (mass * omega));
}

namespace {

void check_halo_regime(double a, double r0) {
    if (r0 <= 0) throw std::domain_error("franck_condon: r0 must be positive");
    if (a <= 0) throw std::domain_error("franck_condon: scattering length must be positive");
    if (a >= 0.5 * r0)
        throw std::domain_error(
            "franck_condon: a >= r0/2, outside the halo-molecule regime");
}

} // namespace

double franck_condon_closed_form(double a, double r0) {
    check_halo_regime(a, r0);
    return franck_condon_prefactor * std::pow(a / r0, 1.5);
}

double franck_condon_quadrature(double a, double r0, double abs_tol) {
    check_halo_regime(a, r0);
    // psi_a = (pi r0^2)^{-3/4} exp(-r^2 / 2 r0^2)
    // psi_m = (2 pi a)^{-1/2} exp(-r/a) / r
    // The 4 pi r^2 measure cancels the 1/r: integrand ~ r near the origin.
    const double norm = 4.0 * pi * std::pow(pi * r0 * r0, -0.75) /
                        std::sqrt(2.0 * pi * a);
    auto f = [&](double r) {
        return norm * r * std::exp(-r * r / (2.0 * r0 * r0)) * std::exp(-r / a);
    };
    // the halo state concentrates the integrand at r ~ a << 20 r0
    return integrate_adaptive_graded(f, 0.0, 20.0 * r0, a, abs_tol);
}

double pair_state_norm(double r0, double abs_tol) {
    const double n = std::pow(pi * r0 * r0, -1.5);
    auto f = [&](double r) {
        return 4.0 * pi * r * r * n * std::exp(-r * r / (r0 * r0));
    };
    return integrate_adaptive_graded(f, 0.0, 20.0 * r0, r0, abs_tol);
}

double molecular_state_norm(double a, double r0, double abs_tol) {
    auto f = [&](double r) { return (2.0 / a) * std::exp(-2.0 * r / a); };
    return integrate_adaptive_graded(f, 0.0, 20.0 * r0, a, abs_tol);
}

RabiPulse rabi_and_time(double franck_condon, double omega0) {
    if (franck_condon <= 0 || franck_condon > 1)
        throw std::domain_error("rabi_and_time: Franck-Condon factor must be in (0, 1]");
    if (omega0 <= 0)
        throw std::domain_error("rabi_and_time: Omega0 must be positive");
    RabiPulse p;
    p.rabi = franck_condon * omega0;
    p.pair_time = pi / p.rabi;
    return p;
}

double overlap_fidelity(double offset, double r0) {
    if (r0 <= 0) throw std::domain_error("overlap_fidelity: r0 must be positive");
    const double x = offset / r0;
    return std::exp(-x * x);
}

double overlap_fidelity_3axis(double offset, double r0) {
    const double f = overlap_fidelity(offset, r0);
    return f * f * f;
}

double offresonant_leakage(double rabi, double delta_vib) {
    if (rabi <= 0) throw std::domain_error("offresonant_leakage: Omega must be positive");
    const double x = delta_vib / (2.0 * rabi);
    return 1.0 / std::sqrt(1.0 + x * x);
}

CouplingBudget make_budget(double a, double omega0, double r0, double omega_rel,
                           double offset, double delta_vib) {
    CouplingBudget b;
    b.scattering_length = a;
    b.omega0 = omega0;
    b.omega_rel = omega_rel;
    b.r0 = r0;
    b.franck_condon = franck_condon_closed_form(a, r0);
    b.franck_condon_quad = franck_condon_quadrature(a, r0);
    const RabiPulse p = rabi_and_time(b.franck_condon, omega0);
    b.rabi = p.rabi;
    b.pair_time = p.pair_time;
    b.offset = offset;
    b.fidelity_per_op = overlap_fidelity(offset, r0);
    b.fidelity_per_op_3axis = overlap_fidelity_3axis(offset, r0);
    b.delta_vib = delta_vib > 0 ? delta_vib : omega_rel;
    if (b.delta_vib <= 0)
        throw std::domain_error("make_budget: need delta_vib or omega_rel > 0");
    b.leakage_per_pulse = offresonant_leakage(b.rabi, b.delta_vib);
    return b;
}

} // namespace latmol::coupling
