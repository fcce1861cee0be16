#include "latmol/transport.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "latmol/constants.hpp"
#include "latmol/species.hpp"

namespace latmol::transport {

using constants::hbar;
using constants::pi;
using constants::two_pi;

namespace {

constexpr double default_spacing = 1.5e-6;  // m
constexpr double default_x0 = 82e-9;        // m
constexpr double default_alpha = 0.16;
constexpr double default_ustar_hz = 760e3;  // U* = alpha * hbar * 2pi * 760 kHz

double default_omega() {
    static const double m_cs = lookup_species("Cs133").mass;
    return hbar / (m_cs * default_x0 * default_x0);
}

double excitation_form_factor(double k, double x0) {
    const double kx = k * x0;
    return kx * kx * std::exp(-kx * kx);
}

} // namespace

double reduced_velocity(double v, double k, double omega) {
    return v * k / (pi * omega);
}

double velocity_from_reduced(double nu, double k, double omega) {
    return nu * pi * omega / k;
}

TransportParams make_params(int n_sites, double velocity) {
    if (n_sites < 0) throw std::domain_error("transport: N must be >= 0");
    TransportParams p;
    p.n_sites = n_sites;
    p.lattice_constant = default_spacing;
    p.k = pi / default_spacing;
    p.x0 = default_x0;
    p.omega = default_omega();
    p.cross_talk = default_alpha;
    p.u_star = default_alpha * hbar * two_pi * default_ustar_hz;
    p.velocity = velocity;
    p.nu = reduced_velocity(velocity, p.k, p.omega);
    return p;
}

TransportParams make_params_nu(int n_sites, double nu) {
    TransportParams p = make_params(n_sites, 0.0);
    p.nu = nu;
    p.velocity = velocity_from_reduced(nu, p.k, p.omega);
    return p;
}

double depth_factor_raw(const TransportParams& p) {
    return p.u_star / (hbar * p.omega);
}

double calibration_scale() {
    // Anchor: p1 = 0.01 at nu = 0.03, N = 1 with the default parameters.
    static const double scale = [] {
        const TransportParams ref = make_params_nu(1, 0.03);
        const double g_needed =
            0.01 / ((pi / 2.0) * 0.03 * excitation_form_factor(ref.k, ref.x0));
        return g_needed / depth_factor_raw(ref);
    }();
    return scale;
}

double transport_error(const TransportParams& p) {
    if (p.nu < 0) throw std::domain_error("transport_error: nu must be >= 0");
    const double g = calibration_scale() * depth_factor_raw(p);
    const double p1 = p.n_sites * (pi / 2.0) * p.nu * g *
                      excitation_form_factor(p.k, p.x0);
    return std::min(p1, 1.0);
}

double max_velocity(int n_sites, double fidelity_target, const TransportParams& base) {
    if (fidelity_target <= 0 || fidelity_target >= 1)
        throw std::domain_error("max_velocity: fidelity target must be in (0, 1)");
    if (n_sites <= 0) throw std::domain_error("max_velocity: N must be >= 1");
    const double g = calibration_scale() * depth_factor_raw(base);
    const double slope =
        n_sites * (pi / 2.0) * g * excitation_form_factor(base.k, base.x0);
    if (slope <= 0) return std::numeric_limits<double>::infinity();
    const double nu = (1.0 - fidelity_target) / slope;
    return velocity_from_reduced(nu, base.k, base.omega);
}

double entangle_time(int n_sites) {
    if (n_sites < 0) throw std::domain_error("entangle_time: N must be >= 0");
    return (5.0 + 0.4 * double(n_sites) * double(n_sites)) * 1e-3;
}

double qubit_reach(int n_sites) {
    if (n_sites < 0) throw std::domain_error("qubit_reach: N must be >= 0");
    return (4.0 * pi / std::sqrt(3.0)) * double(n_sites) * double(n_sites);
}

double entangle_time_per_qubit_coefficient() {
    return 0.4e-3 * std::sqrt(3.0) / (4.0 * pi);
}

int site_distance(const Eigen::Vector2i& site_a, const Eigen::Vector2i& site_b) {
    const Eigen::Vector2i dij = site_b - site_a;
    const double root3_2 = std::sqrt(3.0) / 2.0;
    const Eigen::Vector2d r(dij.x() + 0.5 * dij.y(), root3_2 * dij.y());
    const double dist = r.norm(); // in lattice constants
    const int n = int(std::ceil(dist - 1e-12));
    return n < 0 ? 0 : n;
}

TimingRow timing_row(int n_sites, double fidelity_target) {
    TimingRow row;
    row.n_sites = n_sites;
    row.entangle_time = entangle_time(n_sites);
    row.qubit_reach = qubit_reach(n_sites);
    row.gate_time = 5e-3;
    if (n_sites > 0) {
        const TransportParams base = make_params(n_sites, 0.0);
        row.velocity = max_velocity(n_sites, fidelity_target, base);
        TransportParams at = base;
        at.velocity = row.velocity;
        at.nu = reduced_velocity(row.velocity, base.k, base.omega);
        row.p1 = transport_error(at);
        row.transport_time = n_sites * base.lattice_constant / row.velocity;
    }
    return row;
}

} // namespace latmol::transport
