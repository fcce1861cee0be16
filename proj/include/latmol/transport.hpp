#pragma once

#include <Eigen/Core>

namespace latmol::transport {

/// Messenger transport description. The reduced velocity nu = v k / (pi omega)
/// is the dimensionless combination the excitation model depends on.
struct TransportParams {
    int n_sites = 0;            // N, sites traversed
    double lattice_constant = 0; // d, m
    double k = 0;               // pi / d, 1/m
    double x0 = 0;              // messenger oscillator length, m
    double omega = 0;           // messenger trap frequency along motion, rad/s
    double u_star = 0;          // peak wrong-lattice depth seen in motion, J
    double cross_talk = 0;      // alpha, informational
    double velocity = 0;        // v, m/s
    double nu = 0;              // reduced velocity, dimensionless
};

double reduced_velocity(double v, double k, double omega);
double velocity_from_reduced(double nu, double k, double omega);

/// Default operating point: d = 1.5 um, x0 = 82 nm, omega = hbar/(m_Cs x0^2),
/// U* = alpha * hbar * 2pi * 760 kHz with alpha = 0.16.
TransportParams make_params(int n_sites, double velocity = 0);
TransportParams make_params_nu(int n_sites, double nu);

/// Depth factor U* / (hbar omega) as printed.
double depth_factor_raw(const TransportParams& p);

/// One-point calibration fixing the absolute scale of the excitation
/// probability: with the default parameters, p1 = 0.01 at nu = 0.03 and
/// N = 1. The scale multiplies the raw depth factor everywhere.
double calibration_scale();

/// Probability of leaving the motional ground state after moving N sites:
/// p1 = N (pi/2) nu g (k x0)^2 exp(-(k x0)^2), g the calibrated depth factor.
/// Capped at 1.
double transport_error(const TransportParams& p);

/// Largest velocity keeping 1 - p1 >= fidelity_target over N sites.
/// Returns +inf when the excitation channel is absent entirely.
double max_velocity(int n_sites, double fidelity_target, const TransportParams& base);

/// Total pairwise-entanglement time (5 + 0.4 N^2) ms, in seconds.
double entangle_time(int n_sites);

/// Qubits reachable within N sites on the triangular lattice: (4 pi/sqrt 3) N^2.
double qubit_reach(int n_sites);

/// Coefficient of N_q in the entangle time expressed per qubit count,
/// tau_e = (5 ms) + coeff * N_q; equals 0.4 ms * sqrt(3)/(4 pi).
double entangle_time_per_qubit_coefficient();

/// Sites traversed in a straight-line translation between integer triangular
/// coordinates (i, j) -> i*a1 + j*a2, a1 = d(1,0), a2 = d(1/2, sqrt3/2);
/// the Euclidean distance rounded up to whole lattice constants.
int site_distance(const Eigen::Vector2i& site_a, const Eigen::Vector2i& site_b);

struct TimingRow {
    int n_sites = 0;
    double velocity = 0;      // max_velocity at 99% fidelity, m/s
    double p1 = 0;            // excitation at that velocity
    double entangle_time = 0; // s
    double qubit_reach = 0;
    double gate_time = 0;      // fixed atom-molecule budget, s
    double transport_time = 0; // N d / v, s
};

TimingRow timing_row(int n_sites, double fidelity_target = 0.99);

} // namespace latmol::transport
