#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "latmol/species.hpp"

namespace latmol::lattice {

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Three-beam triangular lattice of one color. The intersection angle is
/// tuned so that the in-plane wavevector magnitude, and hence the lattice
/// constant, is independent of the wavelength.
struct LatticeGeometry {
    double lattice_constant = 0;   // d, m
    double wavelength = 0;         // m
    double intersection_angle = 0; // theta = asin(2*lambda/(3*d)), rad
    double k_perp = 0;             // |k| sin(theta) = 4*pi/(3*d), 1/m
    std::array<Eigen::Vector2d, 3> directions{}; // unit vectors at 120/240/360 deg
};

/// Throws ConfigError when 2*lambda/(3*d) > 1 (no propagating solution).
LatticeGeometry make_geometry(double wavelength, double lattice_constant);

/// Primitive vectors of the intensity pattern's triangular Bravais lattice,
/// both of length d.
std::array<Eigen::Vector2d, 2> primitive_vectors(const LatticeGeometry& g);

struct LatticeConfig {
    LatticeGeometry geometry;
    double peak_intensity = 0;        // I_m, W/m^2
    std::array<double, 3> phases{};   // phi_j, rad, stored mod 2pi
};

LatticeConfig make_config(const LatticeGeometry& g, double peak_intensity,
                          const std::array<double, 3>& phases = {0, 0, 0});

/// Relative intensity 6 - sum_j cos^2(sqrt(3) k_perp r_j / 2 + phi_j) with
/// r_j the projection of (x, y) onto the j-th direction. Bounded in [3, 6]
/// for every position and phase triple. Physical intensity is
/// I_m * pattern / 6.
template <typename Scalar>
Scalar pattern_value(double k_perp, const std::array<Eigen::Vector2d, 3>& dirs,
                     const std::array<double, 3>& phases, Scalar x, Scalar y) {
    using std::cos;
    Scalar sum{};
    const double q = std::sqrt(3.0) * k_perp / 2.0;
    for (int j = 0; j < 3; ++j) {
        const Scalar rj = x * dirs[j].x() + y * dirs[j].y();
        const Scalar c = cos(q * rj + phases[j]);
        sum += c * c;
    }
    return Scalar(6) - sum;
}

double intensity_pattern(const LatticeConfig& cfg, double x, double y);

/// Analytic gradient of the relative pattern, units 1/m.
Eigen::Vector2d pattern_gradient(const LatticeConfig& cfg, double x, double y);

/// Largest |gradient| of the relative pattern over one unit cell
/// (phase-independent; sampled on a refined grid).
double max_pattern_gradient(const LatticeConfig& cfg);

/// In-plane displacement t such that shifting the pattern by t equals
/// applying the phase increments dphi, verified by sampling. Throws
/// std::domain_error when the triple deforms the pattern instead of
/// translating it.
Eigen::Vector2d translation_for_phases(const LatticeConfig& cfg,
                                       const std::array<double, 3>& dphi);

// ---------------------------------------------------------------------------
// Single-atom energetics (far-detuned two-level model)
// ---------------------------------------------------------------------------

/// Light shift V = (hbar*Gamma/8) * (I/I_sat) / (Delta/Gamma) [J].
/// Valid far from resonance; throws std::domain_error when |Delta| <= 10*Gamma.
double dipole_potential(const TransitionLine& line, double intensity, double delta);

/// Off-resonant photon scattering rate (V/hbar) * (Gamma/|Delta|) [1/s].
double scattering_rate(const TransitionLine& line, double v_depth, double delta);

/// Recoil-like energy scale hbar^2 pi^2 / (2 m d^2) for site spacing d [J].
double site_recoil_energy(double mass, double d);

/// 1D tight-binding tunneling rate J/hbar with
/// J = (4/sqrt(pi)) E_R (V/E_R)^{3/4} exp(-2 sqrt(V/E_R)).
/// The asymptotic form is unreliable below V = E_R; see
/// tunneling_estimate_valid.
double tunneling_rate(double v_depth, double mass, double d);
bool tunneling_estimate_valid(double v_depth, double mass, double d);

/// Harmonic frequency at the bottom of a 1D standing wave V0 sin^2(k z).
double standing_wave_trap_frequency(double v_depth, double k, double mass);

/// Harmonic frequency at a minimum of the triangular pattern whose full
/// modulation depth (pattern range 3..6) is v_modulation.
double triangular_trap_frequency(double v_modulation, double k_perp, double mass);

// ---------------------------------------------------------------------------
// Two-color feasibility (Li on L1, Cs on L2)
// ---------------------------------------------------------------------------

struct BichromaticLattice {
    LatticeConfig l1; // shorter wavelength, confines Li
    LatticeConfig l2; // longer wavelength, confines Cs
    Species li;
    Species cs;
};

/// Default operating geometry: d = 1.5 um, lambda1 = 681 nm, lambda2 = 1064 nm.
BichromaticLattice make_bichromatic(double d = 1.5e-6,
                                    double lambda1 = 681e-9,
                                    double lambda2 = 1064e-9);

/// Cross-talk ratio for one species: (max |grad V| from the other lattice) /
/// (max |grad V| from its designated lattice), gradients from the analytic
/// pattern derivative.
double max_force_ratio(const BichromaticLattice& bl, double i1, double i2,
                       const Species& sp);

struct FeasibilityRequirements {
    double decoherence_ceiling = 2.0; // 1/s, applies to scattering and tunneling
    double alpha_max = 0.16;          // cross-talk level used in summaries
};

struct FeasibilityPoint {
    double i1 = 0; // W/m^2
    double i2 = 0; // W/m^2
    double cross_talk = 0; // alpha = max(alpha_Li, alpha_Cs)
    bool independent_control_ok = false;
    bool li_tunneling_ok = false;
    bool cs_tunneling_ok = false;
    bool li_scattering_ok = false;
    bool cs_scattering_ok = false;
    bool feasible() const {
        return independent_control_ok && li_tunneling_ok && cs_tunneling_ok &&
               li_scattering_ok && cs_scattering_ok;
    }
};

struct IntensityGrid {
    double i1_min = 0, i1_max = 0; // W/m^2
    double i2_min = 0, i2_max = 0;
    int n1 = 0, n2 = 0;
    bool log_spacing = true;
};

std::vector<double> grid_axis(double lo, double hi, int n, bool log_spacing);

/// Evaluates all five flags on the grid, row-major in (i1, i2) order.
/// Deterministic for any job count.
std::vector<FeasibilityPoint> feasibility_region(const BichromaticLattice& bl,
                                                 const IntensityGrid& grid,
                                                 const FeasibilityRequirements& req,
                                                 int jobs = 1);

FeasibilityPoint evaluate_point(const BichromaticLattice& bl, double i1, double i2,
                                const FeasibilityRequirements& req,
                                double max_grad); // max_grad from max_pattern_gradient

struct FeasibilitySummary {
    std::size_t n_points = 0;
    std::size_t n_feasible = 0;
    double feasible_fraction = 0;
    double ratio_min = 0;       // extremal feasible I1/I2
    double ratio_max = 0;
    double best_ratio = 0;      // feasible ratio with the smallest cross-talk
    double best_cross_talk = 0;
    bool best_within_alpha_max = false;
};

FeasibilitySummary summarize_region(const std::vector<FeasibilityPoint>& pts,
                                    const FeasibilityRequirements& req);

void write_feasibility_csv(std::ostream& os, const std::vector<FeasibilityPoint>& pts);

/// Pattern samples for plotting: CSV `x_um,y_um,intensity_rel`, row-major.
void write_pattern_csv(std::ostream& os, const LatticeConfig& cfg,
                       double extent, int samples_per_axis);

} // namespace latmol::lattice
