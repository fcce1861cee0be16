#pragma once

#include <numbers>

// Fundamental constants (SI) and unit helpers shared by every module.
// All internal quantities are SI; angular frequencies are rad/s. Conversions
// to user-facing units (nm, um, kHz, ms, Bohr radii) happen at the I/O
// boundary only.

namespace latmol::constants {

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr double two_pi = 2.0 * pi;

/// c — speed of light [m/s] (exact).
inline constexpr double speed_of_light = 299792458.0;

/// h — Planck constant [J·s] (exact, 2019 SI).
inline constexpr double planck = 6.62607015e-34;

/// ħ — reduced Planck constant [J·s].
inline constexpr double hbar = planck / two_pi;

/// u — atomic mass unit [kg].
inline constexpr double amu = 1.66053906660e-27;

/// a_B — Bohr radius [m].
inline constexpr double bohr_radius = 5.29177210903e-11;

/// Magnetic field conversion, gauss per tesla (dimensionless).
inline constexpr double gauss_per_tesla = 1.0e4;

} // namespace latmol::constants

namespace latmol::units {

inline constexpr double nm = 1.0e-9;
inline constexpr double um = 1.0e-6;
inline constexpr double ms = 1.0e-3;
inline constexpr double khz = 1.0e3;                       // ordinary Hz
inline constexpr double khz_angular = 2.0e3 * constants::pi; // rad/s per kHz
inline constexpr double mw_per_cm2 = 10.0;                 // W/m^2

} // namespace latmol::units
