#pragma once

#include <map>
#include <string>
#include <vector>

namespace latmol {

/// One atomic transition line. The angular frequency is derived from the
/// wavelength on construction, so the two can never drift apart.
struct TransitionLine {
    std::string label;        // "D1", "D2"
    double wavelength = 0;    // m
    double omega0 = 0;        // rad/s, = 2*pi*c/wavelength
    double linewidth = 0;     // Gamma, rad/s
    double isat = 0;          // saturation intensity, W/m^2
};

TransitionLine make_line(const std::string& label, double wavelength,
                         double linewidth, double isat);

struct Species {
    std::string name;
    double mass = 0; // kg
    std::vector<TransitionLine> lines;
    std::pair<std::string, std::string> qubit_state_labels; // {|0>, |1>}
    // Excited fine-structure components used for the vector light shift:
    // {P_3/2 line (D2), P_1/2 line (D1)}.
    std::pair<std::string, std::string> fine_structure_pair;

    const TransitionLine& line(const std::string& label) const;
    /// Strongest line, the one quoted as "the" transition of the atom (D2).
    const TransitionLine& dominant_line() const;
};

/// name must be "Li6" or "Cs133"; throws ConfigError otherwise.
/// Linewidths and saturation intensities are compiled-in values from the
/// standard alkali data tables; `overrides` may replace them with keys
///   <species>.<line>.gamma_hz   natural linewidth Gamma/2pi in Hz
///   <species>.<line>.isat_w_m2  saturation intensity in W/m^2
///   <species>.mass_amu          atomic mass in amu
Species lookup_species(const std::string& name,
                       const std::map<std::string, double>& overrides = {});

/// Laser detuning Delta = omega_laser - omega0 [rad/s]; positive = blue.
double detuning(const TransitionLine& line, double laser_wavelength);

} // namespace latmol
