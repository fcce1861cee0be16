#include "latmol/species.hpp"

#include "latmol/config.hpp"
#include "latmol/constants.hpp"
#include "latmol/errors.hpp"

namespace latmol {

using constants::speed_of_light;
using constants::two_pi;

TransitionLine make_line(const std::string& label, double wavelength,
                         double linewidth, double isat) {
    if (wavelength <= 0 || linewidth <= 0 || isat <= 0)
        throw ConfigError("transition line '" + label +
                          "': wavelength, linewidth and isat must be positive");
    TransitionLine l;
    l.label = label;
    l.wavelength = wavelength;
    l.omega0 = two_pi * speed_of_light / wavelength;
    l.linewidth = linewidth;
    l.isat = isat;
    return l;
}

const TransitionLine& Species::line(const std::string& label) const {
    for (const auto& l : lines)
        if (l.label == label) return l;
    throw ConfigError("species " + name + " has no line '" + label + "'");
}

const TransitionLine& Species::dominant_line() const {
    return line(fine_structure_pair.first);
}

namespace {

double override_or(const std::map<std::string, double>& ov,
                   const std::string& key, double fallback) {
    auto it = ov.find(to_lower(key));
    return it == ov.end() ? fallback : it->second;
}

Species build_species(const std::string& name, double mass_amu,
                      const std::string& d1_label, double d1_nm, double d1_gamma_hz, double d1_isat,
                      const std::string& d2_label, double d2_nm, double d2_gamma_hz, double d2_isat,
                      const std::map<std::string, double>& ov) {
    using namespace units;
    Species s;
    s.name = name;
    s.mass = override_or(ov, name + ".mass_amu", mass_amu) * constants::amu;
    auto line_of = [&](const std::string& label, double lambda_nm,
                       double gamma_hz, double isat) {
        double g = override_or(ov, name + "." + label + ".gamma_hz", gamma_hz);
        double i = override_or(ov, name + "." + label + ".isat_w_m2", isat);
        return make_line(label, lambda_nm * nm, two_pi * g, i);
    };
    s.lines = {line_of(d1_label, d1_nm, d1_gamma_hz, d1_isat),
               line_of(d2_label, d2_nm, d2_gamma_hz, d2_isat)};
    s.fine_structure_pair = {d2_label, d1_label};
    return s;
}

} // namespace

Species lookup_species(const std::string& name,
                       const std::map<std::string, double>& overrides) {
    // Line data: standard alkali tables (wavelengths in vacuum nm, natural
    // linewidths Gamma/2pi in Hz, saturation intensities W/m^2 for the
    // cycling transition).
    if (name == "Li6") {
        Species s = build_species("Li6", 6.0151228,
                                  "D1", 670.992421, 5.8724e6, 75.9,
                                  "D2", 670.977338, 5.8724e6, 25.4,
                                  overrides);
        s.qubit_state_labels = {"|F=1/2,mF=+1/2>", "|F=3/2,mF=-1/2>"};
        return s;
    }
    if (name == "Cs133") {
        Species s = build_species("Cs133", 132.905451931,
                                  "D1", 894.59295986, 4.5612e6, 24.981,
                                  "D2", 852.34727582, 5.2227e6, 11.023,
                                  overrides);
        s.qubit_state_labels = {"|F=3,mF=0>", "|F=4,mF=0>"};
        return s;
    }
    throw ConfigError("unknown species '" + name + "' (expected Li6 or Cs133)");
}

double detuning(const TransitionLine& line, double laser_wavelength) {
    if (laser_wavelength <= 0)
        throw ConfigError("laser wavelength must be positive");
    return two_pi * speed_of_light / laser_wavelength - line.omega0;
}

} // namespace latmol
