#include "latmol/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <thread>

#include <Eigen/Dense>

#include "latmol/constants.hpp"
#include "latmol/errors.hpp"

namespace latmol::lattice {

using constants::hbar;
using constants::pi;
using constants::two_pi;

namespace {

double wrap_two_pi(double phi) {
    double w = std::fmod(phi, two_pi);
    if (w < 0) w += two_pi;
    return w;
}

void format_double(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
}

} // namespace

LatticeGeometry make_geometry(double wavelength, double lattice_constant) {
    if (wavelength <= 0 || lattice_constant <= 0)
        throw ConfigError("lattice geometry: wavelength and spacing must be positive");
    const double s = 2.0 * wavelength / (3.0 * lattice_constant);
    if (s > 1.0)
        throw ConfigError("lattice geometry: 2*lambda/(3*d) > 1, beams cannot intersect");
    LatticeGeometry g;
    g.lattice_constant = lattice_constant;
    g.wavelength = wavelength;
    g.intersection_angle = std::asin(s);
    g.k_perp = (two_pi / wavelength) * s; // = 4*pi/(3*d) for every color
    for (int j = 1; j <= 3; ++j) {
        const double ang = 2.0 * j * pi / 3.0;
        g.directions[j - 1] = Eigen::Vector2d(std::cos(ang), std::sin(ang));
    }
    return g;
}

std::array<Eigen::Vector2d, 2> primitive_vectors(const LatticeGeometry& g) {
    const double d = g.lattice_constant;
    return {Eigen::Vector2d(d * std::sqrt(3.0) / 2.0, d / 2.0),
            Eigen::Vector2d(0.0, d)};
}

LatticeConfig make_config(const LatticeGeometry& g, double peak_intensity,
                          const std::array<double, 3>& phases) {
    if (peak_intensity < 0)
        throw ConfigError("lattice config: peak intensity must be >= 0");
    LatticeConfig cfg;
    cfg.geometry = g;
    cfg.peak_intensity = peak_intensity;
    for (int j = 0; j < 3; ++j) cfg.phases[j] = wrap_two_pi(phases[j]);
    return cfg;
}

double intensity_pattern(const LatticeConfig& cfg, double x, double y) {
    return pattern_value(cfg.geometry.k_perp, cfg.geometry.directions,
                         cfg.phases, x, y);
}

Eigen::Vector2d pattern_gradient(const LatticeConfig& cfg, double x, double y) {
    // d/dr [-cos^2(q r + phi)] = q sin(2(q r + phi))
    const double q = std::sqrt(3.0) * cfg.geometry.k_perp / 2.0;
    Eigen::Vector2d grad = Eigen::Vector2d::Zero();
    for (int j = 0; j < 3; ++j) {
        const double rj = cfg.geometry.directions[j].dot(Eigen::Vector2d(x, y));
        grad += q * std::sin(2.0 * (q * rj + cfg.phases[j])) *
                cfg.geometry.directions[j];
    }
    return grad;
}

double max_pattern_gradient(const LatticeConfig& cfg) {
    const auto prim = primitive_vectors(cfg.geometry);
    const int n = 96;
    double best = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Eigen::Vector2d r =
                (double(i) / n) * prim[0] + (double(j) / n) * prim[1];
            best = std::max(best, pattern_gradient(cfg, r.x(), r.y()).norm());
        }
    }
    return best;
}

Eigen::Vector2d translation_for_phases(const LatticeConfig& cfg,
                                       const std::array<double, 3>& dphi) {
    const double q = std::sqrt(3.0) * cfg.geometry.k_perp / 2.0;
    Eigen::Matrix<double, 3, 2> m;
    for (int j = 0; j < 3; ++j) m.row(j) = -q * cfg.geometry.directions[j].transpose();

    const double range = 3.0; // pattern spans [3, 6]
    const double tol = 1e-6 * range;

    auto mismatch = [&](const Eigen::Vector2d& t) {
        LatticeConfig shifted = cfg;
        for (int j = 0; j < 3; ++j)
            shifted.phases[j] = wrap_two_pi(cfg.phases[j] + dphi[j]);
        const auto prim = primitive_vectors(cfg.geometry);
        double worst = 0;
        const int n = 64;
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const Eigen::Vector2d r =
                    (double(i) / n) * prim[0] + (double(k) / n) * prim[1];
                const double a = intensity_pattern(cfg, r.x() - t.x(), r.y() - t.y());
                const double b = intensity_pattern(shifted, r.x(), r.y());
                worst = std::max(worst, std::abs(a - b));
            }
        }
        return worst;
    };

    // Unwrapped solve first: keeps multi-site translations intact.
    Eigen::Vector3d rhs(dphi[0], dphi[1], dphi[2]);
    Eigen::Vector2d t = m.colPivHouseholderQr().solve(rhs);
    if (mismatch(t) <= tol) return t;

    // Retry on the principal branch: cos^2 terms repeat with period pi.
    Eigen::Vector3d reduced;
    for (int j = 0; j < 3; ++j) {
        double w = std::fmod(dphi[j], pi);
        if (w > pi / 2) w -= pi;
        if (w <= -pi / 2) w += pi;
        reduced[j] = w;
    }
    t = m.colPivHouseholderQr().solve(reduced);
    if (mismatch(t) <= tol) return t;

    throw std::domain_error(
        "phase triple is not a rigid translation of the pattern");
}

// ---------------------------------------------------------------------------

double dipole_potential(const TransitionLine& line, double intensity, double delta) {
    if (std::abs(delta) <= 10.0 * line.linewidth)
        throw std::domain_error("dipole_potential: |detuning| must exceed 10*Gamma");
    if (intensity < 0)
        throw std::domain_error("dipole_potential: intensity must be >= 0");
    return (hbar * line.linewidth / 8.0) * (intensity / line.isat) /
           (delta / line.linewidth);
}

double scattering_rate(const TransitionLine& line, double v_depth, double delta) {
    if (std::abs(delta) <= 10.0 * line.linewidth)
        throw std::domain_error("scattering_rate: |detuning| must exceed 10*Gamma");
    return (std::abs(v_depth) / hbar) * (line.linewidth / std::abs(delta));
}

double site_recoil_energy(double mass, double d) {
    return hbar * hbar * pi * pi / (2.0 * mass * d * d);
}

double tunneling_rate(double v_depth, double mass, double d) {
    if (v_depth <= 0)
        throw std::domain_error("tunneling_rate: lattice depth must be positive");
    const double er = site_recoil_energy(mass, d);
    const double s = v_depth / er;
    const double j = (4.0 / std::sqrt(pi)) * er * std::pow(s, 0.75) *
                     std::exp(-2.0 * std::sqrt(s));
    return j / hbar;
}

bool tunneling_estimate_valid(double v_depth, double mass, double d) {
    return v_depth >= site_recoil_energy(mass, d);
}

double standing_wave_trap_frequency(double v_depth, double k, double mass) {
    if (v_depth < 0 || k <= 0 || mass <= 0)
        throw std::domain_error("standing_wave_trap_frequency: bad arguments");
    return k * std::sqrt(2.0 * v_depth / mass);
}

double triangular_trap_frequency(double v_modulation, double k_perp, double mass) {
    if (v_modulation < 0 || k_perp <= 0 || mass <= 0)
        throw std::domain_error("triangular_trap_frequency: bad arguments");
    // pattern = 3 + (9/8) k_perp^2 |r|^2 near a minimum; depth per pattern
    // unit is v_modulation / 3.
    const double curvature = (v_modulation / 3.0) * 2.25 * k_perp * k_perp;
    return std::sqrt(curvature / mass);
}

// ---------------------------------------------------------------------------

BichromaticLattice make_bichromatic(double d, double lambda1, double lambda2) {
    BichromaticLattice bl;
    bl.l1 = make_config(make_geometry(lambda1, d), 0.0);
    bl.l2 = make_config(make_geometry(lambda2, d), 0.0);
    bl.li = lookup_species("Li6");
    bl.cs = lookup_species("Cs133");
    return bl;
}

namespace {

// Peak light shift per unit peak intensity for a species in one lattice
// color [J / (W/m^2)]. Physical intensity is I_m * pattern / 6.
double shift_scale(const Species& sp, const LatticeConfig& lat) {
    const TransitionLine& line = sp.dominant_line();
    const double delta = detuning(line, lat.geometry.wavelength);
    return dipole_potential(line, 1.0, delta);
}

} // namespace

double max_force_ratio(const BichromaticLattice& bl, double i1, double i2,
                       const Species& sp) {
    const bool is_li = sp.name == bl.li.name;
    const LatticeConfig& own = is_li ? bl.l1 : bl.l2;
    const LatticeConfig& other = is_li ? bl.l2 : bl.l1;
    const double i_own = is_li ? i1 : i2;
    const double i_other = is_li ? i2 : i1;
    if (i_own <= 0 || i_other < 0)
        throw std::domain_error("max_force_ratio: own-lattice intensity must be positive");
    // |grad V| = |shift_scale| * (I_m/6) * |grad pattern|; geometries are
    // matched so the pattern gradient maxima coincide, but evaluate both.
    const double g_own = std::abs(shift_scale(sp, own)) * (i_own / 6.0) *
                         max_pattern_gradient(own);
    const double g_other = std::abs(shift_scale(sp, other)) * (i_other / 6.0) *
                           max_pattern_gradient(other);
    return g_other / g_own;
}

FeasibilityPoint evaluate_point(const BichromaticLattice& bl, double i1, double i2,
                                const FeasibilityRequirements& req,
                                double max_grad) {
    FeasibilityPoint p;
    p.i1 = i1;
    p.i2 = i2;

    const double s_li_l1 = shift_scale(bl.li, bl.l1);
    const double s_li_l2 = shift_scale(bl.li, bl.l2);
    const double s_cs_l1 = shift_scale(bl.cs, bl.l1);
    const double s_cs_l2 = shift_scale(bl.cs, bl.l2);

    // Cross-talk: wrong-lattice force over own-lattice force. The shared
    // max_grad / 6 factor cancels in each ratio but is kept for clarity.
    const double f = max_grad / 6.0;
    const double alpha_li = std::abs(s_li_l2) * i2 * f / (std::abs(s_li_l1) * i1 * f);
    const double alpha_cs = std::abs(s_cs_l1) * i1 * f / (std::abs(s_cs_l2) * i2 * f);
    p.cross_talk = std::max(alpha_li, alpha_cs);
    // Independent control: each species must be dominated by its own lattice.
    p.independent_control_ok = alpha_li < 1.0 && alpha_cs < 1.0;

    // Peak shifts; in-plane modulation depth is half the peak value
    // (pattern spans 3..6 out of 6).
    const double u_li = std::abs(s_li_l1) * i1;
    const double u_cs = std::abs(s_cs_l2) * i2;
    const double li_tun = tunneling_rate(0.5 * u_li, bl.li.mass,
                                         bl.l1.geometry.lattice_constant);
    const double cs_tun = tunneling_rate(0.5 * u_cs, bl.cs.mass,
                                         bl.l2.geometry.lattice_constant);
    p.li_tunneling_ok = li_tun <= req.decoherence_ceiling;
    p.cs_tunneling_ok = cs_tun <= req.decoherence_ceiling;

    const auto& li_line = bl.li.dominant_line();
    const auto& cs_line = bl.cs.dominant_line();
    const double li_sc =
        scattering_rate(li_line, u_li, detuning(li_line, bl.l1.geometry.wavelength)) +
        scattering_rate(li_line, std::abs(s_li_l2) * i2,
                        detuning(li_line, bl.l2.geometry.wavelength));
    const double cs_sc =
        scattering_rate(cs_line, u_cs, detuning(cs_line, bl.l2.geometry.wavelength)) +
        scattering_rate(cs_line, std::abs(s_cs_l1) * i1,
                        detuning(cs_line, bl.l1.geometry.wavelength));
    p.li_scattering_ok = li_sc <= req.decoherence_ceiling;
    p.cs_scattering_ok = cs_sc <= req.decoherence_ceiling;
    return p;
}

std::vector<double> grid_axis(double lo, double hi, int n, bool log_spacing) {
    if (n < 1 || lo <= 0 || hi < lo)
        throw ConfigError("grid axis: need n >= 1 and 0 < lo <= hi");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) {
        const double f = double(i) / (n - 1);
        v[i] = log_spacing ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
    }
    return v;
}

std::vector<FeasibilityPoint> feasibility_region(const BichromaticLattice& bl,
                                                 const IntensityGrid& grid,
                                                 const FeasibilityRequirements& req,
                                                 int jobs) {
    const auto ax1 = grid_axis(grid.i1_min, grid.i1_max, grid.n1, grid.log_spacing);
    const auto ax2 = grid_axis(grid.i2_min, grid.i2_max, grid.n2, grid.log_spacing);
    const double max_grad = max_pattern_gradient(bl.l1);

    std::vector<FeasibilityPoint> pts(ax1.size() * ax2.size());
    auto run_rows = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t i = row_begin; i < row_end; ++i)
            for (std::size_t j = 0; j < ax2.size(); ++j)
                pts[i * ax2.size() + j] =
                    evaluate_point(bl, ax1[i], ax2[j], req, max_grad);
    };

    const int n_jobs = std::max(1, jobs);
    if (n_jobs == 1 || ax1.size() < 2) {
        run_rows(0, ax1.size());
        return pts;
    }
    std::vector<std::thread> workers;
    const std::size_t chunk = (ax1.size() + n_jobs - 1) / n_jobs;
    for (std::size_t start = 0; start < ax1.size(); start += chunk)
        workers.emplace_back(run_rows, start, std::min(start + chunk, ax1.size()));
    for (auto& w : workers) w.join();
    return pts;
}

FeasibilitySummary summarize_region(const std::vector<FeasibilityPoint>& pts,
                                    const FeasibilityRequirements& req) {
    FeasibilitySummary s;
    s.n_points = pts.size();
    bool first = true;
    for (const auto& p : pts) {
        if (!p.feasible()) continue;
        ++s.n_feasible;
        const double ratio = p.i1 / p.i2;
        if (first || ratio < s.ratio_min) s.ratio_min = ratio;
        if (first || ratio > s.ratio_max) s.ratio_max = ratio;
        if (first || p.cross_talk < s.best_cross_talk) {
            s.best_cross_talk = p.cross_talk;
            s.best_ratio = ratio;
        }
        first = false;
    }
    if (s.n_points > 0)
        s.feasible_fraction = double(s.n_feasible) / double(s.n_points);
    s.best_within_alpha_max = s.n_feasible > 0 && s.best_cross_talk <= req.alpha_max;
    return s;
}

void write_feasibility_csv(std::ostream& os, const std::vector<FeasibilityPoint>& pts) {
    os << "I1_W_m2,I2_W_m2,alpha,indep_ok,li_tun_ok,cs_tun_ok,li_sc_ok,cs_sc_ok,feasible\n";
    for (const auto& p : pts) {
        format_double(os, p.i1);
        os << ',';
        format_double(os, p.i2);
        os << ',';
        format_double(os, p.cross_talk);
        os << ',' << int(p.independent_control_ok) << ',' << int(p.li_tunneling_ok)
           << ',' << int(p.cs_tunneling_ok) << ',' << int(p.li_scattering_ok) << ','
           << int(p.cs_scattering_ok) << ',' << int(p.feasible()) << '\n';
    }
}

void write_pattern_csv(std::ostream& os, const LatticeConfig& cfg,
                       double extent, int samples_per_axis) {
    os << "x_um,y_um,intensity_rel\n";
    const int n = samples_per_axis;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = -extent + 2.0 * extent * i / (n - 1);
            const double y = -extent + 2.0 * extent * j / (n - 1);
            format_double(os, x / units::um);
            os << ',';
            format_double(os, y / units::um);
            os << ',';
            format_double(os, intensity_pattern(cfg, x, y));
            os << '\n';
        }
    }
}

} // namespace latmol::lattice
