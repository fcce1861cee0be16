// latmol - design calculator for a two-species optical-lattice quantum
// processor: lattice feasibility scans, atom-molecule gate budgets, messenger
// transport limits, exact protocol simulation and lattice-stability analysis.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "latmol/config.hpp"
#include "latmol/constants.hpp"
#include "latmol/coupling.hpp"
#include "latmol/errors.hpp"
#include "latmol/lattice.hpp"
#include "latmol/protocol.hpp"
#include "latmol/species.hpp"
#include "latmol/stability.hpp"
#include "latmol/transport.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace latmol;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 12345;
    int jobs = int(std::thread::hardware_concurrency());
};

json base_record(const std::string& subcommand, const CommonOpts& opts) {
    json rec;
    rec["schema_version"] = 1;
    rec["tool"] = "latmol";
    rec["subcommand"] = subcommand;
    rec["seed"] = opts.seed;
    rec["jobs"] = opts.jobs;
    return rec;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

fs::path prepare_out_dir(const CommonOpts& opts) {
    fs::path dir(opts.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
    return dir;
}

void emit(const fs::path& dir, const std::string& name, const json& rec,
          const std::string& human) {
    write_text_file(dir / (name + "_result.json"), rec.dump(2) + "\n");
    std::cout << human;
}

Config load(const CommonOpts& opts) {
    if (opts.config_path.empty()) throw ConfigError("--config is required");
    return load_config(opts.config_path);
}

std::map<std::string, double> species_overrides(const Config& cfg) {
    std::map<std::string, double> ov;
    for (const auto& [k, v] : cfg.numeric_values()) {
        if (k.rfind("li6.", 0) == 0 || k.rfind("cs133.", 0) == 0) ov[k] = v;
    }
    return ov;
}

// ---------------------------------------------------------------------------

int cmd_geometry(const CommonOpts& opts) {
    using namespace units;
    const Config cfg = load(opts);
    const double d = cfg.get_double_or("geometry.d_um", 1.5) * um;
    const double l1 = cfg.get_double_or("geometry.lambda1_nm", 681.0) * nm;
    const double l2 = cfg.get_double_or("geometry.lambda2_nm", 1064.0) * nm;
    const auto g1 = lattice::make_geometry(l1, d);
    const auto g2 = lattice::make_geometry(l2, d);

    json rec = base_record("geometry", opts);
    rec["params"] = {{"d_um", d / um}, {"lambda1_nm", l1 / nm}, {"lambda2_nm", l2 / nm}};
    auto geo_json = [](const lattice::LatticeGeometry& g) {
        return json{{"theta_rad", g.intersection_angle},
                    {"k_perp_per_m", g.k_perp},
                    {"d_roundtrip_m", 4.0 * constants::pi / (3.0 * g.k_perp)}};
    };
    rec["results"]["color1"] = geo_json(g1);
    rec["results"]["color2"] = geo_json(g2);
    rec["results"]["k_perp_relative_mismatch"] =
        std::abs(g1.k_perp - g2.k_perp) / g1.k_perp;

    const auto dir = prepare_out_dir(opts);
    const auto c1 = lattice::make_config(g1, 1.0);

    std::ostringstream pattern;
    const double extent = cfg.get_double_or("geometry.pattern_extent_um", 2.0 * d / um) * um;
    const int samples = cfg.get_int_or("geometry.pattern_samples", 65);
    lattice::write_pattern_csv(pattern, c1, extent, samples);
    write_text_file(dir / "pattern.csv", pattern.str());

    std::ostringstream human;
    human << "geometry: d = " << d / um << " um\n"
          << "  color1 " << l1 / nm << " nm: theta = " << g1.intersection_angle
          << " rad, k_perp = " << g1.k_perp << " 1/m\n"
          << "  color2 " << l2 / nm << " nm: theta = " << g2.intersection_angle
          << " rad, k_perp = " << g2.k_perp << " 1/m\n";

    if (cfg.has("geometry.dphi1_rad") || cfg.has("geometry.dphi2_rad") ||
        cfg.has("geometry.dphi3_rad")) {
        const std::array<double, 3> dphi = {cfg.get_double_or("geometry.dphi1_rad", 0),
                                            cfg.get_double_or("geometry.dphi2_rad", 0),
                                            cfg.get_double_or("geometry.dphi3_rad", 0)};
        const auto c2 = lattice::make_config(g2, 1.0);
        const Eigen::Vector2d t = lattice::translation_for_phases(c2, dphi);
        rec["results"]["translation_um"] = {t.x() / um, t.y() / um};
        human << "  phase shift (" << dphi[0] << ", " << dphi[1] << ", " << dphi[2]
              << ") rad -> translation (" << t.x() / um << ", " << t.y() / um
              << ") um, |t| = " << t.norm() / um << " um\n";
    }
    human << "  pattern samples written to " << (dir / "pattern.csv").string() << "\n";
    emit(dir, "geometry", rec, human.str());
    return 0;
}

int cmd_feasibility(const CommonOpts& opts) {
    using namespace units;
    const Config cfg = load(opts);
    lattice::IntensityGrid grid;
    grid.i1_min = cfg.get_double("feasibility.i1_min_w_m2");
    grid.i1_max = cfg.get_double("feasibility.i1_max_w_m2");
    grid.i2_min = cfg.get_double("feasibility.i2_min_w_m2");
    grid.i2_max = cfg.get_double("feasibility.i2_max_w_m2");
    grid.n1 = cfg.get_int("feasibility.n1");
    grid.n2 = cfg.get_int("feasibility.n2");
    grid.log_spacing = cfg.get_bool_or("feasibility.log_spacing", true);

    lattice::FeasibilityRequirements req;
    req.decoherence_ceiling = cfg.get_double_or("feasibility.decoherence_ceiling_hz", 2.0);
    req.alpha_max = cfg.get_double_or("feasibility.alpha_max", 0.16);
    if (req.decoherence_ceiling < 0 || grid.n1 < 1 || grid.n2 < 1)
        throw ConfigError("feasibility: ceiling must be >= 0 and grid sizes >= 1");

    const double d = cfg.get_double_or("feasibility.d_um", 1.5) * um;
    const double l1 = cfg.get_double_or("feasibility.lambda1_nm", 681.0) * nm;
    const double l2 = cfg.get_double_or("feasibility.lambda2_nm", 1064.0) * nm;
    auto bl = lattice::make_bichromatic(d, l1, l2);
    const auto ov = species_overrides(cfg);
    if (!ov.empty()) {
        bl.li = lookup_species("Li6", ov);
        bl.cs = lookup_species("Cs133", ov);
    }

    const auto pts = lattice::feasibility_region(bl, grid, req, opts.jobs);
    const auto sum = lattice::summarize_region(pts, req);

    const auto dir = prepare_out_dir(opts);
    std::ostringstream csv;
    lattice::write_feasibility_csv(csv, pts);
    write_text_file(dir / "feasibility_region.csv", csv.str());

    json rec = base_record("feasibility", opts);
    rec["params"] = {{"i1_min_w_m2", grid.i1_min}, {"i1_max_w_m2", grid.i1_max},
                     {"i2_min_w_m2", grid.i2_min}, {"i2_max_w_m2", grid.i2_max},
                     {"n1", grid.n1},               {"n2", grid.n2},
                     {"log_spacing", grid.log_spacing},
                     {"decoherence_ceiling_hz", req.decoherence_ceiling},
                     {"alpha_max", req.alpha_max},
                     {"d_um", d / um},
                     {"lambda1_nm", l1 / nm},
                     {"lambda2_nm", l2 / nm}};
    rec["results"]["n_points"] = sum.n_points;
    rec["results"]["n_feasible"] = sum.n_feasible;
    rec["results"]["feasible_fraction"] = sum.feasible_fraction;
    if (sum.n_feasible > 0) {
        rec["results"]["ratio_min"] = sum.ratio_min;
        rec["results"]["ratio_max"] = sum.ratio_max;
        rec["results"]["best_ratio"] = sum.best_ratio;
        rec["results"]["best_cross_talk"] = sum.best_cross_talk;
        rec["results"]["best_within_alpha_max"] = sum.best_within_alpha_max;
    }

    std::ostringstream human;
    human << "feasibility: " << sum.n_feasible << "/" << sum.n_points
          << " grid points feasible (fraction " << sum.feasible_fraction << ")\n";
    if (sum.n_feasible > 0)
        human << "  I1/I2 ratio range [" << sum.ratio_min << ", " << sum.ratio_max
              << "], lowest cross-talk " << sum.best_cross_talk << " at ratio "
              << sum.best_ratio << "\n";
    else
        human << "  empty region (reported, not an error)\n";
    human << "  region written to " << (dir / "feasibility_region.csv").string() << "\n";
    emit(dir, "feasibility", rec, human.str());
    return 0;
}

int cmd_gate(const CommonOpts& opts) {
    using namespace units;
    using constants::hbar;
    const Config cfg = load(opts);

    const double a = cfg.get_double_or("gate.a_a0", 200.0) * constants::bohr_radius;
    const double omega0 = cfg.get_double_or("gate.omega0_khz", 10.0) * khz_angular;
    const double offset = cfg.get_double_or("gate.delta_nm", 10.0) * nm;

    const double mu = lookup_species("Li6").mass * lookup_species("Cs133").mass /
                      (lookup_species("Li6").mass + lookup_species("Cs133").mass);

    double omega_rel = 0, r0 = 0, r0_from_omega = 0;
    if (cfg.has("gate.m1_amu") || cfg.has("gate.omega1_khz")) {
        const auto sys = coupling::reduce_system(
            cfg.get_double("gate.m1_amu") * constants::amu,
            cfg.get_double("gate.omega1_khz") * khz_angular,
            cfg.get_double("gate.m2_amu") * constants::amu,
            cfg.get_double("gate.omega2_khz") * khz_angular);
        omega_rel = sys.omega_rel;
        r0_from_omega = sys.r0;
    } else if (cfg.has("gate.omega_r_khz")) {
        omega_rel = cfg.get_double("gate.omega_r_khz") * khz_angular;
        r0_from_omega = coupling::oscillator_length(mu, omega_rel);
    }
    if (cfg.has("gate.r0_nm")) {
        r0 = cfg.get_double("gate.r0_nm") * nm;
        if (omega_rel == 0) omega_rel = hbar / (mu * r0 * r0);
    } else {
        if (r0_from_omega == 0)
            throw ConfigError("gate: need r0_nm, omega_r_khz, or trap parameters "
                              "m1_amu/omega1_khz/m2_amu/omega2_khz");
        r0 = r0_from_omega;
    }

    const double delta_vib = cfg.get_double_or("gate.delta_vib_khz", 0.0) * khz_angular;
    const auto budget = coupling::make_budget(a, omega0, r0, omega_rel, offset, delta_vib);
    const auto quad_pulse = coupling::rabi_and_time(budget.franck_condon_quad, omega0);

    json rec = base_record("gate", opts);
    rec["params"] = {{"a_a0", a / constants::bohr_radius},
                     {"omega0_khz", omega0 / khz_angular},
                     {"r0_nm", r0 / nm},
                     {"delta_nm", offset / nm},
                     {"delta_vib_khz", budget.delta_vib / khz_angular}};
    json& res = rec["results"];
    res["omega_r_hz"] = omega_rel / constants::two_pi;
    res["r0_nm"] = r0 / nm;
    if (r0_from_omega > 0) res["r0_from_omega_nm"] = r0_from_omega / nm;
    res["C"] = budget.franck_condon;
    res["C_closed_form"] = budget.franck_condon;
    res["C_quadrature"] = budget.franck_condon_quad;
    res["prefactor_ratio"] = budget.franck_condon_quad / budget.franck_condon;
    res["omega_hz"] = budget.rabi / constants::two_pi;
    res["omega_quadrature_hz"] = quad_pulse.rabi / constants::two_pi;
    res["tau_ms"] = budget.pair_time / ms;
    res["tau_quadrature_ms"] = quad_pulse.pair_time / ms;
    res["F_per_op"] = budget.fidelity_per_op;
    res["F_per_op_3axis"] = budget.fidelity_per_op_3axis;
    res["dp_per_pulse"] = budget.leakage_per_pulse;

    std::ostringstream human;
    human << "gate budget:\n";
    for (auto& [k, v] : res.items()) human << "  " << k << " = " << v.dump() << "\n";
    emit(prepare_out_dir(opts), "gate", rec, human.str());
    return 0;
}

int cmd_transport(const CommonOpts& opts) {
    using namespace units;
    const Config cfg = load(opts);
    const int n_min = cfg.get_int_or("transport.n_min", 1);
    const int n_max = cfg.get_int_or("transport.n_max", 10);
    const double target = cfg.get_double_or("transport.fidelity_target", 0.99);
    if (n_min < 0 || n_max < n_min)
        throw ConfigError("transport: need 0 <= n_min <= n_max");

    json rec = base_record("transport", opts);
    rec["params"] = {{"n_min", n_min}, {"n_max", n_max}, {"fidelity_target", target}};
    const auto ref = transport::make_params(std::max(n_min, 1));
    rec["results"]["depth_factor_raw"] = transport::depth_factor_raw(ref);
    rec["results"]["calibration_scale"] = transport::calibration_scale();

    std::ostringstream csv, human;
    csv << "N_sites,v_um_per_ms,p1,tau_e_ms,Nq\n";
    human << "transport timing (fidelity target " << target << "):\n"
          << "  N    v[um/ms]      p1      tau_e[ms]     Nq\n";
    json rows = json::array();
    for (int n = n_min; n <= n_max; ++n) {
        const auto row = transport::timing_row(n, target);
        const double v_umms = row.velocity * 1e3; // m/s -> um/ms
        csv << n << ',' << v_umms << ',' << row.p1 << ',' << row.entangle_time / ms
            << ',' << row.qubit_reach << "\n";
        char line[160];
        std::snprintf(line, sizeof line, "  %-4d %-12.5g %-8.4g %-12.5g %-10.5g\n", n,
                      v_umms, row.p1, row.entangle_time / ms, row.qubit_reach);
        human << line;
        rows.push_back({{"N_sites", n},
                        {"v_um_per_ms", v_umms},
                        {"p1", row.p1},
                        {"tau_e_ms", row.entangle_time / ms},
                        {"Nq", row.qubit_reach},
                        {"gate_ms", row.gate_time / ms},
                        {"transport_ms", row.transport_time / ms}});
    }
    rec["results"]["rows"] = rows;

    const auto dir = prepare_out_dir(opts);
    write_text_file(dir / "transport_timing.csv", csv.str());
    human << "  timing rows written to " << (dir / "transport_timing.csv").string() << "\n";
    emit(dir, "transport", rec, human.str());
    return 0;
}

json trace_state(const protocol::ProtocolRegister& reg) {
    json terms = json::array();
    for (const auto& t : protocol::ket_expansion(reg))
        terms.push_back({{"ket", t.label}, {"re", t.amplitude.real()}, {"im", t.amplitude.imag()}});
    return terms;
}

void print_trace_step(std::ostringstream& os, const std::string& op,
                      const protocol::ProtocolRegister& reg) {
    os << "  after " << op << ":\n";
    for (const auto& t : protocol::ket_expansion(reg)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "    %+.6f%+.6fi  %s\n", t.amplitude.real(),
                      t.amplitude.imag(), t.label.c_str());
        os << buf;
    }
}

int cmd_protocol(const CommonOpts& opts) {
    const Config cfg = load(opts);
    int n_sites;
    if (cfg.has("protocol.site_a_i")) {
        const Eigen::Vector2i sa(cfg.get_int("protocol.site_a_i"),
                                 cfg.get_int("protocol.site_a_j"));
        const Eigen::Vector2i sb(cfg.get_int("protocol.site_b_i"),
                                 cfg.get_int("protocol.site_b_j"));
        n_sites = transport::site_distance(sa, sb);
    } else {
        n_sites = cfg.get_int_or("protocol.n_sites", 1);
    }
    if (n_sites < 0) throw ConfigError("protocol: N must be >= 0");

    const bool ideal = cfg.get_bool_or("protocol.ideal", false);
    const double f_op = ideal ? 1.0 : cfg.get_double_or("protocol.f_per_op", 0.995);
    const double dp = ideal ? 0.0 : cfg.get_double_or("protocol.dp_per_pulse", 0.0);
    double p1 = ideal ? 0.0 : cfg.get_double_or("protocol.p1", 0.01);
    if (n_sites == 0) p1 = 0.0;
    const int trials = cfg.get_int_or("protocol.mc_trials", 10000);

    json rec = base_record("protocol", opts);
    rec["params"] = {{"n_sites", n_sites}, {"ideal", ideal},      {"f_per_op", f_op},
                     {"dp_per_pulse", dp}, {"p1", p1},            {"mc_trials", trials}};

    // Deterministic budget-mode run for the trace.
    const protocol::GateErrors err{f_op, dp};
    std::ostringstream human;
    human << "protocol trace (N = " << n_sites << (ideal ? ", ideal" : "") << "):\n";
    json trace = json::array();
    auto reg = protocol::protocol_input();
    trace.push_back({{"op", "prepare"}, {"state", trace_state(reg)}});
    print_trace_step(human, "prepare", reg);
    reg = protocol::entangle_step(reg, protocol::EntangleStep::Create, err);
    trace.push_back({{"op", "create"}, {"state", trace_state(reg)}});
    print_trace_step(human, "create (messenger-qubit entangling)", reg);
    reg = protocol::apply_transport_loss(reg, p1);
    trace.push_back({{"op", "transport"}, {"state", trace_state(reg)}});
    print_trace_step(human, "transport", reg);
    reg = protocol::entangle_step(reg, protocol::EntangleStep::Swap, err);
    trace.push_back({{"op", "swap"}, {"state", trace_state(reg)}});
    print_trace_step(human, "swap (entanglement transfer)", reg);
    rec["results"]["trace"] = trace;

    rec["results"]["final_fidelity_to_bell"] =
        protocol::state_fidelity(reg, protocol::protocol_target());
    if (ideal) {
        rec["results"]["concurrence_lia_lib"] =
            protocol::concurrence(reg, protocol::Subsystem::LiA, protocol::Subsystem::LiB);
        rec["results"]["concurrence_cs_lia"] =
            protocol::concurrence(reg, protocol::Subsystem::Cs, protocol::Subsystem::LiA);
        rec["results"]["purity_cs"] = protocol::purity(reg, protocol::Subsystem::Cs);
    }

    const std::vector<protocol::PulseBudget> budgets(4, {f_op, dp});
    const auto rep = protocol::error_injected_run(budgets, p1, trials, opts.seed, opts.jobs);
    rec["results"]["f_multiplicative"] = rep.multiplicative;
    rec["results"]["f_montecarlo"] = rep.monte_carlo;
    rec["results"]["mc_sigma"] = rep.mc_sigma;
    rec["results"]["seed"] = rep.seed;

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "  fidelity: f_multiplicative = %.6f, f_montecarlo = %.6f "
                  "(sigma %.2g, %d trials, seed %llu)\n",
                  rep.multiplicative, rep.monte_carlo, rep.mc_sigma, rep.trials,
                  static_cast<unsigned long long>(rep.seed));
    human << buf;
    emit(prepare_out_dir(opts), "protocol", rec, human.str());
    return 0;
}

int cmd_stability(const CommonOpts& opts) {
    using namespace units;
    const Config cfg = load(opts);

    stability::PositionSeries series;
    if (cfg.get_bool_or("stability.synthetic", false)) {
        stability::SyntheticSpec spec;
        spec.n_samples = cfg.get_int_or("stability.n_samples", 16384);
        spec.sample_rate = cfg.get_double_or("stability.sample_rate_hz", 5.0);
        spec.single_color_rms = cfg.get_double_or("stability.rms_single_nm", 92.0) * nm;
        spec.differential_rms = cfg.get_double_or("stability.rms_diff_nm", 26.0) * nm;
        spec.seed = opts.seed;
        series = stability::synthesize_series(spec);
    } else {
        const std::string path = cfg.get_string("stability.input_csv");
        std::ifstream in(path);
        if (!in) throw IoError("cannot open stability input '" + path + "'");
        series = stability::read_series_csv(in);
    }

    const auto sum = stability::summarize(series);
    json rec = base_record("stability", opts);
    rec["params"] = {{"n_samples", sum.n_samples},
                     {"synthetic", cfg.get_bool_or("stability.synthetic", false)}};
    json& res = rec["results"];
    res["rms1_nm"] = sum.rms1 / nm;
    res["rms2_nm"] = sum.rms2 / nm;
    res["rms_diff_nm"] = sum.rms_diff / nm;
    res["rms1_axis_nm"] = {sum.rms1_axis.x() / nm, sum.rms1_axis.y() / nm};
    res["rms2_axis_nm"] = {sum.rms2_axis.x() / nm, sum.rms2_axis.y() / nm};
    res["rms_diff_axis_nm"] = {sum.rms_diff_axis.x() / nm, sum.rms_diff_axis.y() / nm};
    res["n_samples"] = sum.n_samples;
    res["duration_s"] = sum.duration;

    std::ostringstream human;
    human << "stability summary:\n"
          << "  rms1 = " << sum.rms1 / nm << " nm, rms2 = " << sum.rms2 / nm
          << " nm, differential = " << sum.rms_diff / nm << " nm over "
          << sum.n_samples << " samples (" << sum.duration << " s)\n";

    const auto dir = prepare_out_dir(opts);
    const int min_spectrum_samples = 16;
    if (!series.uniform_sampling()) {
        res["spectrum"] = "refused_nonuniform_sampling";
        human << "  warning: nonuniform sampling, spectrum refused\n";
    } else if (series.size() < min_spectrum_samples) {
        res["spectrum"] = "refused_too_short";
        human << "  warning: too few samples for a spectrum\n";
    } else {
        const int seg = cfg.get_int_or("stability.segment_length", 0);
        const auto s1 = stability::power_spectrum(series, stability::Channel::Color1, seg);
        const auto s2 = stability::power_spectrum(series, stability::Channel::Color2, seg);
        const auto sd = stability::power_spectrum(series, stability::Channel::Differential, seg);
        std::ostringstream csv;
        stability::write_spectrum_csv(csv, s1, s2, sd);
        write_text_file(dir / "spectrum.csv", csv.str());
        res["spectrum"] = "spectrum.csv";
        res["spectrum_segments"] = s1.segments;
        res["spectrum_single_segment_fallback"] = s1.single_segment_fallback;
        if (s1.single_segment_fallback)
            human << "  warning: series too short for 8 Welch segments, "
                     "single full-length periodogram used\n";
        human << "  spectra written to " << (dir / "spectrum.csv").string() << "\n";
    }
    emit(dir, "stability", rec, human.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-species optical-lattice quantum processor design toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    if (opts.jobs <= 0) opts.jobs = 1;
    app.add_option("--config", opts.config_path, "configuration file (key = value, [section] headers)");
    app.add_option("--out", opts.out_dir, "output directory (default .)");
    app.add_option("--seed", opts.seed, "random seed for reproducible runs");
    app.add_option("--jobs", opts.jobs, "worker threads for grid scans and Monte-Carlo");

    auto* c_geo = app.add_subcommand("geometry", "beam geometry, pattern samples, phase-to-translation");
    auto* c_fea = app.add_subcommand("feasibility", "scan lattice intensities against control and decoherence limits");
    auto* c_gate = app.add_subcommand("gate", "atom-molecule gate budget: coupling, pulse time, fidelity terms");
    auto* c_tra = app.add_subcommand("transport", "adiabatic messenger transport limits and timing scaling");
    auto* c_pro = app.add_subcommand("protocol", "simulate the two-step distant-qubit entanglement protocol");
    auto* c_sta = app.add_subcommand("stability", "analyze lattice-position time series: RMS and spectra");
    for (auto* sub : {c_geo, c_fea, c_gate, c_tra, c_pro, c_sta}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_geo->parsed()) return cmd_geometry(opts);
        if (c_fea->parsed()) return cmd_feasibility(opts);
        if (c_gate->parsed()) return cmd_gate(opts);
        if (c_tra->parsed()) return cmd_transport(opts);
        if (c_pro->parsed()) return cmd_protocol(opts);
        if (c_sta->parsed()) return cmd_stability(opts);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
