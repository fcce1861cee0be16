#include "latmol/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "latmol/constants.hpp"
#include "latmol/errors.hpp"

namespace latmol::stability {

using constants::pi;

namespace {

void format_double(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
}

std::vector<double> gaps(const Eigen::VectorXd& t) {
    std::vector<double> g(t.size() - 1);
    for (Eigen::Index i = 0; i + 1 < t.size(); ++i) g[i] = t[i + 1] - t[i];
    return g;
}

double median_gap(const Eigen::VectorXd& t) {
    auto g = gaps(t);
    std::nth_element(g.begin(), g.begin() + g.size() / 2, g.end());
    return g[g.size() / 2];
}

} // namespace

double PositionSeries::duration() const {
    return size() >= 2 ? time[size() - 1] - time[0] : 0.0;
}

bool PositionSeries::uniform_sampling() const {
    if (size() < 2) return false;
    const double med = median_gap(time);
    if (med <= 0) return false;
    for (double g : gaps(time))
        if (g <= 0 || g >= 2.0 * med) return false;
    return true;
}

double PositionSeries::sample_rate() const {
    if (size() < 2) throw std::domain_error("sample_rate: need at least 2 samples");
    return 1.0 / median_gap(time);
}

PositionSeries make_series(const Eigen::VectorXd& time,
                           const Eigen::Matrix<double, Eigen::Dynamic, 2>& color1,
                           const Eigen::Matrix<double, Eigen::Dynamic, 2>& color2) {
    if (time.size() < 2)
        throw ConfigError("position series: need at least 2 samples");
    if (color1.rows() != time.size() || color2.rows() != time.size())
        throw ConfigError("position series: channel lengths differ from timestamps");
    for (Eigen::Index i = 0; i + 1 < time.size(); ++i)
        if (!(time[i + 1] > time[i]))
            throw ConfigError("position series: timestamps must increase");
    return PositionSeries{time, color1, color2};
}

PositionSeries make_series_checked(const Eigen::VectorXd& t1,
                                   const Eigen::Matrix<double, Eigen::Dynamic, 2>& color1,
                                   const Eigen::VectorXd& t2,
                                   const Eigen::Matrix<double, Eigen::Dynamic, 2>& color2) {
    if (t1.size() != t2.size() || (t1 - t2).cwiseAbs().maxCoeff() != 0.0)
        throw ConfigError("position series: channel timestamps are misaligned");
    return make_series(t1, color1, color2);
}

Eigen::Matrix<double, Eigen::Dynamic, 2> channel_positions(const PositionSeries& s,
                                                           Channel ch) {
    switch (ch) {
        case Channel::Color1: return s.color1;
        case Channel::Color2: return s.color2;
        case Channel::Differential: return s.color1 - s.color2;
    }
    throw std::logic_error("bad channel");
}

double rms_displacement(const PositionSeries& s, Channel ch) {
    const auto r = channel_positions(s, ch);
    const Eigen::RowVector2d mean = r.colwise().mean();
    return std::sqrt((r.rowwise() - mean).squaredNorm() / double(r.rows()));
}

Eigen::Vector2d rms_per_axis(const PositionSeries& s, Channel ch) {
    const auto r = channel_positions(s, ch);
    const Eigen::RowVector2d mean = r.colwise().mean();
    const auto centered = (r.rowwise() - mean).eval();
    return (centered.colwise().squaredNorm() / double(r.rows()))
        .cwiseSqrt()
        .transpose();
}

double differential_rms(const PositionSeries& s) {
    return rms_displacement(s, Channel::Differential);
}

double Spectrum::integrated_power() const {
    if (frequency.size() < 2) return 0.0;
    const double df = frequency[1] - frequency[0];
    return psd.sum() * df;
}

Spectrum power_spectrum(const PositionSeries& s, Channel ch, int segment_length) {
    if (!s.uniform_sampling())
        throw std::domain_error("power_spectrum: sampling is not uniform");
    const Eigen::Index n = s.size();
    const double fs = s.sample_rate();

    int seg = segment_length;
    Spectrum out;
    if (seg <= 0) {
        // Largest power of two yielding >= 8 half-overlapping segments,
        // which needs n >= 4.5 * seg.
        if (2.0 * n >= 9.0 * 16.0) {
            seg = 16;
            while (2.0 * n >= 9.0 * (2.0 * seg)) seg *= 2;
        } else {
            seg = int(n);
            out.single_segment_fallback = true;
        }
    }
    if (seg < 4 || seg > n)
        throw std::domain_error("power_spectrum: bad segment length");

    const int hop = out.single_segment_fallback ? seg : seg / 2;
    const int n_seg = int((n - seg) / hop) + 1;

    Eigen::VectorXd window(seg);
    for (int i = 0; i < seg; ++i)
        window[i] = 0.5 * (1.0 - std::cos(2.0 * pi * i / (seg - 1)));
    const double wnorm = window.squaredNorm();

    const auto r = channel_positions(s, ch);
    const Eigen::RowVector2d mean = r.colwise().mean();

    const int n_bins = seg / 2 + 1;
    Eigen::VectorXd accum = Eigen::VectorXd::Zero(n_bins);
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    std::vector<std::complex<double>> buf(seg);

    for (int axis = 0; axis < 2; ++axis) {
        for (int si = 0; si < n_seg; ++si) {
            const int off = si * hop;
            for (int i = 0; i < seg; ++i)
                buf[i] = window[i] * (r(off + i, axis) - mean[axis]);
            fft.fwd(spec, buf);
            for (int k = 0; k < n_bins; ++k) {
                double p = std::norm(spec[k]);
                if (k != 0 && !(seg % 2 == 0 && k == seg / 2)) p *= 2.0; // one-sided
                accum[k] += p;
            }
        }
    }

    out.segments = n_seg;
    out.frequency = Eigen::VectorXd::LinSpaced(n_bins, 0.0, fs * (n_bins - 1) / seg);
    out.psd = accum / (double(n_seg) * fs * wnorm);
    return out;
}

StabilitySummary summarize(const PositionSeries& s) {
    StabilitySummary sum;
    sum.rms1 = rms_displacement(s, Channel::Color1);
    sum.rms2 = rms_displacement(s, Channel::Color2);
    sum.rms_diff = differential_rms(s);
    sum.rms1_axis = rms_per_axis(s, Channel::Color1);
    sum.rms2_axis = rms_per_axis(s, Channel::Color2);
    sum.rms_diff_axis = rms_per_axis(s, Channel::Differential);
    sum.n_samples = s.size();
    sum.duration = s.duration();
    return sum;
}

// ---------------------------------------------------------------------------

PositionSeries read_series_csv(std::istream& in) {
    using units::nm;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<double> t;
    std::vector<Eigen::Vector2d> c1, c2;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            std::string h = line;
            h.erase(std::remove_if(h.begin(), h.end(),
                                   [](char c) { return c == ' ' || c == '\r'; }),
                    h.end());
            if (h != "t_s,x1_nm,y1_nm,x2_nm,y2_nm")
                throw ConfigError("stability csv line " + std::to_string(line_no) +
                                  ": expected header t_s,x1_nm,y1_nm,x2_nm,y2_nm");
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        double v[5];
        for (int i = 0; i < 5; ++i) {
            if (!(ss >> v[i]))
                throw ConfigError("stability csv line " + std::to_string(line_no) +
                                  ": expected 5 comma-separated numbers");
            if (i < 4) {
                char comma = 0;
                if (!(ss >> comma) || comma != ',')
                    throw ConfigError("stability csv line " + std::to_string(line_no) +
                                      ": expected 5 comma-separated numbers");
            }
        }
        t.push_back(v[0]);
        c1.emplace_back(v[1] * nm, v[2] * nm);
        c2.emplace_back(v[3] * nm, v[4] * nm);
    }
    if (!header_seen) throw ConfigError("stability csv: missing header");
    if (t.size() < 2) throw ConfigError("stability csv: need at least 2 samples");

    Eigen::VectorXd time(t.size());
    Eigen::Matrix<double, Eigen::Dynamic, 2> m1(t.size(), 2), m2(t.size(), 2);
    for (std::size_t i = 0; i < t.size(); ++i) {
        time[Eigen::Index(i)] = t[i];
        m1.row(Eigen::Index(i)) = c1[i].transpose();
        m2.row(Eigen::Index(i)) = c2[i].transpose();
    }
    return make_series(time, m1, m2);
}

void write_series_csv(std::ostream& os, const PositionSeries& s) {
    using units::nm;
    os << "t_s,x1_nm,y1_nm,x2_nm,y2_nm\n";
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        format_double(os, s.time[i]);
        for (int c = 0; c < 2; ++c) {
            os << ',';
            format_double(os, s.color1(i, c) / nm);
        }
        for (int c = 0; c < 2; ++c) {
            os << ',';
            format_double(os, s.color2(i, c) / nm);
        }
        os << '\n';
    }
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s1, const Spectrum& s2,
                        const Spectrum& sdiff) {
    const double to_nm2 = 1.0 / (units::nm * units::nm);
    os << "f_hz,psd1,psd2,psd_diff\n";
    for (Eigen::Index k = 0; k < s1.frequency.size(); ++k) {
        format_double(os, s1.frequency[k]);
        os << ',';
        format_double(os, s1.psd[k] * to_nm2);
        os << ',';
        format_double(os, s2.psd[k] * to_nm2);
        os << ',';
        format_double(os, sdiff.psd[k] * to_nm2);
        os << '\n';
    }
}

PositionSeries synthesize_series(const SyntheticSpec& spec) {
    if (spec.n_samples < 2) throw ConfigError("synthetic series: need >= 2 samples");
    if (spec.sample_rate <= 0) throw ConfigError("synthetic series: bad sample rate");
    const double var_total = spec.single_color_rms * spec.single_color_rms;
    const double var_indep = spec.differential_rms * spec.differential_rms / 2.0;
    if (var_indep > var_total)
        throw ConfigError("synthetic series: differential RMS too large for the "
                          "single-color target");
    // Per-axis standard deviations; radial variance is the two-axis sum.
    const double sd_common = std::sqrt((var_total - var_indep) / 2.0);
    const double sd_indep = std::sqrt(var_indep / 2.0);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const Eigen::Index n = spec.n_samples;
    Eigen::VectorXd time(n);
    Eigen::Matrix<double, Eigen::Dynamic, 2> c1(n, 2), c2(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        time[i] = double(i) / spec.sample_rate;
        for (int ax = 0; ax < 2; ++ax) {
            const double common = sd_common * gauss(rng);
            c1(i, ax) = common + sd_indep * gauss(rng);
            c2(i, ax) = common + sd_indep * gauss(rng);
        }
    }
    return make_series(time, c1, c2);
}

// ---------------------------------------------------------------------------

double fine_structure_constant_dfs(double delta_32, double delta_12) {
    const double den = delta_32 / 2.0 + delta_12;
    const double scale = std::max(std::abs(delta_32), std::abs(delta_12));
    if (scale == 0.0 || std::abs(den) < 1e-12 * scale)
        throw std::domain_error("D_FS: degenerate detunings, denominator vanishes");
    return (delta_32 - delta_12) / den;
}

double dfs_for(const Species& sp, double laser_wavelength) {
    const auto& line_32 = sp.line(sp.fine_structure_pair.first);
    const auto& line_12 = sp.line(sp.fine_structure_pair.second);
    return fine_structure_constant_dfs(detuning(line_32, laser_wavelength),
                                       detuning(line_12, laser_wavelength));
}

} // namespace latmol::stability
