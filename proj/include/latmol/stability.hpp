#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Core>

#include "latmol/species.hpp"

namespace latmol::stability {

/// Lattice-minimum position time series, one (x, y) track per color.
/// Timestamps are shared; building a series from per-channel clocks that
/// disagree is rejected rather than resampled.
struct PositionSeries {
    Eigen::VectorXd time;                              // s, monotone
    Eigen::Matrix<double, Eigen::Dynamic, 2> color1;   // m
    Eigen::Matrix<double, Eigen::Dynamic, 2> color2;   // m

    Eigen::Index size() const { return time.size(); }
    double duration() const;
    /// max gap < 2x median gap, the requirement for spectrum estimation.
    bool uniform_sampling() const;
    double sample_rate() const; // 1 / median gap, Hz
};

PositionSeries make_series(const Eigen::VectorXd& time,
                           const Eigen::Matrix<double, Eigen::Dynamic, 2>& color1,
                           const Eigen::Matrix<double, Eigen::Dynamic, 2>& color2);

/// Same, from channels carrying their own timestamps; throws ConfigError
/// when the clocks disagree.
PositionSeries make_series_checked(const Eigen::VectorXd& t1,
                                   const Eigen::Matrix<double, Eigen::Dynamic, 2>& color1,
                                   const Eigen::VectorXd& t2,
                                   const Eigen::Matrix<double, Eigen::Dynamic, 2>& color2);

enum class Channel { Color1, Color2, Differential };

/// Positions of the requested channel (color1 - color2 for Differential).
Eigen::Matrix<double, Eigen::Dynamic, 2> channel_positions(const PositionSeries& s,
                                                           Channel ch);

/// Radial RMS displacement about the mean position, sqrt(mean |r - <r>|^2).
double rms_displacement(const PositionSeries& s, Channel ch);
/// Per-axis RMS about the mean.
Eigen::Vector2d rms_per_axis(const PositionSeries& s, Channel ch);
/// RMS of (color1 - color2) about its mean.
double differential_rms(const PositionSeries& s);

struct Spectrum {
    Eigen::VectorXd frequency; // Hz
    Eigen::VectorXd psd;       // m^2/Hz, x and y power summed
    int segments = 0;
    bool single_segment_fallback = false; // too short for >= 8 Welch segments
    /// integral of psd over frequency; compare against the series variance
    double integrated_power() const;
};

/// Welch estimate: mean of Hann-windowed modified periodograms over
/// 50%-overlapping segments. segment_length 0 picks the largest power of two
/// giving at least 8 segments. Throws std::domain_error on nonuniform
/// sampling.
Spectrum power_spectrum(const PositionSeries& s, Channel ch, int segment_length = 0);

struct StabilitySummary {
    double rms1 = 0;      // m
    double rms2 = 0;
    double rms_diff = 0;
    Eigen::Vector2d rms1_axis = Eigen::Vector2d::Zero();
    Eigen::Vector2d rms2_axis = Eigen::Vector2d::Zero();
    Eigen::Vector2d rms_diff_axis = Eigen::Vector2d::Zero();
    Eigen::Index n_samples = 0;
    double duration = 0;  // s
};

StabilitySummary summarize(const PositionSeries& s);

// --- I/O ------------------------------------------------------------------

/// Reads the documented CSV layout: header `t_s,x1_nm,y1_nm,x2_nm,y2_nm`,
/// comment lines starting with '#'. Throws ConfigError with the offending
/// line number on malformed input.
PositionSeries read_series_csv(std::istream& in);
void write_series_csv(std::ostream& os, const PositionSeries& s);

/// Spectrum CSV `f_hz,psd1,psd2,psd_diff` with densities in nm^2/Hz.
void write_spectrum_csv(std::ostream& os, const Spectrum& s1, const Spectrum& s2,
                        const Spectrum& sdiff);

// --- Synthetic fixtures -----------------------------------------------------

struct SyntheticSpec {
    int n_samples = 16384;
    double sample_rate = 5.0;          // Hz
    double single_color_rms = 92e-9;   // target radial RMS per color, m
    double differential_rms = 26e-9;   // target radial RMS of the difference, m
    std::uint64_t seed = 1;
};

/// Gaussian common-mode motion plus independent per-color noise, scaled so
/// the constructed series carries the requested RMS values in expectation.
PositionSeries synthesize_series(const SyntheticSpec& spec);

// --- Vector light shift -----------------------------------------------------

/// D_FS = (Delta_3/2 - Delta_1/2) / (Delta_3/2 / 2 + Delta_1/2).
/// Throws std::domain_error when the denominator vanishes.
double fine_structure_constant_dfs(double delta_32, double delta_12);

/// D_FS of a species at a given lattice wavelength, detunings taken from its
/// fine-structure line pair.
double dfs_for(const Species& sp, double laser_wavelength);

} // namespace latmol::stability
