#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wp4 {

using cplx = std::complex<double>;

/// Uniform grid of positive frequencies: omega_n = start_freq + n * spacing.
struct FreqGrid {
    double start_freq = 0.0;  // hertz, > 0
    double spacing = 0.0;     // hertz, > 0
    std::size_t count = 0;    // number of samples (N + 1)

    double omega(std::size_t n) const { return start_freq + spacing * static_cast<double>(n); }
    double top() const { return omega(count - 1); }
    /// Total signal duration represented by this grid (period of the time axis).
    double period() const { return 1.0 / spacing; }

    bool operator==(const FreqGrid&) const = default;
};

/// Positive-frequency samples of a signal's Fourier transform.
/// Frequencies below start_freq may be split off into low_band and are
/// carried verbatim for exact round trips; they are invisible to the
/// transform machinery.
struct FrequencySignal {
    double start_freq = 0.0;
    double spacing = 0.0;
    std::vector<cplx> samples;
    std::vector<cplx> low_band;  // samples at start_freq - k*spacing, k = size..1

    FreqGrid grid() const { return {start_freq, spacing, samples.size()}; }
    double omega(std::size_t n) const { return start_freq + spacing * static_cast<double>(n); }
};

void validate(const FrequencySignal& s);

/// Piecewise-linear, compactly supported, real nonnegative frequency-domain
/// window. Node abscissae are strictly increasing and positive; the first and
/// last node values are zero so the window is continuous on the line.
struct WindowNode {
    double abscissa = 0.0;  // hertz, > 0
    double value = 0.0;     // >= 0
};

struct SplineWindow {
    std::vector<WindowNode> nodes;

    double support_lo() const { return nodes.front().abscissa; }
    double support_hi() const { return nodes.back().abscissa; }
    /// Abscissa of the maximum value (the window's center frequency).
    double center() const;
    double eval(double x) const;
};

void validate(const SplineWindow& f);

/// A point of phase space: time g1 (seconds) and log-scale g2.
struct PhasePoint {
    double g1 = 0.0;
    double g2 = 0.0;
};

struct Atom {
    PhasePoint point;
    cplx coeff;  // synthesis weight relative to atom_sample of the window
};

/// Dense sampling of the wavelet transform on a time x log-scale grid,
/// with Haar-consistent quadrature weights per scale.
struct DenseCwt {
    std::vector<double> times;       // g1 grid, one period of the time axis
    std::vector<double> log_scales;  // g2 grid, strictly increasing
    std::vector<double> weights;     // W_m, one per scale
    std::vector<std::vector<cplx>> values;  // [scale][time]

    double time_step = 0.0;
};

}  // namespace wp4
