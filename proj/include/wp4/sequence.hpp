#pragma once

#include <cstdint>
#include <span>

#include "wp4/types.hpp"

namespace wp4 {

/// One node of a piecewise-linear window cross-section.
struct SeqNode {
    double x = 0.0;  // window-frequency abscissa, > 0
    cplx v;
};

/// Linear spline on strictly increasing abscissae; zero outside the span.
using CrossSection = std::span<const SeqNode>;

cplx cs_eval(CrossSection c, double x);

/// Discretized window-signal space element: one window cross-section per
/// signal frequency sample, stored flat and grouped by section. Empty
/// cross-sections are absent sections.
struct SplineSequence {
    double start_freq = 0.0;
    double spacing = 0.0;
    std::vector<std::uint64_t> offsets;  // size sections+1; section n is
                                         // nodes[offsets[n]..offsets[n+1])
    std::vector<SeqNode> nodes;
    std::size_t node_count = 0;  // running counter, equals nodes.size()

    std::size_t section_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
    CrossSection section(std::size_t n) const {
        return {nodes.data() + offsets[n], nodes.data() + offsets[n + 1]};
    }
    double omega(std::size_t n) const { return start_freq + spacing * static_cast<double>(n); }
    FreqGrid grid() const { return {start_freq, spacing, section_count()}; }
};

/// Empty sequence with the given grid.
SplineSequence make_sequence(const FreqGrid& grid);

/// Sequence from explicit per-section node lists (tests, file loading).
SplineSequence make_sequence(const FreqGrid& grid,
                             const std::vector<std::vector<SeqNode>>& sections);

/// A scale-pass band in the slope variable z = w'/w, 0 < lo < hi.
struct SlopeBand {
    double lo = 0.0;
    double hi = 0.0;
};

void validate(SlopeBand band);

/// Harmonic-mean split c = 2/(1/lo + 1/hi); divides node lines evenly.
double slope_bisect(SlopeBand band);

/// Periodic trigonometric time-pass filter. Coefficients are indexed
/// l = -order..order; bit 0 keeps the base half-period, bit 1 the complement
/// (c1_l = delta_l0 - c0_l). Level j dilates the period by 2^-j.
struct TrigFilter {
    int order = 0;
    int level = 0;
    int bit = 0;
    std::vector<cplx> coeffs;  // size 2*order+1, index l + order

    cplx coeff(int l) const { return coeffs[static_cast<std::size_t>(l + order)]; }
};

/// Fourier coefficients of the indicator of the half period [-pi, 0] on
/// [-pi, pi]: c_0 = 1/2, c_l = i/(pi l) for odd l, 0 otherwise.
std::vector<cplx> indicator_coeffs(int order);

TrigFilter make_time_filter(int order, int level, int bit);

/// Cross-section n of the tensor product: shat(w_n) * window.
SplineSequence tensor_init(const SplineWindow& f, const FrequencySignal& s);

/// Weighted norm sqrt(r * sum_n int |h_n(x)|^2 / x dx), exact per segment.
double seq_norm(const SplineSequence& F);

/// Restrict cross-section n to x in [lo*w_n, hi*w_n]; boundary nodes are
/// inserted by linear interpolation.
SplineSequence scale_pass(const SplineSequence& F, SlopeBand band);

/// Slope-ray transport by `steps` grid cells: section n moves to n+steps
/// with abscissae scaled by w_{n+steps}/w_n (node slopes are invariant).
/// Sections leaving the grid are dropped silently; the count is reported
/// through `dropped` when given.
SplineSequence time_shift(const SplineSequence& F, long steps, std::size_t* dropped = nullptr);

/// R_j^b applied through slope-ray transport: sum_l c_l * time_shift(F, 2^j l),
/// accumulated as a left fold over ascending l.
SplineSequence time_pass(const SplineSequence& F, const TrigFilter& filter);

/// Per cross-section, union of abscissae (merged within relative 1e-12) with
/// values added after linear interpolation. Throws on grid mismatch.
SplineSequence seq_add(const SplineSequence& F, const SplineSequence& G);

SplineSequence seq_scale(SplineSequence F, cplx lambda);

/// acc += lambda * F, same merge semantics as seq_add.
void seq_accumulate(SplineSequence& acc, cplx lambda, const SplineSequence& F);

/// V[F](g1, g2) = r * sum_n exp(2 pi i g1 w_n) exp(g2/2) h_n(exp(g2) w_n).
cplx eval_wavelet_coeff(const SplineSequence& F, PhasePoint g);

}  // namespace wp4
