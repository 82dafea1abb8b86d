#pragma once

#include "wp4/sequence.hpp"
#include "wp4/types.hpp"

namespace wp4 {

struct SearchConfig {
    int fourier_order = 9;  // L; the filter uses the 2L+1 exponents l = -L..L
    int max_depth = 0;      // J; 0 picks floor(log2(grid size))
    int refine_radius = 3;
    std::vector<cplx> coeffs;  // base filter coefficients; indicator_coeffs(L) when empty
};

struct SearchStep {
    int chosen = 0;                   // index into the enumerated children
    std::vector<double> child_norms;  // bit-0 children first, lower band first
    SlopeBand band;                   // band after this step
    std::vector<int> bits;            // b_1..b_j chosen so far
    std::size_t node_count = 0;       // nodes of the kept child
};

struct SearchTrace {
    std::vector<SearchStep> steps;
    std::size_t peak_nodes = 0;  // max nodes over every sequence materialized
    double time_cell = 0.0;      // T * 2^-J
    SlopeBand final_band;
};

struct SearchResult {
    PhasePoint point;
    SearchTrace trace;
};

/// [w'_K / w_N, w'_1 / w_0]; throws when the band is empty (the grid must be
/// zero-padded first, see pad_for_search).
SlopeBand initial_band(const SplineWindow& f, const FreqGrid& grid);

/// Zero-pad the signal so the initial band is valid and boundary drops in
/// deep time passes stay mild. Pads to roughly `factor` times the content,
/// split below/above as far as start_freq allows. Throws when no amount of
/// padding can produce a valid band (degenerate window).
FrequencySignal pad_for_search(const SplineWindow& f, const FrequencySignal& s,
                               double factor = 2.0);

/// Bisection coefficient search carried out entirely on the spline-sequence
/// model. Returns the phase estimate and the per-step trace.
/// Throws on zero input and on numerically dead branches.
SearchResult search_coefficient(const SplineSequence& F0, const SearchConfig& cfg);

/// Exact local evaluation of <s, pi(.)f> on a (2*radius+1)^2 grid around g
/// with the given cell sizes; returns the max-modulus point and the
/// projection coefficient against atom_sample at that point. The scale axis
/// steps uniformly in the inverse slope exp(-g2), matching the uniform
/// frequency lattice of the bisection.
Atom refine(const FrequencySignal& s, const SplineWindow& f, PhasePoint g, int radius,
            double time_step, double inv_slope_step);

Atom refine(const FrequencySignal& s, const SplineWindow& f, const SearchResult& found,
            int radius);

}  // namespace wp4
