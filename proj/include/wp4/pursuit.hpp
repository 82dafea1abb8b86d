#pragma once

#include "wp4/search.hpp"
#include "wp4/types.hpp"

namespace wp4 {

/// Result of a greedy pursuit. Atom coefficients are synthesis weights
/// against atom_sample of the (unit signal-norm) window; residual_norms holds
/// one entry per iteration including the initial norm.
struct Decomposition {
    std::vector<Atom> atoms;
    std::vector<double> residual_norms;
    SplineWindow window;
};

/// Matching pursuit: subtract the exact projection on the found atom each
/// iteration. The window is normalized internally; the signal is zero-padded
/// for the search. Stops early on a dead residual (norm < 1e-12 of input).
Decomposition mp(const FrequencySignal& s, const SplineWindow& f, std::size_t n_atoms,
                 const SearchConfig& cfg);

/// Orthogonal matching pursuit: each iteration re-solves the least-squares
/// projection on all selected atoms via the (regularized) Gram matrix.
Decomposition omp(const FrequencySignal& s, const SplineWindow& f, std::size_t n_atoms,
                  const SearchConfig& cfg);

/// Least-squares coefficients of the atoms for the given signal
/// (normal equations, Gram regularized by +1e-10 I).
std::vector<cplx> project_coefficients(const FrequencySignal& s, const SplineWindow& f,
                                       const std::vector<PhasePoint>& points);

/// Windows with supports Delta/2 and Delta/(2T), contracted about the center
/// of f1 and renormalized to unit signal norm.
std::pair<SplineWindow, SplineWindow> make_window_family(const SplineWindow& f1, int stretch);

struct VocoderConfig {
    int stretch = 1;  // integer time dilation T >= 1
    std::size_t n_atoms = 16;
};

/// Sparse wavelet phase vocoder: pursue with f1, recompute coefficients
/// against f2 atoms, synthesize with f3 at times T*g1 (scales unchanged) on a
/// grid with spacing r/T. The low band is stretched by naive resampling.
FrequencySignal vocoder_stretch(const FrequencySignal& s, const SplineWindow& f1,
                                const VocoderConfig& vcfg, const SearchConfig& scfg);

}  // namespace wp4
