#pragma once

#include <span>
#include <utility>

#include "wp4/types.hpp"

namespace wp4 {

/// Samples of the transformed window pi(g)f on a frequency grid:
///   v(w) = exp(-2*pi*i*g1*w) * exp(g2/2) * f(exp(g2)*w).
std::vector<cplx> atom_sample(const SplineWindow& f, PhasePoint g, const FreqGrid& grid);

/// Riemann-sum sesquilinear form r * sum s_n * conj(v_n). Linear in s,
/// conjugate-linear in v. Throws on length mismatch.
cplx inner_product(const FrequencySignal& s, std::span<const cplx> v);

/// Discrete l2 norms scaled by sqrt(spacing), consistent with inner_product.
double signal_norm(const FrequencySignal& s);
double vector_norm(std::span<const cplx> v, double spacing);

/// Uniform grid in g2.
std::vector<double> exp_scale_grid(double g2_lo, double g2_hi, std::size_t count);
/// Grid with uniform spacing in frequency kappa = center/exp(g2), expressed
/// in g2. Returned increasing in g2 (decreasing in frequency).
std::vector<double> linfreq_scale_grid(double kappa_lo, double kappa_hi, std::size_t count,
                                       double window_center);

/// Dense FFT-based CWT baseline: V(g1, g2) for all grid points.
/// times_per_scale is rounded up to a power of two; values of the window
/// falling outside the frequency grid at some scale are silently truncated.
DenseCwt dense_cwt(const FrequencySignal& s, const SplineWindow& f,
                   const std::vector<double>& log_scale_grid, std::size_t times_per_scale);

/// Weighted grid norm of the transform, sqrt(sum_m W_m dt sum_t |V|^2).
double dense_norm(const DenseCwt& d);

/// Grid point of maximal modulus and the modulus. Ties broken by the
/// smallest (scale index, time index).
std::pair<PhasePoint, double> dense_argmax(const DenseCwt& d);

/// Sum of coeff_k * atom_sample(f, point_k) on the grid.
FrequencySignal synthesize(const std::vector<Atom>& atoms, const SplineWindow& f,
                           const FreqGrid& grid);

}  // namespace wp4
