#pragma once

#include "wp4/types.hpp"

namespace wp4 {

/// L2 norm of the window on the plain frequency line, sqrt(int |f|^2 dw).
/// Exact per-segment integration of the piecewise quadratic.
double window_norm_signal(const SplineWindow& f);

/// Duflo-Moore weighted norm, sqrt(int |f(w')|^2 / w' dw'). Exact per
/// segment: quadratic over w' integrates to polynomial plus logarithm.
double duflo_norm(const SplineWindow& f);

SplineWindow scaled(SplineWindow f, double factor);

/// Rescale values so window_norm_signal(f) == 1.
SplineWindow normalized_signal(SplineWindow f);

/// Rescale values so duflo_norm(f) == 1.
SplineWindow normalized_duflo(SplineWindow f);

/// Affine contraction of the node abscissae about the window center by
/// `factor` (< 1 shrinks the support). Values are untouched.
SplineWindow contracted_about_center(const SplineWindow& f, double factor);

}  // namespace wp4
