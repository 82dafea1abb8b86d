#include "wp4/window.hpp"

#include <algorithm>
#include <cmath>

namespace wp4 {

void validate(const FrequencySignal& s) {
    if (!(s.start_freq > 0.0)) throw std::invalid_argument("FrequencySignal: start_freq must be > 0");
    if (!(s.spacing > 0.0)) throw std::invalid_argument("FrequencySignal: spacing must be > 0");
    if (s.samples.size() < 2) throw std::invalid_argument("FrequencySignal: need at least two samples");
    for (const cplx& v : s.samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("FrequencySignal: non-finite sample");
}

void validate(const SplineWindow& f) {
    if (f.nodes.size() < 3) throw std::invalid_argument("SplineWindow: need at least 3 nodes");
    if (!(f.nodes.front().abscissa > 0.0))
        throw std::invalid_argument("SplineWindow: abscissae must be positive");
    for (std::size_t k = 1; k < f.nodes.size(); ++k)
        if (!(f.nodes[k - 1].abscissa < f.nodes[k].abscissa))
            throw std::invalid_argument("SplineWindow: abscissae must be strictly increasing");
    if (f.nodes.front().value != 0.0 || f.nodes.back().value != 0.0)
        throw std::invalid_argument("SplineWindow: endpoint values must be 0");
    for (const WindowNode& n : f.nodes)
        if (!(n.value >= 0.0) || !std::isfinite(n.value) || !std::isfinite(n.abscissa))
            throw std::invalid_argument("SplineWindow: values must be finite and nonnegative");
}

double SplineWindow::center() const {
    const WindowNode* best = &nodes.front();
    for (const WindowNode& n : nodes)
        if (n.value > best->value) best = &n;
    return best->abscissa;
}

double SplineWindow::eval(double x) const {
    if (nodes.empty() || x <= nodes.front().abscissa || x >= nodes.back().abscissa) {
        // endpoint values are zero, so the boundary itself evaluates to 0 too
        return 0.0;
    }
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x,
                               [](const WindowNode& n, double v) { return n.abscissa < v; });
    if (it->abscissa == x) return it->value;
    const WindowNode& hi = *it;
    const WindowNode& lo = *(it - 1);
    const double t = (x - lo.abscissa) / (hi.abscissa - lo.abscissa);
    return lo.value + (hi.value - lo.value) * t;
}

double window_norm_signal(const SplineWindow& f) {
    double acc = 0.0;
    for (std::size_t k = 1; k < f.nodes.size(); ++k) {
        const double d = f.nodes[k].abscissa - f.nodes[k - 1].abscissa;
        const double v0 = f.nodes[k - 1].value, v1 = f.nodes[k].value;
        acc += d * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0;
    }
    return std::sqrt(acc);
}

double duflo_norm(const SplineWindow& f) {
    double acc = 0.0;
    for (std::size_t k = 1; k < f.nodes.size(); ++k) {
        const double x0 = f.nodes[k - 1].abscissa, x1 = f.nodes[k].abscissa;
        const double v0 = f.nodes[k - 1].value, v1 = f.nodes[k].value;
        // f(x) = A + B x on the segment; |f|^2 / x integrates to
        // A^2 ln + 2AB x + B^2 x^2 / 2
        const double B = (v1 - v0) / (x1 - x0);
        const double A = v0 - B * x0;
        acc += A * A * std::log(x1 / x0) + 2.0 * A * B * (x1 - x0) + B * B * (x1 * x1 - x0 * x0) / 2.0;
    }
    return std::sqrt(acc);
}

SplineWindow scaled(SplineWindow f, double factor) {
    for (WindowNode& n : f.nodes) n.value *= factor;
    return f;
}

SplineWindow normalized_signal(SplineWindow f) {
    const double n = window_norm_signal(f);
    if (n == 0.0) throw std::invalid_argument("normalized_signal: zero window");
    return scaled(std::move(f), 1.0 / n);
}

SplineWindow normalized_duflo(SplineWindow f) {
    const double n = duflo_norm(f);
    if (n == 0.0) throw std::invalid_argument("normalized_duflo: zero window");
    return scaled(std::move(f), 1.0 / n);
}

SplineWindow contracted_about_center(const SplineWindow& f, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("contracted_about_center: factor must be > 0");
    const double c = f.center();
    SplineWindow g = f;
    for (WindowNode& n : g.nodes) n.abscissa = c + (n.abscissa - c) * factor;
    validate(g);
    return g;
}

}  // namespace wp4
