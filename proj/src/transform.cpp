#include "wp4/transform.hpp"

#include <cmath>
#include <numbers>

#include "wp4/fft.hpp"

namespace wp4 {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

std::vector<cplx> atom_sample(const SplineWindow& f, PhasePoint g, const FreqGrid& grid) {
    std::vector<cplx> out(grid.count);
    const double dil = std::exp(g.g2);
    const double amp = std::sqrt(dil);
    const double lo = f.support_lo() / dil, hi = f.support_hi() / dil;
    for (std::size_t n = 0; n < grid.count; ++n) {
        const double w = grid.omega(n);
        if (w <= lo || w >= hi) continue;
        const double mag = amp * f.eval(dil * w);
        const double ph = -two_pi * g.g1 * w;
        out[n] = cplx(mag * std::cos(ph), mag * std::sin(ph));
    }
    return out;
}

cplx inner_product(const FrequencySignal& s, std::span<const cplx> v) {
    if (s.samples.size() != v.size()) throw std::invalid_argument("inner_product: length mismatch");
    cplx acc = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) acc += s.samples[n] * std::conj(v[n]);
    return acc * s.spacing;
}

double signal_norm(const FrequencySignal& s) {
    double acc = 0.0;
    for (const cplx& x : s.samples) acc += std::norm(x);
    return std::sqrt(acc * s.spacing);
}

double vector_norm(std::span<const cplx> v, double spacing) {
    double acc = 0.0;
    for (const cplx& x : v) acc += std::norm(x);
    return std::sqrt(acc * spacing);
}

std::vector<double> exp_scale_grid(double g2_lo, double g2_hi, std::size_t count) {
    if (count < 2 || !(g2_lo < g2_hi)) throw std::invalid_argument("exp_scale_grid: bad range");
    std::vector<double> g(count);
    const double d = (g2_hi - g2_lo) / static_cast<double>(count - 1);
    for (std::size_t m = 0; m < count; ++m) g[m] = g2_lo + d * static_cast<double>(m);
    return g;
}

std::vector<double> linfreq_scale_grid(double kappa_lo, double kappa_hi, std::size_t count,
                                       double window_center) {
    if (count < 2 || !(kappa_lo > 0.0) || !(kappa_lo < kappa_hi))
        throw std::invalid_argument("linfreq_scale_grid: bad range");
    std::vector<double> g(count);
    const double d = (kappa_hi - kappa_lo) / static_cast<double>(count - 1);
    for (std::size_t m = 0; m < count; ++m) {
        const double kappa = kappa_hi - d * static_cast<double>(m);
        g[m] = std::log(window_center / kappa);
    }
    return g;
}

DenseCwt dense_cwt(const FrequencySignal& s, const SplineWindow& f,
                   const std::vector<double>& log_scale_grid, std::size_t times_per_scale) {
    validate(s);
    validate(f);
    if (log_scale_grid.empty() || times_per_scale == 0)
        throw std::invalid_argument("dense_cwt: empty grid");
    for (std::size_t m = 1; m < log_scale_grid.size(); ++m)
        if (!(log_scale_grid[m - 1] < log_scale_grid[m]))
            throw std::invalid_argument("dense_cwt: scale grid must be strictly increasing");

    const std::size_t nt = next_pow2(std::max(times_per_scale, s.samples.size()));
    const std::size_t M = log_scale_grid.size();
    const double T = s.grid().period();
    const double dt = T / static_cast<double>(nt);

    DenseCwt d;
    d.log_scales = log_scale_grid;
    d.time_step = dt;
    d.times.resize(nt);
    for (std::size_t t = 0; t < nt; ++t) d.times[t] = dt * static_cast<double>(t);

    // trapezoid weights on the g2 axis times the Haar factor exp(-g2)
    d.weights.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        double w;
        if (m == 0)
            w = (log_scale_grid[1] - log_scale_grid[0]) / 2.0;
        else if (m + 1 == M)
            w = (log_scale_grid[M - 1] - log_scale_grid[M - 2]) / 2.0;
        else
            w = (log_scale_grid[m + 1] - log_scale_grid[m - 1]) / 2.0;
        d.weights[m] = w * std::exp(-log_scale_grid[m]);
    }

    d.values.assign(M, {});
    std::vector<cplx> buf(nt);
    for (std::size_t m = 0; m < M; ++m) {
        const double g2 = log_scale_grid[m];
        const double dil = std::exp(g2);
        const double amp = std::sqrt(dil);
        // y_n = s_n * conj(atom at (0, g2)); the window is real
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        for (std::size_t n = 0; n < s.samples.size(); ++n)
            buf[n] = std::conj(s.samples[n]) * (amp * f.eval(dil * s.omega(n)));
        // sum_n y_n exp(+2 pi i t n / nt) = conj(fft(conj(y)))
        fft(buf, false);
        auto& row = d.values[m];
        row.resize(nt);
        for (std::size_t t = 0; t < nt; ++t) {
            const double ph = two_pi * d.times[t] * s.start_freq;
            row[t] = s.spacing * std::conj(buf[t]) * cplx(std::cos(ph), std::sin(ph));
        }
    }
    return d;
}

double dense_norm(const DenseCwt& d) {
    double acc = 0.0;
    for (std::size_t m = 0; m < d.values.size(); ++m) {
        double row = 0.0;
        for (const cplx& v : d.values[m]) row += std::norm(v);
        acc += d.weights[m] * row * d.time_step;
    }
    return std::sqrt(acc);
}

std::pair<PhasePoint, double> dense_argmax(const DenseCwt& d) {
    PhasePoint best{0.0, 0.0};
    double mod = -1.0;
    for (std::size_t m = 0; m < d.values.size(); ++m) {
        for (std::size_t t = 0; t < d.values[m].size(); ++t) {
            const double a = std::abs(d.values[m][t]);
            if (a > mod) {
                mod = a;
                best = {d.times[t], d.log_scales[m]};
            }
        }
    }
    return {best, mod < 0.0 ? 0.0 : mod};
}

FrequencySignal synthesize(const std::vector<Atom>& atoms, const SplineWindow& f,
                           const FreqGrid& grid) {
    FrequencySignal out;
    out.start_freq = grid.start_freq;
    out.spacing = grid.spacing;
    out.samples.assign(grid.count, cplx(0.0, 0.0));
    for (const Atom& a : atoms) {
        const std::vector<cplx> v = atom_sample(f, a.point, grid);
        for (std::size_t n = 0; n < grid.count; ++n) out.samples[n] += a.coeff * v[n];
    }
    return out;
}

}  // namespace wp4
