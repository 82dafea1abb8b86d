#include "wp4/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wp4/search.hpp"
#include "wp4/transform.hpp"
#include "wp4/window.hpp"

namespace wp4 {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

struct BenchCase {
    FrequencySignal signal;  // already padded for the search
    SplineWindow window;
};

BenchCase make_case(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double r = 1.0;
    const double w0 = static_cast<double>(n) / 4.0 * r;  // room to pad below

    SplineWindow f;
    const double c = w0 + static_cast<double>(n) * r / 3.0;
    f.nodes = {{c / 2.0, 0.0}, {c, 1.0}, {1.5 * c, 0.0}};  // the stock 1:2:3 triangle
    f = normalized_signal(f);

    FrequencySignal s;
    s.start_freq = w0;
    s.spacing = r;
    s.samples.assign(n, cplx(0.0, 0.0));
    const double T = 1.0 / r;
    for (int tone = 0; tone < 5; ++tone) {
        const double kappa = w0 + (0.15 + 0.7 * uni(rng)) * static_cast<double>(n) * r;
        const PhasePoint g{uni(rng) * T, std::log(c / kappa)};
        const std::vector<cplx> v = atom_sample(f, g, s.grid());
        const cplx amp = std::polar(0.5 + uni(rng), 2.0 * std::numbers::pi * uni(rng));
        for (std::size_t i = 0; i < n; ++i) s.samples[i] += amp * v[i];
    }
    std::normal_distribution<double> gauss(0.0, 0.02);
    for (std::size_t i = 0; i < n; ++i) s.samples[i] += cplx(gauss(rng), gauss(rng));

    BenchCase bc;
    bc.signal = pad_for_search(f, s);
    bc.window = f;
    return bc;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& opt) {
    std::vector<BenchRow> rows;
    using clock = std::chrono::steady_clock;
    for (std::size_t n : opt.sizes) {
        const BenchCase bc = make_case(n, opt.seed + static_cast<unsigned>(n));
        SearchConfig cfg;

        std::vector<double> wp4_ms;
        std::size_t peak = 0;
        for (int rep = 0; rep < opt.searches_per_size; ++rep) {
            const auto t0 = clock::now();
            const SplineSequence F0 = tensor_init(bc.window, bc.signal);
            const SearchResult res = search_coefficient(F0, cfg);
            const auto t1 = clock::now();
            wp4_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            peak = std::max(peak, res.trace.peak_nodes);
        }
        rows.push_back({n, "wp4", median(wp4_ms), peak});

        if (n <= opt.dense_max_n) {
            const SlopeBand band = initial_band(bc.window, bc.signal.grid());
            const double center = bc.window.center();
            const std::vector<double> scales =
                linfreq_scale_grid(center / band.hi, center / band.lo, n, center);
            std::vector<double> dense_ms;
            const int reps = std::max(1, opt.searches_per_size / 2);
            for (int rep = 0; rep < reps; ++rep) {
                const auto t0 = clock::now();
                const DenseCwt d = dense_cwt(bc.signal, bc.window, scales, n);
                dense_argmax(d);
                const auto t1 = clock::now();
                dense_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            rows.push_back({n, "dense", median(dense_ms), n * n});
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "N,method,median_ms,nodes_peak\n";
    for (const BenchRow& r : rows)
        out << r.n << "," << r.method << "," << r.median_ms << "," << r.nodes_peak << "\n";
    return out.str();
}

double bench_loglog_slope(const std::vector<BenchRow>& rows, const std::string& method) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const BenchRow& r : rows) {
        if (r.method != method || r.median_ms <= 0.0) continue;
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.median_ms);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("bench_loglog_slope: need at least two sizes");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace wp4
