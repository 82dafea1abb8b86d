#include "wp4/search.hpp"

#include <algorithm>
#include <cmath>

#include "wp4/transform.hpp"

namespace wp4 {

namespace {

double min_node_abscissa(const SplineSequence& F) {
    if (F.nodes.empty()) throw std::invalid_argument("search: empty sequence");
    double m = F.nodes.front().x;
    for (const SeqNode& n : F.nodes) m = std::min(m, n.x);
    return m;
}

double max_node_abscissa(const SplineSequence& F) {
    double m = 0.0;
    for (const SeqNode& n : F.nodes) m = std::max(m, n.x);
    return m;
}

constexpr double kTol = 1e-12;  // same relative abscissa merge tolerance as seq_add

bool near_equal(double a, double b) {
    return std::abs(a - b) <= kTol * std::max(std::abs(a), std::abs(b));
}

// One shifted copy of the running sequence, viewed at a fixed target section:
// the source cross-section with abscissae scaled along the slope rays, band
// restriction applied on the fly.
struct ShiftTerm {
    CrossSection src;
    double scale = 1.0;
    cplx cb0, cb1;      // coefficients for time bit 0 (complement) and 1 (base)
    double alo = 0.0;   // active interval: restricted support
    double ahi = 0.0;
    std::size_t cand = 0;  // next interior node index
    std::size_t ev = 0;    // rolling interpolation cursor
    int state = 3;         // 0 emit alo, 1 interior nodes, 2 emit ahi, 3 done

    double x_at(std::size_t k) const { return src[k].x * scale; }

    double candidate() const {
        switch (state) {
            case 0: return alo;
            case 1: return x_at(cand);
            case 2: return ahi;
            default: return 1e308;
        }
    }
    void advance() {
        if (state == 0) {
            state = 1;
            if (cand >= src.size() || x_at(cand) >= ahi * (1.0 - 1e-15)) state = 2;
        } else if (state == 1) {
            ++cand;
            if (cand >= src.size() || x_at(cand) > ahi || near_equal(x_at(cand), ahi))
                state = 2;
        } else if (state == 2) {
            state = 3;
        }
        if (state == 2 && near_equal(alo, ahi)) state = 3;
    }
    // spline value at x inside the active interval, zero outside
    cplx eval(double x) {
        if (x < alo || x > ahi || src.empty()) return {};
        while (ev < src.size() && x_at(ev) < x) ++ev;
        if (ev >= src.size()) return x <= x_at(src.size() - 1) ? src.back().v : cplx{};
        if (x_at(ev) == x) return src[ev].v;
        if (ev == 0) return {};
        const double x0 = x_at(ev - 1), x1 = x_at(ev);
        const double t = (x - x0) / (x1 - x0);
        return src[ev - 1].v + (src[ev].v - src[ev - 1].v) * t;
    }
};

// Children of one search step for one scale band: both time bits evaluated in
// a single sweep per section. Equivalent to scale_pass(time_pass(F, R^b), band)
// with the shifted copies merged k-way instead of left-folded.
void evaluate_children(const SplineSequence& F, const std::vector<long>& offsets,
                       const std::vector<cplx>& c_bit0, const std::vector<cplx>& c_bit1,
                       SlopeBand band, SplineSequence& out0, SplineSequence& out1) {
    const std::size_t nsec = F.section_count();
    out0 = make_sequence(F.grid());
    out1 = make_sequence(F.grid());
    out0.nodes.reserve(F.nodes.size() + 2 * nsec);
    out1.nodes.reserve(F.nodes.size() + 2 * nsec);

    std::vector<ShiftTerm> terms(offsets.size());
    for (std::size_t m = 0; m < nsec; ++m) {
        const double w = F.omega(m);
        const double lo = band.lo * w, hi = band.hi * w;
        std::size_t nterms = 0;
        for (std::size_t t = 0; t < offsets.size(); ++t) {
            const long n = static_cast<long>(m) - offsets[t];
            if (n < 0 || n >= static_cast<long>(nsec)) continue;
            const CrossSection src = F.section(static_cast<std::size_t>(n));
            if (src.empty()) continue;
            const double scale = w / F.omega(static_cast<std::size_t>(n));
            const double front = src.front().x * scale, back = src.back().x * scale;
            const double alo = std::max(front, lo), ahi = std::min(back, hi);
            if (!(alo < ahi) || near_equal(alo, ahi)) continue;
            ShiftTerm& tm = terms[nterms++];
            tm.src = src;
            tm.scale = scale;
            tm.cb0 = c_bit0[t];
            tm.cb1 = c_bit1[t];
            tm.alo = alo;
            tm.ahi = ahi;
            tm.ev = 0;
            // first interior node strictly above alo
            std::size_t k = 0;
            while (k < src.size() && src[k].x * scale < alo) ++k;
            if (k < src.size() && near_equal(src[k].x * scale, alo)) {
                tm.cand = k;
                tm.state = 1;  // the node itself plays the boundary
            } else {
                tm.cand = k;
                tm.state = 0;
            }
            if (tm.state == 1 && (tm.cand >= src.size() || tm.x_at(tm.cand) > ahi))
                tm.state = 2;
        }
        const std::size_t base0 = out0.nodes.size(), base1 = out1.nodes.size();
        while (true) {
            double x = 1e308;
            for (std::size_t t = 0; t < nterms; ++t) x = std::min(x, terms[t].candidate());
            if (x >= 1e307) break;
            for (std::size_t t = 0; t < nterms; ++t)
                while (terms[t].candidate() < 1e307 && near_equal(terms[t].candidate(), x))
                    terms[t].advance();
            cplx v0 = 0.0, v1 = 0.0;
            for (std::size_t t = 0; t < nterms; ++t) {
                const cplx v = terms[t].eval(x);
                v0 += terms[t].cb0 * v;
                v1 += terms[t].cb1 * v;
            }
            out0.nodes.push_back({x, v0});
            out1.nodes.push_back({x, v1});
        }
        if (out0.nodes.size() - base0 < 2) {
            out0.nodes.resize(base0);
            out1.nodes.resize(base1);
        }
        out0.offsets[m + 1] = out0.nodes.size();
        out1.offsets[m + 1] = out1.nodes.size();
    }
    out0.node_count = out0.nodes.size();
    out1.node_count = out1.nodes.size();
}

}  // namespace

SlopeBand initial_band(const SplineWindow& f, const FreqGrid& grid) {
    validate(f);
    const SlopeBand band{f.support_hi() / grid.top(), f.support_lo() / grid.start_freq};
    if (!(band.lo < band.hi))
        throw std::invalid_argument(
            "initial_band: w'_K/w_N >= w'_1/w_0; zero-pad the signal (pad_for_search)");
    return band;
}

FrequencySignal pad_for_search(const SplineWindow& f, const FrequencySignal& s, double factor) {
    validate(f);
    validate(s);
    if (factor < 1.0) throw std::invalid_argument("pad_for_search: factor must be >= 1");
    const double r = s.spacing;
    const std::size_t nc = s.samples.size();
    std::size_t target = static_cast<std::size_t>(std::ceil(factor * static_cast<double>(nc)));

    const auto below_cap = static_cast<std::size_t>(
        std::max(0.0, std::floor(s.start_freq / r) - 1.0));
    std::size_t pb = std::min((target - nc) / 2, below_cap);
    std::size_t pa = target - nc - pb;

    // grow the upper padding until the initial band exists
    const double need = f.support_hi() / f.support_lo();  // require w_N / w_0 > need
    for (int guard = 0;; ++guard) {
        const double w0 = s.start_freq - static_cast<double>(pb) * r;
        const double wN = s.omega(nc - 1) + static_cast<double>(pa) * r;
        if (wN / w0 > need) break;
        if (guard > 60) throw std::invalid_argument("pad_for_search: degenerate window");
        pa = pa == 0 ? nc : pa * 2;
    }

    FrequencySignal out;
    out.spacing = r;
    out.start_freq = s.start_freq - static_cast<double>(pb) * r;
    out.samples.assign(pb + nc + pa, cplx(0.0, 0.0));
    std::copy(s.samples.begin(), s.samples.end(), out.samples.begin() + static_cast<long>(pb));
    out.low_band = s.low_band;
    return out;
}

SearchResult search_coefficient(const SplineSequence& F0, const SearchConfig& cfg) {
    if (cfg.fourier_order < 1 || cfg.refine_radius < 0)
        throw std::invalid_argument("search: bad config");
    const double norm0 = seq_norm(F0);
    if (!(norm0 > 0.0)) throw std::invalid_argument("search: zero input");

    const FreqGrid grid = F0.grid();
    const int J = cfg.max_depth > 0
                      ? cfg.max_depth
                      : static_cast<int>(std::floor(std::log2(static_cast<double>(grid.count))));
    const std::vector<cplx> base =
        cfg.coeffs.empty() ? indicator_coeffs(cfg.fourier_order) : cfg.coeffs;
    if (base.size() != 2 * static_cast<std::size_t>(cfg.fourier_order) + 1)
        throw std::invalid_argument("search: coefficient count does not match the order");
    const int L = cfg.fourier_order;

    const double wmin = min_node_abscissa(F0);
    const double wmax = max_node_abscissa(F0);
    SlopeBand band{wmax / grid.top(), wmin / grid.start_freq};
    if (!(band.lo < band.hi))
        throw std::invalid_argument("search: initial band empty; zero-pad the signal");

    SplineSequence F = scale_pass(F0, band);
    SearchTrace trace;
    trace.peak_nodes = std::max(F0.node_count, F.node_count);
    const double T = grid.period();

    std::vector<int> bits;
    for (int j = 1; j <= J; ++j) {
        const int lev = j - 1;
        const double mid = slope_bisect(band);
        // a single grid slope per node line left: stop bisecting scale
        const bool saturated = (1.0 / band.lo - 1.0 / band.hi) <= F.spacing / wmax;
        std::vector<SlopeBand> bands;
        if (saturated)
            bands.push_back(band);
        else
            bands.assign({SlopeBand{band.lo, mid}, SlopeBand{mid, band.hi}});

        // children[bit][band]; time bit 0 keeps the earlier half of the
        // current interval, which is the complement filter R^1
        std::vector<SplineSequence> child(2 * bands.size(), make_sequence(F.grid()));
        const long unit = 1L << lev;
        std::vector<long> offs;
        std::vector<cplx> cb0, cb1;
        for (int l = -L; l <= L; ++l) {
            const cplx c_base = base[static_cast<std::size_t>(l + L)];
            const cplx c_comp = (l == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) - c_base;
            if (c_base == cplx(0.0, 0.0) && c_comp == cplx(0.0, 0.0)) continue;
            offs.push_back(unit * l);
            cb0.push_back(c_comp);
            cb1.push_back(c_base);
        }
        for (std::size_t bi = 0; bi < bands.size(); ++bi) {
            evaluate_children(F, offs, cb0, cb1, bands[bi], child[bi],
                              child[bands.size() + bi]);
            trace.peak_nodes = std::max({trace.peak_nodes, child[bi].node_count,
                                         child[bands.size() + bi].node_count});
        }

        SearchStep step;
        step.child_norms.resize(child.size());
        int best = 0;
        for (std::size_t i = 0; i < child.size(); ++i) {
            step.child_norms[i] = seq_norm(child[i]);
            if (step.child_norms[i] > step.child_norms[static_cast<std::size_t>(best)])
                best = static_cast<int>(i);
        }
        if (*std::max_element(step.child_norms.begin(), step.child_norms.end()) <
            1e-14 * norm0)
            throw std::runtime_error("search: numerically dead branch");

        const int bit = best >= static_cast<int>(bands.size()) ? 1 : 0;
        const std::size_t bi = static_cast<std::size_t>(best) % bands.size();
        bits.push_back(bit);
        band = bands[bi];
        F = std::move(child[static_cast<std::size_t>(best)]);

        step.chosen = best;
        step.band = band;
        step.bits = bits;
        step.node_count = F.node_count;
        trace.steps.push_back(std::move(step));
        trace.peak_nodes = std::max(trace.peak_nodes, F.node_count);
    }

    double frac = 0.0;
    for (std::size_t j = 0; j < bits.size(); ++j)
        frac += bits[j] * std::ldexp(1.0, -static_cast<int>(j) - 1);
    trace.time_cell = T * std::ldexp(1.0, -J);
    trace.final_band = band;

    SearchResult res;
    res.point = {T * (frac + std::ldexp(1.0, -J - 1)), std::log(slope_bisect(band))};
    res.trace = std::move(trace);
    return res;
}

Atom refine(const FrequencySignal& s, const SplineWindow& f, PhasePoint g, int radius,
            double time_step, double inv_slope_step) {
    const FreqGrid grid = s.grid();
    Atom best{g, cplx(0.0, 0.0)};
    double best_mod = -1.0;
    PhasePoint center = g;
    // re-center while the patch maximum sits on its boundary, so the local
    // peak is reached even when the bisection lands a few cells away
    for (int walk = 0; walk < 64; ++walk) {
        const double u0 = std::exp(-center.g2);
        int arg_i = 0, arg_k = 0;
        double round_mod = -1.0;
        Atom round_best{center, cplx(0.0, 0.0)};
        for (int i = -radius; i <= radius; ++i) {
            for (int k = -radius; k <= radius; ++k) {
                const double u = u0 + inv_slope_step * k;
                if (!(u > 0.0)) continue;
                const PhasePoint p{center.g1 + time_step * i,
                                   k == 0 ? center.g2 : -std::log(u)};
                const std::vector<cplx> v = atom_sample(f, p, grid);
                const double vn = vector_norm(v, s.spacing);
                if (vn == 0.0) continue;
                const cplx ip = inner_product(s, v);
                if (std::abs(ip) > round_mod) {
                    round_mod = std::abs(ip);
                    round_best = {p, ip / (vn * vn)};
                    arg_i = i;
                    arg_k = k;
                }
            }
        }
        if (round_mod > best_mod) {
            best_mod = round_mod;
            best = round_best;
        }
        const bool interior =
            radius == 0 || (std::abs(arg_i) < radius && std::abs(arg_k) < radius);
        if (interior || round_mod <= 0.0) break;
        center = round_best.point;
    }
    return best;
}

Atom refine(const FrequencySignal& s, const SplineWindow& f, const SearchResult& found,
            int radius) {
    const double u_step = 1.0 / found.trace.final_band.lo - 1.0 / found.trace.final_band.hi;
    return refine(s, f, found.point, radius, found.trace.time_cell, u_step);
}

}  // namespace wp4
