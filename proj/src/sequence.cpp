#include "wp4/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wp4 {

namespace {

constexpr double kMergeTol = 1e-12;  // relative, on abscissae

bool near_equal(double a, double b) {
    return std::abs(a - b) <= kMergeTol * std::max(std::abs(a), std::abs(b));
}

// interpolation inside the span, zero outside; nodes hold the edge values.
// hint_hi: first index with c[hint_hi].x >= x (may be c.size())
cplx eval_at(CrossSection c, double x, std::size_t hint_hi) {
    if (hint_hi == 0 || hint_hi >= c.size()) return {};
    const SeqNode& lo = c[hint_hi - 1];
    const SeqNode& hi = c[hint_hi];
    const double t = (x - lo.x) / (hi.x - lo.x);
    return lo.v + (hi.v - lo.v) * t;
}

// out += ca*a + cb*b on the union of abscissae
void combine_into(std::vector<SeqNode>& out, CrossSection a, cplx ca, CrossSection b, cplx cb) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (i < a.size() && j < b.size() && near_equal(a[i].x, b[j].x)) {
            out.push_back({a[i].x, ca * a[i].v + cb * b[j].v});
            ++i;
            ++j;
        } else if (j >= b.size() || (i < a.size() && a[i].x < b[j].x)) {
            out.push_back({a[i].x, ca * a[i].v + cb * eval_at(b, a[i].x, j)});
            ++i;
        } else {
            out.push_back({b[j].x, cb * b[j].v + ca * eval_at(a, b[j].x, i)});
            ++j;
        }
    }
}

void restrict_into(std::vector<SeqNode>& out, CrossSection c, double lo, double hi) {
    if (c.empty() || !(lo < hi)) return;
    if (lo >= c.back().x || hi <= c.front().x) return;
    const std::size_t base = out.size();
    if (lo <= c.front().x && hi >= c.back().x) {
        out.insert(out.end(), c.begin(), c.end());
        return;
    }
    auto it_lo = std::lower_bound(c.begin(), c.end(), lo,
                                  [](const SeqNode& n, double v) { return n.x < v; });
    if (lo > c.front().x && !near_equal(it_lo->x, lo))
        out.push_back({lo, eval_at(c, lo, static_cast<std::size_t>(it_lo - c.begin()))});
    for (auto it = it_lo; it != c.end() && it->x <= hi; ++it) {
        if (out.size() > base && near_equal(out.back().x, it->x)) continue;
        out.push_back(*it);
    }
    if (hi < c.back().x) {
        auto it_hi = std::lower_bound(c.begin(), c.end(), hi,
                                      [](const SeqNode& n, double v) { return n.x < v; });
        if (!(out.size() > base && near_equal(out.back().x, hi)))
            out.push_back({hi, eval_at(c, hi, static_cast<std::size_t>(it_hi - c.begin()))});
    }
    if (out.size() - base < 2) out.resize(base);  // a single node carries no energy
}

// int over the segment of |v0 + (v1-v0) t|^2 / (x0 + d t) * d dt, t in [0,1]
double segment_weighted_energy(double x0, double d, cplx v0, cplx v1) {
    const cplx dv = v1 - v0;
    const double a0 = std::norm(v0);
    const double a1 = 2.0 * (v0 * std::conj(dv)).real();
    const double a2 = std::norm(dv);
    const double q = d / x0;
    if (q < 1e-8) {
        return d / x0 * (a0 + a1 / 2.0 + a2 / 3.0);
    }
    const double L = std::log1p(q);
    const double I1 = 1.0 - L / q;
    const double I2 = 0.5 - 1.0 / q + L / (q * q);
    return a0 * L + a1 * I1 + a2 * I2;
}

void check_same_grid(const SplineSequence& F, const SplineSequence& G) {
    if (F.start_freq != G.start_freq || F.spacing != G.spacing ||
        F.section_count() != G.section_count())
        throw std::invalid_argument("spline sequences live on different grids");
}

}  // namespace

cplx cs_eval(CrossSection c, double x) {
    if (c.empty() || x < c.front().x || x > c.back().x) return {};
    auto it = std::lower_bound(c.begin(), c.end(), x,
                               [](const SeqNode& n, double v) { return n.x < v; });
    if (it != c.end() && it->x == x) return it->v;
    return eval_at(c, x, static_cast<std::size_t>(it - c.begin()));
}

SplineSequence make_sequence(const FreqGrid& grid) {
    SplineSequence F;
    F.start_freq = grid.start_freq;
    F.spacing = grid.spacing;
    F.offsets.assign(grid.count + 1, 0);
    return F;
}

SplineSequence make_sequence(const FreqGrid& grid,
                             const std::vector<std::vector<SeqNode>>& sections) {
    if (sections.size() != grid.count)
        throw std::invalid_argument("make_sequence: section count does not match the grid");
    SplineSequence F = make_sequence(grid);
    for (std::size_t n = 0; n < sections.size(); ++n) {
        F.nodes.insert(F.nodes.end(), sections[n].begin(), sections[n].end());
        F.offsets[n + 1] = F.nodes.size();
    }
    F.node_count = F.nodes.size();
    return F;
}

void validate(SlopeBand band) {
    if (!(band.lo > 0.0) || !(band.lo < band.hi))
        throw std::invalid_argument("SlopeBand: need 0 < lo < hi");
}

double slope_bisect(SlopeBand band) {
    validate(band);
    return 2.0 / (1.0 / band.lo + 1.0 / band.hi);
}

std::vector<cplx> indicator_coeffs(int order) {
    if (order < 1) throw std::invalid_argument("indicator_coeffs: order must be >= 1");
    std::vector<cplx> c(2 * static_cast<std::size_t>(order) + 1, cplx(0.0, 0.0));
    c[static_cast<std::size_t>(order)] = 0.5;
    for (int l = -order; l <= order; ++l)
        if (l % 2 != 0)
            c[static_cast<std::size_t>(l + order)] = cplx(0.0, 1.0 / (std::numbers::pi * l));
    return c;
}

TrigFilter make_time_filter(int order, int level, int bit) {
    if (level < 0 || (bit != 0 && bit != 1))
        throw std::invalid_argument("make_time_filter: bad level or bit");
    TrigFilter f;
    f.order = order;
    f.level = level;
    f.bit = bit;
    f.coeffs = indicator_coeffs(order);
    if (bit == 1) {
        for (cplx& c : f.coeffs) c = -c;
        f.coeffs[static_cast<std::size_t>(order)] += 1.0;
    }
    return f;
}

SplineSequence tensor_init(const SplineWindow& f, const FrequencySignal& s) {
    validate(f);
    validate(s);
    SplineSequence F = make_sequence(s.grid());
    std::size_t nonzero = 0;
    for (const cplx& v : s.samples) nonzero += v == cplx(0.0, 0.0) ? 0 : 1;
    F.nodes.reserve(nonzero * f.nodes.size());
    for (std::size_t n = 0; n < s.samples.size(); ++n) {
        const cplx sv = s.samples[n];
        if (sv != cplx(0.0, 0.0))
            for (const WindowNode& w : f.nodes) F.nodes.push_back({w.abscissa, sv * w.value});
        F.offsets[n + 1] = F.nodes.size();
    }
    F.node_count = F.nodes.size();
    return F;
}

double seq_norm(const SplineSequence& F) {
    double acc = 0.0;
    for (std::size_t n = 0; n < F.section_count(); ++n) {
        const CrossSection c = F.section(n);
        for (std::size_t k = 1; k < c.size(); ++k) {
            const double d = c[k].x - c[k - 1].x;
            if (d > 0.0) acc += segment_weighted_energy(c[k - 1].x, d, c[k - 1].v, c[k].v);
        }
    }
    return std::sqrt(F.spacing * acc);
}

SplineSequence scale_pass(const SplineSequence& F, SlopeBand band) {
    validate(band);
    SplineSequence G = make_sequence(F.grid());
    G.nodes.reserve(F.nodes.size() + 2 * F.section_count());
    for (std::size_t n = 0; n < F.section_count(); ++n) {
        const double w = F.omega(n);
        restrict_into(G.nodes, F.section(n), band.lo * w, band.hi * w);
        G.offsets[n + 1] = G.nodes.size();
    }
    G.node_count = G.nodes.size();
    return G;
}

SplineSequence time_shift(const SplineSequence& F, long steps, std::size_t* dropped) {
    SplineSequence G = make_sequence(F.grid());
    G.nodes.reserve(F.nodes.size());
    std::size_t lost = 0;
    const long N = static_cast<long>(F.section_count()) - 1;
    for (long m = 0; m <= N; ++m) {
        const long n = m - steps;
        if (n >= 0 && n <= N) {
            const CrossSection c = F.section(static_cast<std::size_t>(n));
            if (!c.empty()) {
                const double sc = F.omega(static_cast<std::size_t>(m)) /
                                  F.omega(static_cast<std::size_t>(n));
                for (const SeqNode& node : c) G.nodes.push_back({node.x * sc, node.v});
            }
        }
        G.offsets[static_cast<std::size_t>(m) + 1] = G.nodes.size();
    }
    // sections transported beyond either end of the grid
    if (steps != 0) {
        const long lo = steps > 0 ? std::max(0L, N - steps + 1) : 0;
        const long hi = steps > 0 ? N : std::min(N, -steps - 1);
        for (long n = lo; n <= hi; ++n)
            if (F.offsets[static_cast<std::size_t>(n) + 1] >
                F.offsets[static_cast<std::size_t>(n)])
                ++lost;
    }
    if (dropped) *dropped = lost;
    G.node_count = G.nodes.size();
    return G;
}

SplineSequence time_pass(const SplineSequence& F, const TrigFilter& filter) {
    SplineSequence acc = make_sequence(F.grid());
    const long unit = 1L << filter.level;
    for (int l = -filter.order; l <= filter.order; ++l) {
        const cplx cl = filter.coeff(l);
        if (cl == cplx(0.0, 0.0)) continue;
        seq_accumulate(acc, cl, time_shift(F, unit * l));
    }
    return acc;
}

SplineSequence seq_add(const SplineSequence& F, const SplineSequence& G) {
    check_same_grid(F, G);
    SplineSequence out = make_sequence(F.grid());
    out.nodes.reserve(F.nodes.size() + G.nodes.size());
    for (std::size_t n = 0; n < F.section_count(); ++n) {
        combine_into(out.nodes, F.section(n), 1.0, G.section(n), 1.0);
        out.offsets[n + 1] = out.nodes.size();
    }
    out.node_count = out.nodes.size();
    return out;
}

SplineSequence seq_scale(SplineSequence F, cplx lambda) {
    for (SeqNode& n : F.nodes) n.v *= lambda;
    return F;
}

void seq_accumulate(SplineSequence& acc, cplx lambda, const SplineSequence& F) {
    check_same_grid(acc, F);
    if (F.nodes.empty()) return;
    if (acc.nodes.empty()) {
        acc.nodes = F.nodes;
        acc.offsets = F.offsets;
        for (SeqNode& n : acc.nodes) n.v *= lambda;
        acc.node_count = acc.nodes.size();
        return;
    }
    std::vector<SeqNode> nodes;
    nodes.reserve(acc.nodes.size() + F.nodes.size());
    std::vector<std::uint64_t> offsets(acc.offsets.size(), 0);
    for (std::size_t n = 0; n < acc.section_count(); ++n) {
        combine_into(nodes, acc.section(n), 1.0, F.section(n), lambda);
        offsets[n + 1] = nodes.size();
    }
    acc.nodes = std::move(nodes);
    acc.offsets = std::move(offsets);
    acc.node_count = acc.nodes.size();
}

cplx eval_wavelet_coeff(const SplineSequence& F, PhasePoint g) {
    const double dil = std::exp(g.g2);
    const double amp = std::sqrt(dil);
    cplx acc = 0.0;
    for (std::size_t n = 0; n < F.section_count(); ++n) {
        const CrossSection c = F.section(n);
        if (c.empty()) continue;
        const double w = F.omega(n);
        const cplx h = cs_eval(c, dil * w);
        if (h == cplx(0.0, 0.0)) continue;
        const double ph = 2.0 * std::numbers::pi * g.g1 * w;
        acc += h * cplx(std::cos(ph), std::sin(ph));
    }
    return F.spacing * amp * acc;
}

}  // namespace wp4
