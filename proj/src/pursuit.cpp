#include "wp4/pursuit.hpp"

#include <cmath>

#include "wp4/transform.hpp"
#include "wp4/window.hpp"

namespace wp4 {

namespace {

constexpr double kGramRidge = 1e-10;

// Gaussian elimination with partial pivoting; A is overwritten.
std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> A, std::vector<cplx> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        if (A[col][col] == cplx(0.0, 0.0)) throw std::runtime_error("singular Gram system");
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx m = A[r][col] / A[col][col];
            if (m == cplx(0.0, 0.0)) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= A[i][c] * x[c];
        x[i] = acc / A[i][i];
    }
    return x;
}

std::vector<cplx> ls_coefficients(const FrequencySignal& s,
                                  const std::vector<std::vector<cplx>>& atoms) {
    const std::size_t k = atoms.size();
    const double r = s.spacing;
    std::vector<std::vector<cplx>> G(k, std::vector<cplx>(k));
    std::vector<cplx> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            cplx acc = 0.0;
            for (std::size_t n = 0; n < atoms[i].size(); ++n)
                acc += std::conj(atoms[i][n]) * atoms[j][n];
            G[i][j] = acc * r;
        }
        G[i][i] += kGramRidge;
        rhs[i] = inner_product(s, atoms[i]);
    }
    return solve_dense(std::move(G), std::move(rhs));
}

}  // namespace

Decomposition mp(const FrequencySignal& s, const SplineWindow& f, std::size_t n_atoms,
                 const SearchConfig& cfg) {
    validate(s);
    const SplineWindow fn = normalized_signal(f);
    Decomposition d;
    d.window = fn;
    FrequencySignal res = pad_for_search(fn, s);
    const double norm_in = signal_norm(res);
    d.residual_norms.push_back(norm_in);
    if (norm_in == 0.0) return d;

    for (std::size_t k = 0; k < n_atoms; ++k) {
        if (d.residual_norms.back() <= 1e-12 * norm_in) break;
        const SplineSequence F0 = tensor_init(fn, res);
        const SearchResult found = search_coefficient(F0, cfg);
        const Atom atom = refine(res, fn, found, cfg.refine_radius);
        const std::vector<cplx> v = atom_sample(fn, atom.point, res.grid());
        for (std::size_t n = 0; n < res.samples.size(); ++n)
            res.samples[n] -= atom.coeff * v[n];
        d.atoms.push_back(atom);
        d.residual_norms.push_back(signal_norm(res));
    }
    return d;
}

Decomposition omp(const FrequencySignal& s, const SplineWindow& f, std::size_t n_atoms,
                  const SearchConfig& cfg) {
    validate(s);
    const SplineWindow fn = normalized_signal(f);
    Decomposition d;
    d.window = fn;
    const FrequencySignal padded = pad_for_search(fn, s);
    FrequencySignal res = padded;
    const double norm_in = signal_norm(res);
    d.residual_norms.push_back(norm_in);
    if (norm_in == 0.0) return d;

    std::vector<std::vector<cplx>> atoms;
    for (std::size_t k = 0; k < n_atoms; ++k) {
        if (d.residual_norms.back() <= 1e-12 * norm_in) break;
        const SplineSequence F0 = tensor_init(fn, res);
        const SearchResult found = search_coefficient(F0, cfg);
        const Atom atom = refine(res, fn, found, cfg.refine_radius);
        d.atoms.push_back(atom);
        atoms.push_back(atom_sample(fn, atom.point, padded.grid()));

        const std::vector<cplx> c = ls_coefficients(padded, atoms);
        res = padded;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            d.atoms[i].coeff = c[i];
            for (std::size_t n = 0; n < res.samples.size(); ++n)
                res.samples[n] -= c[i] * atoms[i][n];
        }
        d.residual_norms.push_back(signal_norm(res));
    }
    return d;
}

std::vector<cplx> project_coefficients(const FrequencySignal& s, const SplineWindow& f,
                                       const std::vector<PhasePoint>& points) {
    std::vector<std::vector<cplx>> atoms;
    atoms.reserve(points.size());
    for (const PhasePoint& p : points) atoms.push_back(atom_sample(f, p, s.grid()));
    return ls_coefficients(s, atoms);
}

std::pair<SplineWindow, SplineWindow> make_window_family(const SplineWindow& f1, int stretch) {
    if (stretch < 1) throw std::invalid_argument("make_window_family: stretch must be >= 1");
    SplineWindow f2 = normalized_signal(contracted_about_center(f1, 0.5));
    SplineWindow f3 = normalized_signal(contracted_about_center(f1, 0.5 / stretch));
    return {std::move(f2), std::move(f3)};
}

FrequencySignal vocoder_stretch(const FrequencySignal& s, const SplineWindow& f1,
                                const VocoderConfig& vcfg, const SearchConfig& scfg) {
    validate(s);
    if (vcfg.stretch < 1) throw std::invalid_argument("vocoder_stretch: stretch must be >= 1");
    const int T = vcfg.stretch;
    const SplineWindow fn1 = normalized_signal(f1);
    const auto [f2, f3] = make_window_family(fn1, T);

    FrequencySignal out;
    out.start_freq = s.start_freq;
    out.spacing = s.spacing / T;
    out.samples.assign(static_cast<std::size_t>(T) * (s.samples.size() - 1) + 1,
                       cplx(0.0, 0.0));

    // low frequencies are not modeled by atoms; stretch them by naive
    // resampling onto the finer grid
    if (!s.low_band.empty()) {
        const std::size_t nlo = s.low_band.size();
        const std::size_t nlo_out = static_cast<std::size_t>(T) * nlo;
        out.low_band.resize(nlo_out);
        for (std::size_t i = 0; i < nlo_out; ++i) {
            const double pos = static_cast<double>(i) / T;
            const std::size_t i0 = std::min(static_cast<std::size_t>(pos), nlo - 1);
            const std::size_t i1 = std::min(i0 + 1, nlo - 1);
            const double t = pos - static_cast<double>(i0);
            out.low_band[i] = s.low_band[i0] * (1.0 - t) + s.low_band[i1] * t;
        }
    }
    if (vcfg.n_atoms == 0) return out;

    const Decomposition d = mp(s, fn1, vcfg.n_atoms, scfg);
    const FreqGrid in_grid = s.grid();
    const FreqGrid out_grid = out.grid();
    for (const Atom& a : d.atoms) {
        const std::vector<cplx> v2 = atom_sample(f2, a.point, in_grid);
        const double n2 = vector_norm(v2, s.spacing);
        if (n2 == 0.0) continue;
        const cplx unit = inner_product(s, v2) / n2;  // exp(i theta) c against unit f2 atom
        const double theta = std::arg(unit);
        const cplx stretched = std::abs(unit) * cplx(std::cos(T * theta), std::sin(T * theta));

        const PhasePoint p{T * a.point.g1, a.point.g2};
        const std::vector<cplx> w3 = atom_sample(f3, p, out_grid);
        const double n3 = vector_norm(w3, out.spacing);
        if (n3 == 0.0) continue;
        const cplx weight = stretched / n3;
        for (std::size_t n = 0; n < out.samples.size(); ++n) out.samples[n] += weight * w3[n];
    }
    return out;
}

}  // namespace wp4
