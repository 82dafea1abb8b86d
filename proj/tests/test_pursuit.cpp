#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "wp4/pursuit.hpp"
#include "wp4/transform.hpp"
#include "wp4/window.hpp"

using namespace wp4;

namespace {

// unit-atom coefficient magnitude for the energy identity
double unit_coeff_mod(const Decomposition& d, std::size_t k, const FreqGrid& grid) {
    const std::vector<cplx> v = atom_sample(d.window, d.atoms[k].point, grid);
    return std::abs(d.atoms[k].coeff) * vector_norm(v, grid.spacing);
}

FreqGrid padded_grid_of(const SplineWindow& f, const FrequencySignal& s) {
    return pad_for_search(normalized_signal(f), s).grid();
}

}  // namespace

TEST_CASE("mp on a single planted atom") {
    const oracle::PaddedGrid pg = oracle::make_padded_grid(128);
    const SplineWindow f = normalized_signal(oracle::content_window(pg, 0.125));
    FrequencySignal s = oracle::empty_signal(pg);
    const PhasePoint g{0.4 * s.grid().period(),
                       oracle::g2_for_frequency(f, 1.45 * oracle::content_lo_freq(pg))};
    oracle::add_atom(s, f, g, std::polar(1.7, 0.3));

    const Decomposition d = mp(s, f, 1, SearchConfig{});
    REQUIRE(d.atoms.size() == 1);
    REQUIRE(d.residual_norms.size() == 2);
    CHECK(d.residual_norms[1] < 0.1 * d.residual_norms[0]);
}

TEST_CASE("mp on the zero signal returns the empty decomposition") {
    const oracle::PaddedGrid pg = oracle::make_padded_grid(32);
    const SplineWindow f = oracle::content_window(pg);
    const Decomposition d = mp(oracle::empty_signal(pg), f, 4, SearchConfig{});
    CHECK(d.atoms.empty());
}

TEST_CASE("mp residual norms are non-increasing and satisfy the energy identity") {
    std::mt19937 rng(55);
    const oracle::PaddedGrid pg = oracle::make_padded_grid(128);
    const SplineWindow f = oracle::content_window(pg, 0.2);
    const FrequencySignal s = oracle::random_signal(pg, rng);

    const Decomposition d = mp(s, f, 6, SearchConfig{});
    const FreqGrid grid = padded_grid_of(f, s);
    REQUIRE(d.residual_norms.size() == d.atoms.size() + 1);
    for (std::size_t k = 0; k < d.atoms.size(); ++k) {
        CHECK(d.residual_norms[k + 1] <= d.residual_norms[k] + 1e-12);
        const double lhs = std::pow(d.residual_norms[k], 2) - std::pow(d.residual_norms[k + 1], 2);
        const double rhs = std::pow(unit_coeff_mod(d, k, grid), 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("decompose-synthesize round trip is exact for on-lattice atoms") {
    const oracle::PaddedGrid pg = oracle::make_padded_grid(128);
    const SplineWindow f = normalized_signal(oracle::content_window(pg, 0.125));
    FrequencySignal s = oracle::empty_signal(pg);

    // atoms on the bisection lattice of the padded grid mp searches on,
    // with disjoint dilated supports
    const FreqGrid pgrid = pad_for_search(f, s).grid();
    const int J = static_cast<int>(std::floor(std::log2(static_cast<double>(pgrid.count))));
    const PhasePoint a1 = oracle::lattice_point(f, pgrid, J, 0.27, 0.35);
    const PhasePoint a2 = oracle::lattice_point(f, pgrid, J, 0.66, 0.60);
    const double lo1 = f.support_lo() * std::exp(-a1.g2), hi1 = f.support_hi() * std::exp(-a1.g2);
    const double lo2 = f.support_lo() * std::exp(-a2.g2), hi2 = f.support_hi() * std::exp(-a2.g2);
    REQUIRE((hi1 < lo2 || hi2 < lo1));  // orthogonal atoms
    oracle::add_atom(s, f, a1, cplx(1.0, 0.2));
    oracle::add_atom(s, f, a2, cplx(-0.6, 0.9));
    REQUIRE(signal_norm(s) > 0.5);  // both atoms inside the grid

    const Decomposition d = mp(s, f, 8, SearchConfig{});
    const FrequencySignal rec = synthesize(d.atoms, d.window, s.grid());
    double err = 0.0, ref = 0.0;
    for (std::size_t n = 0; n < s.samples.size(); ++n) {
        err += std::norm(rec.samples[n] - s.samples[n]);
        ref += std::norm(s.samples[n]);
    }
    CHECK(std::sqrt(err / ref) < 1e-6);
}

TEST_CASE("omp first atom coincides with mp") {
    std::mt19937 rng(66);
    const oracle::PaddedGrid pg = oracle::make_padded_grid(96);
    const SplineWindow f = oracle::content_window(pg, 0.2);
    const FrequencySignal s = oracle::random_signal(pg, rng);

    const Decomposition a = mp(s, f, 1, SearchConfig{});
    const Decomposition b = omp(s, f, 1, SearchConfig{});
    REQUIRE(a.atoms.size() == 1);
    REQUIRE(b.atoms.size() == 1);
    CHECK(a.atoms[0].point.g1 == b.atoms[0].point.g1);
    CHECK(a.atoms[0].point.g2 == b.atoms[0].point.g2);
    CHECK(std::abs(a.atoms[0].coeff - b.atoms[0].coeff) < 1e-8 * std::abs(a.atoms[0].coeff));
}

TEST_CASE("omp equals mp for atoms with disjoint frequency supports") {
    const oracle::PaddedGrid pg = oracle::make_padded_grid(256);
    const SplineWindow f = normalized_signal(oracle::content_window(pg, 0.08));
    FrequencySignal s = oracle::empty_signal(pg);
    const double T = s.grid().period();
    // far apart in scale so the dilated supports do not overlap
    oracle::add_atom(s, f, {0.3 * T, oracle::g2_for_frequency(f, 1.15 * oracle::content_lo_freq(pg))},
                     cplx(1.0, 0.0));
    oracle::add_atom(s, f, {0.6 * T, oracle::g2_for_frequency(f, 1.8 * oracle::content_lo_freq(pg))},
                     cplx(0.8, -0.4));

    const Decomposition a = mp(s, f, 2, SearchConfig{});
    const Decomposition b = omp(s, f, 2, SearchConfig{});
    REQUIRE(a.atoms.size() == 2);
    REQUIRE(b.atoms.size() == 2);
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(std::abs(a.atoms[k].coeff - b.atoms[k].coeff) < 1e-8);
}

TEST_CASE("omp projection beats mp on the same atom prefix") {
    std::mt19937 rng(77);
    const oracle::PaddedGrid pg = oracle::make_padded_grid(128);
    const SplineWindow f = oracle::content_window(pg, 0.2);
    const FrequencySignal s = oracle::random_signal(pg, rng);

    const Decomposition d = mp(s, f, 5, SearchConfig{});
    const FrequencySignal padded = pad_for_search(normalized_signal(f), s);
    std::vector<PhasePoint> prefix;
    for (std::size_t k = 0; k < d.atoms.size(); ++k) {
        prefix.push_back(d.atoms[k].point);
        const std::vector<cplx> c = project_coefficients(padded, d.window, prefix);
        FrequencySignal res = padded;
        for (std::size_t i = 0; i <= k; ++i) {
            const std::vector<cplx> v = atom_sample(d.window, prefix[i], padded.grid());
            for (std::size_t n = 0; n < res.samples.size(); ++n) res.samples[n] -= c[i] * v[n];
        }
        CHECK(signal_norm(res) <= d.residual_norms[k + 1] + 1e-9);
    }
}

TEST_CASE("omp never repeats an atom") {
    std::mt19937 rng(88);
    const oracle::PaddedGrid pg = oracle::make_padded_grid(128);
    const SplineWindow f = oracle::content_window(pg, 0.2);
    const FrequencySignal s = oracle::random_signal(pg, rng);
    const Decomposition d = omp(s, f, 6, SearchConfig{});
    for (std::size_t i = 0; i < d.atoms.size(); ++i)
        for (std::size_t j = i + 1; j < d.atoms.size(); ++j) {
            const bool same = d.atoms[i].point.g1 == d.atoms[j].point.g1 &&
                              d.atoms[i].point.g2 == d.atoms[j].point.g2;
            CHECK_FALSE(same);
        }
}

TEST_CASE("make_window_family") {
    const SplineWindow f1 = oracle::triangle(8.0, 16.0, 28.0, 2.0);

    SUBCASE("supports contract exactly") {
        const auto [f2, f3] = make_window_family(f1, 4);
        const double d1 = f1.support_hi() - f1.support_lo();
        CHECK(f2.support_hi() - f2.support_lo() == doctest::Approx(d1 / 2.0).epsilon(1e-14));
        CHECK(f3.support_hi() - f3.support_lo() == doctest::Approx(d1 / 8.0).epsilon(1e-14));
        CHECK(f2.center() == doctest::Approx(f1.center()));
        CHECK(f3.center() == doctest::Approx(f1.center()));
        CHECK(window_norm_signal(f2) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(window_norm_signal(f3) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("stretch one collapses the pair") {
        const auto [f2, f3] = make_window_family(f1, 1);
        REQUIRE(f2.nodes.size() == f3.nodes.size());
        for (std::size_t k = 0; k < f2.nodes.size(); ++k) {
            CHECK(f2.nodes[k].abscissa == f3.nodes[k].abscissa);
            CHECK(f2.nodes[k].value == f3.nodes[k].value);
        }
    }
}

TEST_CASE("vocoder with stretch one reproduces the direct sparse synthesis") {
    const oracle::PaddedGrid pg = oracle::make_padded_grid(128);
    const SplineWindow f1 = oracle::content_window(pg, 0.25);
    FrequencySignal s = oracle::empty_signal(pg);
    const SplineWindow fu = normalized_signal(f1);
    const double T = s.grid().period();
    oracle::add_atom(s, fu, {0.35 * T, oracle::g2_for_frequency(fu, 1.4 * oracle::content_lo_freq(pg))},
                     cplx(1.0, 0.5));

    VocoderConfig vc;
    vc.stretch = 1;
    vc.n_atoms = 3;
    const FrequencySignal out = vocoder_stretch(s, f1, vc, SearchConfig{});

    // reference: pursue with f1, recompute against f2, synthesize with f3 = f2
    const auto [f2, f3] = make_window_family(fu, 1);
    const Decomposition d = mp(s, fu, vc.n_atoms, SearchConfig{});
    FrequencySignal ref;
    ref.start_freq = s.start_freq;
    ref.spacing = s.spacing;
    ref.samples.assign(s.samples.size(), cplx(0.0, 0.0));
    for (const Atom& a : d.atoms) {
        const std::vector<cplx> v2 = atom_sample(f2, a.point, s.grid());
        const double n2 = vector_norm(v2, s.spacing);
        if (n2 == 0.0) continue;
        const cplx unit = inner_product(s, v2) / n2;
        const std::vector<cplx> w3 = atom_sample(f3, a.point, s.grid());
        const double n3 = vector_norm(w3, s.spacing);
        for (std::size_t n = 0; n < ref.samples.size(); ++n)
            ref.samples[n] += unit / n3 * w3[n];
    }
    REQUIRE(out.samples.size() == ref.samples.size());
    double err = 0.0, nrm = 0.0;
    for (std::size_t n = 0; n < ref.samples.size(); ++n) {
        err += std::norm(out.samples[n] - ref.samples[n]);
        nrm += std::norm(ref.samples[n]);
    }
    CHECK(std::sqrt(err) <= 1e-10 * std::sqrt(nrm));
}

TEST_CASE("vocoder of silence is silence") {
    const oracle::PaddedGrid pg = oracle::make_padded_grid(64);
    const SplineWindow f1 = oracle::content_window(pg);
    VocoderConfig vc;
    vc.stretch = 3;
    vc.n_atoms = 4;
    const FrequencySignal out = vocoder_stretch(oracle::empty_signal(pg), f1, vc, SearchConfig{});
    for (const cplx& v : out.samples) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("vocoder with zero atoms returns the zero model") {
    const oracle::PaddedGrid pg = oracle::make_padded_grid(64);
    const SplineWindow f1 = oracle::content_window(pg);
    std::mt19937 rng(99);
    VocoderConfig vc;
    vc.stretch = 2;
    vc.n_atoms = 0;
    const FrequencySignal out =
        vocoder_stretch(oracle::random_signal(pg, rng), f1, vc, SearchConfig{});
    for (const cplx& v : out.samples) CHECK(std::abs(v) == 0.0);
}
