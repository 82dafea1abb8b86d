#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "wp4/window.hpp"

using namespace wp4;

TEST_CASE("window signal norm: triangle closed form") {
    const SplineWindow f = oracle::triangle(1.0, 2.0, 3.0);
    CHECK(window_norm_signal(f) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    // cross-check against a fine Riemann sum
    CHECK(window_norm_signal(f) ==
          doctest::Approx(std::sqrt(oracle::window_energy_riemann(f, false))).epsilon(1e-5));
}

TEST_CASE("window signal norm: zero window and homogeneity") {
    SplineWindow z;
    z.nodes = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
    CHECK(window_norm_signal(z) == 0.0);

    const SplineWindow f = oracle::triangle(1.0, 2.0, 3.0);
    CHECK(window_norm_signal(scaled(f, 2.0)) ==
          doctest::Approx(2.0 * window_norm_signal(f)).epsilon(1e-12));
}

TEST_CASE("duflo norm: triangle closed form") {
    const SplineWindow f = oracle::triangle(1.0, 2.0, 3.0);
    const double expected =
        std::sqrt((-0.5 + std::log(2.0)) + (9.0 * std::log(1.5) - 3.5));
    CHECK(duflo_norm(f) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(duflo_norm(f) == doctest::Approx(0.5851).epsilon(1e-3));
    CHECK(duflo_norm(f) ==
          doctest::Approx(std::sqrt(oracle::window_energy_riemann(f, true))).epsilon(1e-5));
}

TEST_CASE("duflo norm: zero window") {
    SplineWindow z;
    z.nodes = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
    CHECK(duflo_norm(z) == 0.0);
}

TEST_CASE("duflo norm scales as exp(g2/2) under dilation") {
    const SplineWindow f = oracle::triangle(1.0, 2.0, 3.0);
    const double g2 = 0.7;
    // pi_2(g2) f in frequency: exp(g2/2) f(exp(g2) w)
    SplineWindow dil = f;
    for (WindowNode& n : dil.nodes) {
        n.abscissa = n.abscissa * std::exp(-g2);
        n.value = n.value * std::exp(g2 / 2.0);
    }
    CHECK(duflo_norm(dil) == doctest::Approx(std::exp(g2 / 2.0) * duflo_norm(f)).epsilon(1e-12));
}

TEST_CASE("window validation") {
    SplineWindow f;
    f.nodes = {{1.0, 0.0}, {2.0, 1.0}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);  // too few nodes
    f.nodes = {{2.0, 0.0}, {1.0, 1.0}, {3.0, 0.0}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);  // not increasing
    f.nodes = {{1.0, 0.5}, {2.0, 1.0}, {3.0, 0.0}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);  // nonzero endpoint
    f.nodes = {{-1.0, 0.0}, {2.0, 1.0}, {3.0, 0.0}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);  // negative abscissa
}

TEST_CASE("contraction about the center halves the support") {
    const SplineWindow f = oracle::triangle(8.0, 16.0, 28.0);
    const SplineWindow g = contracted_about_center(f, 0.5);
    CHECK(g.center() == doctest::Approx(16.0));
    CHECK(g.support_hi() - g.support_lo() ==
          doctest::Approx(0.5 * (f.support_hi() - f.support_lo())).epsilon(1e-12));
}

TEST_CASE("normalization helpers") {
    const SplineWindow f = oracle::triangle(1.0, 2.0, 3.0, 4.2);
    CHECK(window_norm_signal(normalized_signal(f)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(duflo_norm(normalized_duflo(f)) == doctest::Approx(1.0).epsilon(1e-12));
}
