#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "coldplasma/grid.hpp"

using namespace coldplasma;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double max_abs(const Field& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

// Smooth periodic-compatible test field: a few decaying bumps plus box modes.
Field random_smooth(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), pos(-3.0, 3.0), wid(0.5, 2.0);
    Field f(g.nodes.size(), 0.0);
    for (int b = 0; b < 4; ++b) {
        const double a = amp(rng), c = pos(rng), w = wid(rng);
        for (size_t j = 0; j < f.size(); ++j) {
            const double y = (g.nodes[j] - c) * w;
            f[j] += a * std::exp(-y * y);
        }
    }
    const double k = std::numbers::pi / g.half_width;
    for (size_t j = 0; j < f.size(); ++j) f[j] += 0.3 * std::sin(2.0 * k * g.nodes[j]);
    return f;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("make_grid matches the reference spacing") {
    const Grid g = make_grid(10.0, 2048);
    CHECK(g.dx == 10.0 / 1024.0);  // 10/2^10, exactly representable
    CHECK(g.nodes.front() == -10.0);
    CHECK(g.nodes[1024] == 0.0);
    for (size_t j = 1; j < g.nodes.size(); ++j) CHECK(g.nodes[j] > g.nodes[j - 1]);
    CHECK(g.dx * g.n == doctest::Approx(2.0 * g.half_width).epsilon(1e-15));
}

TEST_CASE("make_grid small box") {
    const Grid g = make_grid(1.0, 8);
    REQUIRE(g.n == 8);
    const double want[] = {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75};
    for (int j = 0; j < 8; ++j) CHECK(g.nodes[j] == doctest::Approx(want[j]).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad parameters") {
    CHECK_THROWS_AS(make_grid(10.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(10.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 16), std::invalid_argument);
}

TEST_CASE("derivative of a constant vanishes") {
    const Grid g = make_grid(10.0, 256);
    const Field f(256, 3.7);
    CHECK(max_abs(derivative(f, g)) <= 1e-13);
}

TEST_CASE("derivative is exact for a single Fourier mode") {
    const Grid g = make_grid(10.0, 256);
    const double k = std::numbers::pi / g.half_width;
    Field f(g.nodes.size()), want(g.nodes.size());
    for (size_t j = 0; j < f.size(); ++j) {
        f[j] = std::sin(k * g.nodes[j]);
        want[j] = k * std::cos(k * g.nodes[j]);
    }
    CHECK(max_abs_diff(derivative(f, g), want) <= 1e-12);
}

TEST_CASE("derivative matches the analytic sech derivative") {
    const Grid g = make_grid(10.0, 2048);
    Field f(g.nodes.size()), want(g.nodes.size());
    for (size_t j = 0; j < f.size(); ++j) {
        const double x = g.nodes[j];
        f[j] = 1.0 / std::cosh(7.0 * x);
        want[j] = -7.0 * std::tanh(7.0 * x) / std::cosh(7.0 * x);
    }
    CHECK(max_abs_diff(derivative(f, g), want) <= 1e-8);
}

TEST_CASE("sech derivative error drops at least 4x per refinement") {
    double prev = 0.0;
    for (int n : {128, 256}) {
        const Grid g = make_grid(10.0, n);
        Field f(g.nodes.size()), want(g.nodes.size());
        for (size_t j = 0; j < f.size(); ++j) {
            const double x = g.nodes[j];
            f[j] = 1.0 / std::cosh(7.0 * x);
            want[j] = -7.0 * std::tanh(7.0 * x) / std::cosh(7.0 * x);
        }
        const double err = max_abs_diff(derivative(f, g), want);
        if (prev > 0.0) CHECK(prev / err >= 4.0);
        prev = err;
    }
}

TEST_CASE("integrate: constants, sech mass, mean-zero mode") {
    const Grid g = make_grid(10.0, 2048);
    CHECK(integrate(Field(2048, 1.0), g) == doctest::Approx(20.0).epsilon(1e-14));

    Field sech7(g.nodes.size()), sine(g.nodes.size());
    for (size_t j = 0; j < sech7.size(); ++j) {
        sech7[j] = 1.0 / std::cosh(7.0 * g.nodes[j]);
        sine[j] = std::sin(2.0 * std::numbers::pi * g.nodes[j] / g.half_width);
    }
    CHECK(std::abs(integrate(sech7, g) - std::numbers::pi / 7.0) <= 1e-10);
    CHECK(std::abs(integrate(sine, g)) <= 1e-12);
}

TEST_CASE("interpolate reproduces samples and analytic midpoints") {
    const Grid g = make_grid(10.0, 2048);
    Field f(g.nodes.size());
    const double k = std::numbers::pi / g.half_width;
    for (size_t j = 0; j < f.size(); ++j) f[j] = std::sin(k * g.nodes[j]);

    CHECK(std::abs(interpolate(f, g, g.nodes[517]) - f[517]) <= 1e-14);
    const double xm = g.nodes[1000] + 0.5 * g.dx;
    CHECK(std::abs(interpolate(f, g, xm) - std::sin(k * xm)) <= 1e-6);
    CHECK_THROWS_AS(interpolate(f, g, g.half_width + 1.0), std::out_of_range);
    CHECK_THROWS_AS(interpolate(f, g, g.half_width), std::out_of_range);
}

TEST_CASE("integral of a derivative vanishes") {
    const Grid g = make_grid(10.0, 512);
    for (unsigned seed : {1u, 2u, 3u}) {
        const Field f = random_smooth(g, seed);
        CHECK(std::abs(integrate(derivative(f, g), g)) <= 1e-10);
    }
}

TEST_CASE("derivative is linear") {
    const Grid g = make_grid(10.0, 512);
    const Field f = random_smooth(g, 11), h = random_smooth(g, 12);
    const double a = 1.37, b = -0.61;
    Field combo(f.size());
    for (size_t j = 0; j < f.size(); ++j) combo[j] = a * f[j] + b * h[j];
    const Field left = derivative(combo, g);
    const Field df = derivative(f, g), dh = derivative(h, g);
    Field right(f.size());
    for (size_t j = 0; j < f.size(); ++j) right[j] = a * df[j] + b * dh[j];
    CHECK(max_abs_diff(left, right) <= 1e-12);
}

TEST_CASE("second derivative is exact on single modes") {
    const Grid g = make_grid(10.0, 256);
    const double k = 4.0 * std::numbers::pi / g.half_width;
    Field f(g.nodes.size()), want(g.nodes.size());
    for (size_t j = 0; j < f.size(); ++j) {
        f[j] = std::cos(k * g.nodes[j]);
        want[j] = -k * k * std::cos(k * g.nodes[j]);
    }
    CHECK(max_abs_diff(second_derivative(f, g), want) <= 1e-10);
}

TEST_CASE("lowpass keeps low modes and kills high ones") {
    const Grid g = make_grid(10.0, 256);
    const double k = std::numbers::pi / g.half_width;
    Field low(g.nodes.size()), high(g.nodes.size());
    for (size_t j = 0; j < low.size(); ++j) {
        low[j] = std::cos(3.0 * k * g.nodes[j]);
        high[j] = std::cos(120.0 * k * g.nodes[j]);  // above the 2/3 cut (85)
    }
    CHECK(max_abs_diff(spectral_lowpass(low, g, 2.0 / 3.0), low) <= 1e-13);
    CHECK(max_abs(spectral_lowpass(high, g, 2.0 / 3.0)) <= 1e-13);
}

TEST_CASE("shape mismatch is rejected") {
    const Grid g = make_grid(10.0, 256);
    CHECK_THROWS_AS(derivative(Field(255, 0.0), g), std::invalid_argument);
    CHECK_THROWS_AS(integrate(Field(512, 0.0), g), std::invalid_argument);
}

}  // TEST_SUITE
