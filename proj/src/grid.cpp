#include "coldplasma/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coldplasma/spline.hpp"
#include "fft.hpp"

namespace coldplasma {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Wavenumber of rfft bin m on a box of length 2L: k_m = pi m / L.
double wavenumber(int m, double half_width) {
    return std::numbers::pi * m / half_width;
}

}  // namespace

Grid make_grid(double half_width, int n) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_grid: half_width must be positive, got " +
                                    std::to_string(half_width));
    if (n < 8 || !is_power_of_two(n))
        throw std::invalid_argument("make_grid: n must be a power of two >= 8, got " +
                                    std::to_string(n));
    Grid g;
    g.half_width = half_width;
    g.n = n;
    g.dx = 2.0 * half_width / n;
    g.nodes.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) g.nodes[static_cast<size_t>(j)] = -half_width + j * g.dx;
    return g;
}

void require_on_grid(const Field& f, const Grid& g) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument("field length " + std::to_string(f.size()) +
                                    " does not match grid n=" + std::to_string(g.n));
}

Field derivative(const Field& f, const Grid& g) {
    require_on_grid(f, g);
    std::vector<std::complex<double>> spec;
    fft::forward(f, spec);
    for (size_t m = 0; m < spec.size(); ++m) {
        const double k = wavenumber(static_cast<int>(m), g.half_width);
        spec[m] = std::complex<double>(-k * spec[m].imag(), k * spec[m].real());
    }
    spec.back() = 0.0;  // Nyquist mode carries no usable odd-derivative phase
    Field out;
    fft::inverse(spec, out, g.n);
    return out;
}

Field second_derivative(const Field& f, const Grid& g) {
    require_on_grid(f, g);
    std::vector<std::complex<double>> spec;
    fft::forward(f, spec);
    for (size_t m = 0; m < spec.size(); ++m) {
        const double k = wavenumber(static_cast<int>(m), g.half_width);
        spec[m] *= -k * k;
    }
    Field out;
    fft::inverse(spec, out, g.n);
    return out;
}

Field spectral_lowpass(const Field& f, const Grid& g, double keep_fraction) {
    require_on_grid(f, g);
    std::vector<std::complex<double>> spec;
    fft::forward(f, spec);
    const int cutoff = static_cast<int>(keep_fraction * (g.n / 2));
    for (size_t m = 0; m < spec.size(); ++m)
        if (static_cast<int>(m) > cutoff) spec[m] = 0.0;
    Field out;
    fft::inverse(spec, out, g.n);
    return out;
}

double integrate(const Field& f, const Grid& g) {
    require_on_grid(f, g);
    double sum = 0.0;
    for (double x : f) sum += x;
    return g.dx * sum;
}

double interpolate(const Field& f, const Grid& g, double x) {
    return PeriodicSpline(f, g)(x);
}

}  // namespace coldplasma
