#pragma once

#include <vector>

namespace coldplasma {

/// Pointwise samples on the nodes of a Grid.
using Field = std::vector<double>;

/** Uniform periodic grid on [-L, L).
 *
 * Node j sits at x_j = -L + j*dx with dx = 2L/N.  The right endpoint +L is
 * identified with the left one; fields that decay at the box edges are
 * periodic-compatible.
 */
struct Grid {
    double half_width;          // L
    int n;                      // node count, power of two
    double dx;                  // 2L/N
    std::vector<double> nodes;  // x_0 = -L, ..., x_{N-1} = L - dx
};

/// Builds a grid; rejects non-positive L and node counts that are not a
/// power of two >= 8.
Grid make_grid(double half_width, int n);

/// Spectral (FFT) first derivative; exact for band-limited samples.
Field derivative(const Field& f, const Grid& g);

/// Spectral second derivative.
Field second_derivative(const Field& f, const Grid& g);

/// Zeroes all Fourier modes above `keep_fraction` of the Nyquist index.
/// keep_fraction = 2/3 is the classic dealiasing rule.
Field spectral_lowpass(const Field& f, const Grid& g, double keep_fraction);

/// Periodic rectangle rule, dx * sum f_j; spectrally accurate for smooth
/// decaying integrands.
double integrate(const Field& f, const Grid& g);

/// Periodic cubic spline evaluation at one point x in [-L, L).
/// Exact at grid nodes.  Throws std::out_of_range for x outside the box.
double interpolate(const Field& f, const Grid& g, double x);

void require_on_grid(const Field& f, const Grid& g);

}  // namespace coldplasma
