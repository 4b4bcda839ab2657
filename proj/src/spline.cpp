#include "coldplasma/spline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "coldplasma/tridiag.hpp"

namespace coldplasma {

PeriodicSpline::PeriodicSpline(const Field& f, const Grid& g)
    : left_(-g.half_width), dx_(g.dx), y_(f) {
    require_on_grid(f, g);
    const size_t n = f.size();
    // Moment equations: M[j-1] + 4 M[j] + M[j+1] = 6 (y[j-1] - 2y[j] + y[j+1]) / dx^2,
    // indices cyclic.
    std::vector<double> a(n, 1.0), b(n, 4.0), c(n, 1.0), r(n);
    const double s = 6.0 / (dx_ * dx_);
    for (size_t j = 0; j < n; ++j) {
        const double ym = y_[(j + n - 1) % n];
        const double yp = y_[(j + 1) % n];
        r[j] = s * (ym - 2.0 * y_[j] + yp);
    }
    m_ = solve_cyclic_tridiagonal(a, b, c, r);
}

double PeriodicSpline::operator()(double x) const {
    const double right = left_ + dx_ * static_cast<double>(y_.size());
    if (!(x >= left_ && x < right))
        throw std::out_of_range("spline evaluation at x=" + std::to_string(x) +
                                " outside [" + std::to_string(left_) + ", " +
                                std::to_string(right) + ")");
    return eval_periodic(x);
}

double PeriodicSpline::eval_periodic(double x) const {
    const size_t n = y_.size();
    const double span = dx_ * static_cast<double>(n);
    double xl = std::fmod(x - left_, span);
    if (xl < 0.0) xl += span;
    size_t j = static_cast<size_t>(xl / dx_);
    if (j >= n) j = n - 1;  // guard the xl == span edge from rounding
    const double t = xl - dx_ * static_cast<double>(j);  // offset in [0, dx)
    const size_t jp = (j + 1) % n;
    const double u = dx_ - t;
    // Standard moment form on [x_j, x_{j+1}].
    return (m_[j] * u * u * u + m_[jp] * t * t * t) / (6.0 * dx_) +
           (y_[j] / dx_ - m_[j] * dx_ / 6.0) * u +
           (y_[jp] / dx_ - m_[jp] * dx_ / 6.0) * t;
}

}  // namespace coldplasma
