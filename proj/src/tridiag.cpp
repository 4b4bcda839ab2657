#include "coldplasma/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace coldplasma {

namespace {

// Plain Thomas algorithm for a (non-cyclic) tridiagonal system; a[0] and
// c[n-1] are ignored.  Overwrites nothing; returns the solution.
std::vector<double> thomas(const std::vector<double>& a, const std::vector<double>& b,
                           const std::vector<double>& c, const std::vector<double>& r) {
    const size_t n = b.size();
    std::vector<double> cw(n), rw(n), x(n);
    double beta = b[0];
    cw[0] = c[0] / beta;
    rw[0] = r[0] / beta;
    for (size_t i = 1; i < n; ++i) {
        beta = b[i] - a[i] * cw[i - 1];
        cw[i] = c[i] / beta;
        rw[i] = (r[i] - a[i] * rw[i - 1]) / beta;
    }
    x[n - 1] = rw[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = rw[i] - cw[i] * x[i + 1];
    return x;
}

}  // namespace

std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a,
                                             const std::vector<double>& b,
                                             const std::vector<double>& c,
                                             const std::vector<double>& r) {
    const size_t n = b.size();
    if (n < 3 || a.size() != n || c.size() != n || r.size() != n)
        throw std::invalid_argument("solve_cyclic_tridiagonal: need four arrays of equal length >= 3");

    // Sherman-Morrison: write the cyclic matrix as T + u v^T with
    // u = (gamma, 0, ..., 0, c[n-1])^T, v = (1, 0, ..., 0, a[0]/gamma)^T.
    const double gamma = -b[0];
    std::vector<double> bm(b);
    bm[0] = b[0] - gamma;
    bm[n - 1] = b[n - 1] - a[0] * c[n - 1] / gamma;

    std::vector<double> y = thomas(a, bm, c, r);

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    std::vector<double> z = thomas(a, bm, c, u);

    const double vy = y[0] + (a[0] / gamma) * y[n - 1];
    const double vz = z[0] + (a[0] / gamma) * z[n - 1];
    const double factor = vy / (1.0 + vz);
    for (size_t i = 0; i < n; ++i) y[i] -= factor * z[i];
    return y;
}

}  // namespace coldplasma
