#include "coldplasma/closure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "coldplasma/tridiag.hpp"

namespace coldplasma {

namespace {

double min_of(const Field& f) { return *std::min_element(f.begin(), f.end()); }

double norm2(const Field& f) {
    double s = 0.0;
    for (double x : f) s += x * x;
    return std::sqrt(s);
}

double dot(const Field& a, const Field& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Field solve_v(const Field& rho, const Field& rhs, const Grid& g) {
    require_on_grid(rho, g);
    require_on_grid(rhs, g);
    const size_t n = rho.size();
    const double w = 1.0 / (g.dx * g.dx);
    std::vector<double> sub(n, w), diag(n), sup(n, w);
    for (size_t j = 0; j < n; ++j) diag[j] = -2.0 * w - rho[j];
    return solve_cyclic_tridiagonal(sub, diag, sup, rhs);
}

Field solve_v(const Field& rho, const Grid& g, const Field* warm_start) {
    require_on_grid(rho, g);
    const Field rhs = derivative(rho, g);
    const size_t n = rho.size();

    // Conjugate gradients on the SPD system (-A) v = -rhs with
    // A = D^2 - diag(rho), preconditioned by the finite-difference direct
    // solve.  The FD and spectral Laplacian symbols differ by at most the
    // factor pi^2/4 and the rho parts coincide, so the preconditioned
    // condition number is <= pi^2/4 for any rho > 0.
    Field b(n);
    for (size_t j = 0; j < n; ++j) b[j] = -rhs[j];
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return Field(n, 0.0);

    auto apply = [&](const Field& x) {  // (-A) x
        Field ax = second_derivative(x, g);
        for (size_t j = 0; j < n; ++j) ax[j] = -(ax[j] - rho[j] * x[j]);
        return ax;
    };
    auto precondition = [&](const Field& r) {  // (-T)^{-1} r
        Field z = solve_v(rho, r, g);
        for (double& x : z) x = -x;
        return z;
    };

    Field v = warm_start ? *warm_start : Field(n, 0.0);
    if (warm_start) require_on_grid(*warm_start, g);

    Field r = apply(v);
    for (size_t j = 0; j < n; ++j) r[j] = b[j] - r[j];
    Field z = precondition(r);
    Field p = z;
    double rz = dot(r, z);

    const double tol = 1e-12;
    const int max_iter = 64;
    double relres = norm2(r) / bnorm;
    for (int it = 0; it < max_iter && relres > tol; ++it) {
        Field ap = apply(p);
        const double pap = dot(p, ap);
        if (!(pap > 0.0) || !std::isfinite(pap))
            throw std::runtime_error(
                "solve_v: operator lost definiteness (p^T A p = " + std::to_string(pap) +
                ", min rho = " + std::to_string(min_of(rho)) +
                "); rho <= 0 contamination or blow-up-adjacent state");
        const double alpha = rz / pap;
        for (size_t j = 0; j < n; ++j) {
            v[j] += alpha * p[j];
            r[j] -= alpha * ap[j];
        }
        relres = norm2(r) / bnorm;
        if (!std::isfinite(relres)) break;
        z = precondition(r);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (size_t j = 0; j < n; ++j) p[j] = z[j] + beta * p[j];
    }
    if (!(relres <= tol))
        throw std::runtime_error("solve_v: no convergence, relative residual " +
                                 std::to_string(relres) + ", min rho " +
                                 std::to_string(min_of(rho)));
    return v;
}

Field recover_B(const Field& rho, const Field& v, const Grid& g) {
    require_on_grid(rho, g);
    require_on_grid(v, g);
    Field B = derivative(v, g);
    for (size_t j = 0; j < B.size(); ++j) B[j] = rho[j] - B[j];
    return B;
}

std::pair<double, double> closure_residuals(const Field& rho, const Field& v,
                                            const Field& B, const Grid& g) {
    const Field Bx = derivative(B, g);
    const Field vx = derivative(v, g);
    double rc = 0.0, rd = 0.0;
    for (size_t j = 0; j < rho.size(); ++j) {
        rc = std::max(rc, std::abs(Bx[j] + rho[j] * v[j]));
        rd = std::max(rd, std::abs(vx[j] - rho[j] + B[j]));
    }
    return {rc, rd};
}

ClosureSolution solve_closure(const Field& rho, const Grid& g, const Field* warm_start) {
    ClosureSolution sol;
    sol.v = solve_v(rho, g, warm_start);
    sol.B = recover_B(rho, sol.v, g);
    auto [rc, rd] = closure_residuals(rho, sol.v, sol.B, g);
    sol.residual_c = rc;
    sol.residual_d = rd;
    return sol;
}

}  // namespace coldplasma
