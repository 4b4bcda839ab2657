#pragma once

#include <utility>

#include "coldplasma/grid.hpp"

namespace coldplasma {

/** The non-evolved fields recovered from the density.
 *
 * Given rho > 0, v solves v_xx - rho v = rho_x with decaying boundary
 * behaviour and B = rho - v_x.  The two residuals report how well the
 * pair satisfies B_x = -rho v and v_x = rho - B on the grid.
 */
struct ClosureSolution {
    Field v;
    Field B;
    double residual_c;  // max|B_x + rho v|
    double residual_d;  // max|v_x - rho + B|
};

/** Direct solve of the second-order finite-difference discretization of
 *  v_xx - rho v = rhs on the periodic grid (cyclic tridiagonal system,
 *  Thomas algorithm with a rank-one periodic correction).
 *
 * This is the manufactured-rhs variant: the caller supplies the right-hand
 * side.  Truncation error is O(dx^2).  It also serves as the preconditioner
 * for the spectrally consistent solve below.
 */
Field solve_v(const Field& rho, const Field& rhs, const Grid& g);

/** Solves v_xx - rho v = rho_x for the velocity difference v.
 *
 * The right-hand side rho_x is spectral, and the solution is polished to
 * the spectral operator by conjugate gradients preconditioned with the
 * finite-difference direct solve; the preconditioned system has condition
 * number at most pi^2/4 for any rho > 0, so the iteration converges in a
 * few steps regardless of how large the density grows.  The result
 * satisfies the discrete equation to near machine precision, which keeps
 * the energy identity and the B_x = -rho v residual at the solver tolerance
 * instead of at the O(dx^2) truncation level.
 *
 * Throws std::runtime_error with a condition diagnostic if the iteration
 * fails (signals rho <= 0 contamination or a blow-up-adjacent state).
 *
 * `warm_start`, when given, seeds the iteration (useful inside time
 * stepping where v changes little between calls).
 */
Field solve_v(const Field& rho, const Grid& g, const Field* warm_start = nullptr);

/// B = rho - v_x with the spectral derivative; far-field value 1.
Field recover_B(const Field& rho, const Field& v, const Grid& g);

/// (max|B_x + rho v|, max|v_x - rho + B|) with spectral derivatives.
std::pair<double, double> closure_residuals(const Field& rho, const Field& v,
                                            const Field& B, const Grid& g);

/// Full closure: solve for v, recover B, report residuals.
ClosureSolution solve_closure(const Field& rho, const Grid& g,
                              const Field* warm_start = nullptr);

}  // namespace coldplasma
