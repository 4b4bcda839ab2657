#pragma once

#include <optional>
#include <vector>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/grid.hpp"

namespace coldplasma {

/** Samples along one characteristic x' = u(t, x), x(0) = alpha, together
 * with the Jacobian w = dx/dalpha and its time derivative.
 *
 * w solves  w'' + B^2 w = (B - v^2) rho0(alpha)  with w(0) = 1,
 * w'(0) = u0'(alpha); w -> 0 is equivalent to density blow-up through the
 * mass invariant w * rho(t, x(t)) = rho0(alpha).
 */
struct CharacteristicTrace {
    double alpha = 0.0;
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> w;
    std::vector<double> wprime;
    std::optional<double> zero_crossing;  // first time w <= w_floor
};

/** Integrates the characteristic system with classical RK4 against the
 * saved Eulerian trajectory: u, v, B are periodic-cubic-spline interpolated
 * in space at x(t) and linearly interpolated in time between saved states.
 *
 * Requires the trajectory to be saved at every step (save_stride == 1);
 * throws std::invalid_argument otherwise, and std::runtime_error if the
 * characteristic leaves [-L, L).  The trace stops at the trajectory end or
 * once w <= w_floor (recorded as zero_crossing).
 */
CharacteristicTrace trace(const Trajectory& traj, double alpha, const Grid& g,
                          double w_floor = 1e-3);

/// Max over trace samples (before the zero crossing, and while the state's
/// max density stays <= 5) of |w(t) rho(t, x(t)) - rho0(alpha)|.
double mass_invariant_residual(const CharacteristicTrace& tr, const Trajectory& traj,
                               double rho0_alpha);

/** Least-squares slope of log|w'/w| against log(T* - t) over the final
 * approach window (w'/w equals u_x along the characteristic); the expected
 * exponent is -1.  Returns nullopt without a zero crossing or with fewer
 * than 10 usable samples.
 */
std::optional<double> fit_blowup_rate(const CharacteristicTrace& tr);

}  // namespace coldplasma
