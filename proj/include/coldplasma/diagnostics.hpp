#pragma once

#include <utility>
#include <vector>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/grid.hpp"

namespace coldplasma {

/// Aggregated verification of the proved identities and bounds on a run.
struct DiagnosticsReport {
    double max_B_violation = 0.0;     // max over states of max|B-1| - h0
    double max_identity_relerr = 0.0; // energy identity, relative
    double max_energy_drift = 0.0;    // |H(t)-H(0)| / max(H(0), 1e-12)
    double mass_drift = 0.0;          // max |int(rho-1) - initial|
    std::vector<std::pair<double, double>> v_sup_series;  // (t, max|v|)
};

/// Max over saved states of (max|B-1| - h0).  The bound is a theorem, so
/// anything above discretization noise (~1e-2) indicates a solver bug.
double check_B_bound(const Trajectory& traj);

/// Relative residual of  int (rho-1)^2 = int (B-1)^2 + v_x^2 + 2 rho v^2,
/// with the denominator floored at 1e-12 (equilibrium gives 0/0 -> 0).
double identity_residual(const FieldState& s, const Grid& g);

DiagnosticsReport summarize(const Trajectory& traj, const Grid& g);

}  // namespace coldplasma
