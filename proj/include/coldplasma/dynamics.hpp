#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coldplasma/grid.hpp"

namespace coldplasma {

struct SimConfig {
    double half_width = 10.0;      // L
    int n = 2048;                  // grid nodes (power of two)
    double dt = 0.01;
    double t_end = 2.0;
    int save_stride = 1;           // keep every k-th state
    double picard_tol = 1e-10;     // max-norm increment for convergence
    int picard_max = 12;
    double rho_max = 50.0;         // density blow-up threshold
    double rho_min = 1e-6;         // positivity floor
    double energy_drift_max = 0.05;  // relative; exceeding it aborts the run
    bool dealias = true;           // 2/3-rule filter on nonlinear products

    bool operator==(const SimConfig&) const = default;
};

/// Snapshot of the evolved pair (rho, u) plus the closure fields (v, B).
struct FieldState {
    double t = 0.0;
    Field rho;
    Field u;
    Field v;
    Field B;
};

enum class TerminationKind { reached_t_end, blowup_detected, step_failure };

struct Termination {
    TerminationKind kind = TerminationKind::reached_t_end;
    double t = 0.0;
    std::string reason;
};

struct BlowupReason {
    enum class Kind { density_exceeds, density_below, gradient_exceeds };
    Kind kind;
    double value;  // offending extremum
    std::string describe() const;
};

/// Thrown by step() when the implicit solve cannot be completed; the caller
/// records it as a step_failure termination (blow-up adjacent).
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Trajectory {
    Grid grid;
    Field rho0;
    Field u0;
    std::vector<FieldState> states;                  // saved per save_stride
    std::vector<std::pair<double, double>> energies; // (t, H) every step
    double h0 = 0.0;
    Termination termination;
};

/// Builds the t=0 state: validates rho0 > 0, attaches the closure fields.
FieldState initial_state(const Field& rho0, const Field& u0, const Grid& g);

/// Conserved energy H = 1/2 * integral of rho (u^2 + v^2) + (B-1)^2.
double energy(const FieldState& s, const Grid& g);

/** One Crank-Nicolson step of
 *      rho_t + (rho u)_x = 0,      u_t + u u_x = v B,
 * with spectral space derivatives and Picard (fixed-point) sweeps for the
 * nonlinearity; v, B are re-closed from the density iterate inside every
 * sweep.  Converged when successive iterates differ by less than
 * picard_tol in max norm.  Throws StepFailure on non-convergence or
 * non-finite iterates.
 */
FieldState step(const FieldState& s, const SimConfig& cfg, const Grid& g);

/// Threshold check: density above rho_max, density at/below rho_min, or
/// min u_x <= -1/dt (resolution-breakdown heuristic).
std::optional<BlowupReason> detect_blowup(const FieldState& s, const SimConfig& cfg,
                                          const Grid& g);

/// Integrates until t_end, blow-up detection, or step failure.  Energies are
/// recorded every step, states every save_stride steps (plus the final one).
Trajectory run(const SimConfig& cfg, const Field& rho0, const Field& u0);

}  // namespace coldplasma
