#pragma once

#include <string>
#include <vector>

#include "coldplasma/criteria.hpp"
#include "coldplasma/diagnostics.hpp"
#include "coldplasma/dynamics.hpp"
#include "coldplasma/lagrange.hpp"
#include "coldplasma/runspec.hpp"

namespace coldplasma {

/// I/O failure carrying the offending path.
struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal formatting (re-parses to the same double).
std::string format_double(double x);

/// Time label used in snapshot file names: "2.0", "1.5", "0.0", "3.3".
std::string time_label(double t);

/// energy.csv: t,H,drift (one row per recorded step).
void emit_energy_csv(const Trajectory& traj, const std::string& dir);

/// fields_t<label>.csv: x,rho,u,v,B,vB for the saved state nearest each
/// requested snapshot time.  Returns the written paths.
std::vector<std::string> emit_snapshot_csvs(const Trajectory& traj,
                                            const std::vector<double>& snapshot_times,
                                            const std::string& dir);

/// trace_<alpha>.csv: t,x,w,wprime.
void emit_trace_csv(const CharacteristicTrace& tr, const std::string& dir);

/// criteria.csv: x,rho0,du0,flag_i,flag_ii,flag_iii.
void emit_criteria_csv(const BlowupCriteriaReport& report, const Field& rho0,
                       const Field& du0, const Grid& g, const std::string& dir);

/// diagnostics.csv: scalar summary rows plus the (t, max|v|) series.
void emit_diagnostics_csv(const DiagnosticsReport& rep, const std::string& dir);

/** Self-contained SVG 1.1 with a 2x2 panel layout (rho, u, B, and vB or v),
 * one polyline per snapshot time, labeled axes, no external resources.
 * Returns the file path.
 */
std::string emit_plots(const Trajectory& traj, const std::vector<double>& snapshot_times,
                       Panel4 panel4, const std::string& dir);

}  // namespace coldplasma
