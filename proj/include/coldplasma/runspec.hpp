#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/grid.hpp"

namespace coldplasma {

/// Parse failure with the offending line number (0 = file-level problem).
struct ParseError : std::runtime_error {
    int line;
    ParseError(std::string msg, int line_) : std::runtime_error(std::move(msg)), line(line_) {}
};

enum class DataFamily { sech, gaussian, tabulated };

/// One initial-data component: the perturbation amplitude * shape(width * x),
/// or a tabulated column.
struct InitialProfile {
    DataFamily family = DataFamily::sech;
    double amplitude = 0.0;
    double width = 1.0;

    bool operator==(const InitialProfile&) const = default;
};

enum class Task : unsigned {
    criteria = 1u << 0,
    simulate = 1u << 1,
    trace = 1u << 2,
    diagnostics = 1u << 3,
};

enum class Panel4 { vB, v };  // bottom-right figure panel

/** A fully resolved run description.
 *
 * File format: flat `key = value` lines, UTF-8, comments starting with '#',
 * blank lines ignored.  Unknown keys and invalid values are parse errors
 * (reported with their line number).  An empty file yields the defaults:
 * L=10, N=2048, dt=0.01 and equilibrium data.
 */
struct RunSpec {
    SimConfig sim;
    InitialProfile rho0;  // perturbation of the unit background density
    InitialProfile u0;
    std::string tabulated_path;  // columns x,rho0,u0 when a family is tabulated
    std::vector<double> trace_alphas;
    // When not set explicitly, the parser fills in {0, 1.5, 1.9, 2.0}
    // clipped to t_end.
    std::vector<double> snapshot_times{0.0, 1.5, 1.9, 2.0};
    std::string output_dir = "out";
    unsigned tasks = static_cast<unsigned>(Task::criteria) |
                     static_cast<unsigned>(Task::simulate) |
                     static_cast<unsigned>(Task::trace) |
                     static_cast<unsigned>(Task::diagnostics);
    Panel4 panel4 = Panel4::vB;
    double w_floor = 1e-3;

    bool has_task(Task t) const { return tasks & static_cast<unsigned>(t); }

    bool operator==(const RunSpec&) const = default;
};

RunSpec parse_spec(const std::string& path);

/// Same parser on an in-memory buffer (`name` labels error messages).
RunSpec parse_spec_text(const std::string& text, const std::string& name);

/// Canonical emission; parse_spec_text(write_spec(s)) == s.
void write_spec(const RunSpec& spec, std::ostream& os);

/// Samples rho0 and u0 on the grid and validates rho0 > 0.
std::pair<Field, Field> build_initial_data(const RunSpec& spec, const Grid& g);

}  // namespace coldplasma
