#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coldplasma/closure.hpp"
#include "coldplasma/criteria.hpp"
#include "coldplasma/diagnostics.hpp"
#include "coldplasma/dynamics.hpp"
#include "coldplasma/lagrange.hpp"
#include "coldplasma/output.hpp"
#include "coldplasma/runspec.hpp"

namespace cp = coldplasma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitStepFailure = 2;
constexpr int kExitIo = 3;

std::string termination_name(cp::TerminationKind k) {
    switch (k) {
        case cp::TerminationKind::reached_t_end: return "reached_t_end";
        case cp::TerminationKind::blowup_detected: return "blowup_detected";
        case cp::TerminationKind::step_failure: return "step_failure";
    }
    return "?";
}

int run_command(const std::string& spec_path, const std::string& out_override,
                const std::string& tasks_override) {
    cp::RunSpec spec;
    try {
        spec = cp::parse_spec(spec_path);
    } catch (const cp::ParseError& e) {
        std::cerr << "parse error at " << spec_path << ":" << e.line << ": " << e.what()
                  << "\n";
        return kExitParse;
    }
    if (!tasks_override.empty()) {
        try {
            const std::string text = "tasks = " + tasks_override + "\n";
            spec.tasks = cp::parse_spec_text(text, "--tasks").tasks;
        } catch (const cp::ParseError& e) {
            std::cerr << "bad --tasks value: " << e.what() << "\n";
            return kExitParse;
        }
    }

    if (!out_override.empty()) {
        spec.output_dir = out_override;
    } else if (const char* env = std::getenv("COLDPLASMA_OUT"); env && *env) {
        spec.output_dir = env;
    }

    try {
        std::filesystem::create_directories(spec.output_dir);
    } catch (const std::exception& e) {
        std::cerr << "cannot create output directory '" << spec.output_dir << "': " << e.what()
                  << "\n";
        return kExitIo;
    }

    int exit_code = kExitOk;
    try {
        const cp::Grid grid = cp::make_grid(spec.sim.half_width, spec.sim.n);
        cp::Field rho0, u0;
        try {
            std::tie(rho0, u0) = cp::build_initial_data(spec, grid);
        } catch (const cp::ParseError& e) {
            std::cerr << "initial data error: " << e.what() << "\n";
            return kExitParse;
        }

        {   // record the resolved configuration next to the outputs
            std::ofstream os(spec.output_dir + "/resolved_spec.cfg", std::ios::binary);
            cp::write_spec(spec, os);
        }

        if (spec.has_task(cp::Task::criteria)) {
            const cp::BlowupCriteriaReport rep = cp::evaluate(rho0, u0, grid);
            const cp::Field du0 = cp::derivative(u0, grid);
            cp::emit_criteria_csv(rep, rho0, du0, grid, spec.output_dir);
            std::cout << "criteria: H0 = " << cp::format_double(rep.H0)
                      << ", h0 = " << cp::format_double(rep.h0)
                      << ", threshold_i = " << cp::format_double(rep.threshold_i) << "\n";
            auto describe = [](const char* name,
                               const std::optional<cp::CriterionWitness>& w) {
                if (w)
                    std::cout << "  criterion " << name << ": satisfied, best at alpha = "
                              << cp::format_double(w->alpha)
                              << " (margin " << cp::format_double(w->margin) << ")\n";
                else
                    std::cout << "  criterion " << name << ": not satisfied\n";
            };
            describe("(i)", rep.witness_i);
            describe("(ii)", rep.witness_ii);
            describe("(iii)", rep.witness_iii);
            if (rep.t_upper)
                std::cout << "  analytic blow-up time bound T_upper = "
                          << cp::format_double(*rep.t_upper) << "\n";
            else
                std::cout << "  no criterion satisfied; no analytic bound\n";
        }

        const bool need_sim = spec.has_task(cp::Task::simulate) ||
                              spec.has_task(cp::Task::trace) ||
                              spec.has_task(cp::Task::diagnostics);
        if (need_sim) {
            const cp::Trajectory traj = cp::run(spec.sim, rho0, u0);
            std::cout << "simulate: " << termination_name(traj.termination.kind) << " at t = "
                      << cp::format_double(traj.termination.t);
            if (!traj.termination.reason.empty())
                std::cout << " [" << traj.termination.reason << "]";
            std::cout << ", " << traj.states.size() << " states saved\n";

            cp::emit_energy_csv(traj, spec.output_dir);
            cp::emit_snapshot_csvs(traj, spec.snapshot_times, spec.output_dir);
            cp::emit_plots(traj, spec.snapshot_times, spec.panel4, spec.output_dir);

            if (spec.has_task(cp::Task::trace)) {
                for (double alpha : spec.trace_alphas) {
                    const cp::CharacteristicTrace tr =
                        cp::trace(traj, alpha, grid, spec.w_floor);
                    cp::emit_trace_csv(tr, spec.output_dir);
                    const double r0a = cp::interpolate(traj.rho0, grid, alpha);
                    std::cout << "trace alpha = " << cp::format_double(alpha) << ": ";
                    if (tr.zero_crossing)
                        std::cout << "w reached floor at t = "
                                  << cp::format_double(*tr.zero_crossing);
                    else
                        std::cout << "w stayed above floor (final w = "
                                  << cp::format_double(tr.w.back()) << ")";
                    std::cout << ", mass-invariant residual "
                              << cp::format_double(cp::mass_invariant_residual(tr, traj, r0a));
                    if (auto rate = cp::fit_blowup_rate(tr))
                        std::cout << ", u_x rate exponent " << cp::format_double(*rate);
                    std::cout << "\n";
                }
            }

            if (spec.has_task(cp::Task::diagnostics)) {
                const cp::DiagnosticsReport rep = cp::summarize(traj, grid);
                cp::emit_diagnostics_csv(rep, spec.output_dir);
                std::cout << "diagnostics: B-bound slack " << cp::format_double(rep.max_B_violation)
                          << ", identity relerr " << cp::format_double(rep.max_identity_relerr)
                          << ", energy drift " << cp::format_double(rep.max_energy_drift)
                          << ", mass drift " << cp::format_double(rep.mass_drift) << "\n";
            }

            if (traj.termination.kind == cp::TerminationKind::step_failure)
                exit_code = kExitStepFailure;
        }
    } catch (const cp::OutputError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStepFailure;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D magnetized cold-plasma laboratory: simulation, blow-up criteria, "
                 "characteristic tracing"};
    app.require_subcommand(1);

    std::string spec_path, out_dir, tasks;
    CLI::App* run = app.add_subcommand("run", "execute a run specification");
    run->add_option("spec", spec_path, "run specification file")->required();
    run->add_option("--out", out_dir, "output directory (overrides spec and COLDPLASMA_OUT)");
    run->add_option("--tasks", tasks,
                    "comma list from criteria,simulate,trace,diagnostics");

    CLI11_PARSE(app, argc, argv);
    return run_command(spec_path, out_dir, tasks);
}
