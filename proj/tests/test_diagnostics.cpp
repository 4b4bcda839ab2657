#include <doctest.h>

#include <cmath>

#include "coldplasma/diagnostics.hpp"
#include "test_fixtures.hpp"

using namespace coldplasma;

TEST_SUITE("diagnostics") {

TEST_CASE("equilibrium run reports all zeros") {
    SimConfig cfg;
    cfg.n = 256;
    cfg.t_end = 0.3;
    const Trajectory traj = run(cfg, Field(256, 1.0), Field(256, 0.0));
    CHECK(check_B_bound(traj) == 0.0);  // zero slack exactly at h0 = 0

    const DiagnosticsReport rep = summarize(traj, traj.grid);
    CHECK(rep.max_B_violation == 0.0);
    CHECK(rep.max_identity_relerr == 0.0);
    CHECK(rep.max_energy_drift == 0.0);
    CHECK(rep.mass_drift == 0.0);
    for (const auto& [t, vsup] : rep.v_sup_series) CHECK(vsup == 0.0);
}

TEST_CASE("identity residual at t = 0 sits at the solver tolerance") {
    const Grid g = make_grid(10.0, 2048);
    auto [rho0, u0] = cptest::well_data(g, 7.0);
    const FieldState s0 = initial_state(rho0, u0, g);
    CHECK(identity_residual(s0, g) <= 1e-6);
}

TEST_CASE("proved bounds hold along the narrow-well run") {
    const Trajectory& traj = cptest::narrow_well_run();
    CHECK(check_B_bound(traj) <= 1e-2);

    const DiagnosticsReport rep = summarize(traj, traj.grid);
    CHECK(rep.max_identity_relerr <= 0.02);
    CHECK(rep.mass_drift <= 1e-8);

    // v stays uniformly bounded by a constant of the order of its early
    // maximum (observed numerically; not a theorem).
    double early = 0.0, late = 0.0;
    for (const auto& [t, vsup] : rep.v_sup_series)
        (t <= 1.0 ? early : late) = std::max(t <= 1.0 ? early : late, vsup);
    CHECK(late <= 3.0 * std::max(early, 0.1));
}

TEST_CASE("energy drift while the run is resolved stays under 1%") {
    const Trajectory& traj = cptest::narrow_well_run();
    const double H0 = traj.energies.front().second;
    for (size_t k = 0; k < traj.states.size(); ++k) {
        double rho_max = 0.0;
        for (double r : traj.states[k].rho) rho_max = std::max(rho_max, r);
        if (rho_max > 5.0) break;
        const double H = traj.energies[k].second;
        CHECK(std::abs(H - H0) / std::max(H0, 1e-12) <= 0.01);
    }
}

TEST_CASE("energy drift refines at second order in dt") {
    auto drift_at = [](double dt) {
        SimConfig cfg;
        cfg.n = 1024;
        cfg.dt = dt;
        cfg.t_end = 1.0;
        const Grid g = make_grid(cfg.half_width, cfg.n);
        auto [rho0, u0] = cptest::well_data(g, 7.0);
        const Trajectory traj = run(cfg, rho0, u0);
        const DiagnosticsReport rep = summarize(traj, g);
        return rep.max_energy_drift;
    };
    const double coarse = drift_at(0.04);
    const double fine = drift_at(0.02);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.5));
}

}  // TEST_SUITE
