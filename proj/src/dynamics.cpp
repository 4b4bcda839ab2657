#include "coldplasma/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "coldplasma/closure.hpp"
#include "coldplasma/criteria.hpp"

namespace coldplasma {

namespace {

bool all_finite(const Field& f) {
    for (double x : f)
        if (!std::isfinite(x)) return false;
    return true;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

std::string BlowupReason::describe() const {
    switch (kind) {
        case Kind::density_exceeds: return "density_exceeds(max rho = " + num(value) + ")";
        case Kind::density_below: return "density_below(min rho = " + num(value) + ")";
        case Kind::gradient_exceeds: return "gradient_exceeds(min u_x = " + num(value) + ")";
    }
    return "unknown";
}

FieldState initial_state(const Field& rho0, const Field& u0, const Grid& g) {
    require_on_grid(rho0, g);
    require_on_grid(u0, g);
    if (!all_finite(rho0) || !all_finite(u0))
        throw std::invalid_argument("initial_state: non-finite initial data");
    const double rmin = *std::min_element(rho0.begin(), rho0.end());
    if (!(rmin > 0.0))
        throw std::invalid_argument("initial_state: rho0 must be positive everywhere, min = " +
                                    num(rmin));
    FieldState s;
    s.t = 0.0;
    s.rho = rho0;
    s.u = u0;
    ClosureSolution c = solve_closure(rho0, g);
    s.v = std::move(c.v);
    s.B = std::move(c.B);
    return s;
}

double energy(const FieldState& s, const Grid& g) {
    Field integrand(s.rho.size());
    for (size_t j = 0; j < integrand.size(); ++j) {
        const double b1 = s.B[j] - 1.0;
        integrand[j] = s.rho[j] * (s.u[j] * s.u[j] + s.v[j] * s.v[j]) + b1 * b1;
    }
    return 0.5 * integrate(integrand, g);
}

FieldState step(const FieldState& s, const SimConfig& cfg, const Grid& g) {
    const size_t n = s.rho.size();
    const double half_dt = 0.5 * cfg.dt;
    const double keep = 2.0 / 3.0;
    auto smooth = [&](Field f) {
        return cfg.dealias ? spectral_lowpass(f, g, keep) : std::move(f);
    };
    auto product = [&](const Field& a, const Field& b) {
        Field p(n);
        for (size_t j = 0; j < n; ++j) p[j] = a[j] * b[j];
        return p;
    };

    // Terms frozen at t_n.
    const Field flux_n = derivative(smooth(product(s.rho, s.u)), g);
    const Field adv_n = smooth(product(s.u, derivative(s.u, g)));
    const Field src_n = smooth(product(s.v, s.B));

    Field rho_s = s.rho, u_s = s.u, v_s = s.v, B_s = s.B;
    for (int sweep = 0; sweep < cfg.picard_max; ++sweep) {
        const Field flux_s = derivative(smooth(product(rho_s, u_s)), g);
        const Field adv_s = smooth(product(u_s, derivative(u_s, g)));
        const Field src_s = smooth(product(v_s, B_s));

        Field rho_new(n), u_new(n);
        for (size_t j = 0; j < n; ++j) {
            rho_new[j] = s.rho[j] - half_dt * (flux_n[j] + flux_s[j]);
            u_new[j] = s.u[j] - half_dt * (adv_n[j] + adv_s[j]) + half_dt * (src_n[j] + src_s[j]);
        }
        const double delta = std::max(max_abs_diff(rho_new, rho_s), max_abs_diff(u_new, u_s));
        rho_s = std::move(rho_new);
        u_s = std::move(u_new);
        if (!all_finite(rho_s) || !all_finite(u_s))
            throw StepFailure("non-finite iterate in Crank-Nicolson sweep " +
                              std::to_string(sweep + 1) + " at t = " + num(s.t + cfg.dt));
        try {
            v_s = solve_v(rho_s, g, &v_s);
        } catch (const std::runtime_error& e) {
            throw StepFailure(std::string("closure failed inside step: ") + e.what());
        }
        B_s = recover_B(rho_s, v_s, g);
        if (delta < cfg.picard_tol) {
            FieldState next;
            next.t = s.t + cfg.dt;
            next.rho = std::move(rho_s);
            next.u = std::move(u_s);
            next.v = std::move(v_s);
            next.B = std::move(B_s);
            return next;
        }
    }
    throw StepFailure("Picard iteration did not reach tol " + num(cfg.picard_tol) + " in " +
                      std::to_string(cfg.picard_max) + " sweeps at t = " + num(s.t + cfg.dt));
}

std::optional<BlowupReason> detect_blowup(const FieldState& s, const SimConfig& cfg,
                                          const Grid& g) {
    const auto [mn, mx] = std::minmax_element(s.rho.begin(), s.rho.end());
    if (*mx >= cfg.rho_max)
        return BlowupReason{BlowupReason::Kind::density_exceeds, *mx};
    if (*mn <= cfg.rho_min)
        return BlowupReason{BlowupReason::Kind::density_below, *mn};
    const Field ux = derivative(s.u, g);
    const double ux_min = *std::min_element(ux.begin(), ux.end());
    if (ux_min <= -1.0 / cfg.dt)
        return BlowupReason{BlowupReason::Kind::gradient_exceeds, ux_min};
    return std::nullopt;
}

Trajectory run(const SimConfig& cfg, const Field& rho0, const Field& u0) {
    if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0) || cfg.save_stride < 1)
        throw std::invalid_argument("run: dt, t_end and save_stride must be positive");

    Trajectory traj;
    traj.grid = make_grid(cfg.half_width, cfg.n);
    traj.rho0 = rho0;
    traj.u0 = u0;

    FieldState state = initial_state(rho0, u0, traj.grid);
    const double H0 = energy(state, traj.grid);
    traj.h0 = compute_h0(H0);
    traj.energies.emplace_back(0.0, H0);
    traj.states.push_back(state);

    const int n_steps = static_cast<int>(std::floor(cfg.t_end / cfg.dt + 1e-9));
    traj.termination = {TerminationKind::reached_t_end, cfg.dt * n_steps, ""};

    if (auto r = detect_blowup(state, cfg, traj.grid)) {
        traj.termination = {TerminationKind::blowup_detected, 0.0, r->describe()};
        return traj;
    }

    auto save = [&](const FieldState& s) {
        if (traj.states.empty() || traj.states.back().t != s.t) traj.states.push_back(s);
    };

    for (int k = 1; k <= n_steps; ++k) {
        FieldState next;
        try {
            next = step(state, cfg, traj.grid);
        } catch (const StepFailure& e) {
            traj.termination = {TerminationKind::step_failure, cfg.dt * k, e.what()};
            save(state);  // last completed state
            return traj;
        }
        next.t = cfg.dt * k;  // avoid accumulated roundoff in time stamps
        state = std::move(next);

        const double H = energy(state, traj.grid);
        traj.energies.emplace_back(state.t, H);
        const double drift = std::abs(H - H0) / std::max(H0, 1e-12);
        if (drift > cfg.energy_drift_max) {
            traj.termination = {TerminationKind::step_failure, state.t,
                                "relative energy drift " + num(drift) + " exceeds limit " +
                                    num(cfg.energy_drift_max)};
            save(state);
            return traj;
        }

        if (k % cfg.save_stride == 0) save(state);

        if (auto r = detect_blowup(state, cfg, traj.grid)) {
            traj.termination = {TerminationKind::blowup_detected, state.t, r->describe()};
            save(state);
            return traj;
        }
    }
    save(state);
    return traj;
}

}  // namespace coldplasma
