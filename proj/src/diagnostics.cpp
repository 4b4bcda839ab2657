#include "coldplasma/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace coldplasma {

double check_B_bound(const Trajectory& traj) {
    double worst = -traj.h0;
    for (const FieldState& s : traj.states) {
        double sup = 0.0;
        for (double b : s.B) sup = std::max(sup, std::abs(b - 1.0));
        worst = std::max(worst, sup - traj.h0);
    }
    return worst;
}

double identity_residual(const FieldState& s, const Grid& g) {
    const Field vx = derivative(s.v, g);
    Field lhs(s.rho.size()), rhs(s.rho.size());
    for (size_t j = 0; j < s.rho.size(); ++j) {
        const double r1 = s.rho[j] - 1.0;
        const double b1 = s.B[j] - 1.0;
        lhs[j] = r1 * r1;
        rhs[j] = b1 * b1 + vx[j] * vx[j] + 2.0 * s.rho[j] * s.v[j] * s.v[j];
    }
    const double L = integrate(lhs, g);
    const double R = integrate(rhs, g);
    return std::abs(L - R) / std::max(L, 1e-12);
}

DiagnosticsReport summarize(const Trajectory& traj, const Grid& g) {
    DiagnosticsReport rep;
    rep.max_B_violation = traj.states.empty() ? 0.0 : check_B_bound(traj);

    for (const FieldState& s : traj.states) {
        rep.max_identity_relerr = std::max(rep.max_identity_relerr, identity_residual(s, g));
        double vsup = 0.0;
        for (double v : s.v) vsup = std::max(vsup, std::abs(v));
        rep.v_sup_series.emplace_back(s.t, vsup);
    }

    if (!traj.energies.empty()) {
        const double H0 = traj.energies.front().second;
        for (const auto& [t, H] : traj.energies)
            rep.max_energy_drift =
                std::max(rep.max_energy_drift, std::abs(H - H0) / std::max(H0, 1e-12));
    }

    if (!traj.states.empty()) {
        Field pert = traj.states.front().rho;
        for (double& x : pert) x -= 1.0;
        const double mass0 = integrate(pert, g);
        for (const FieldState& s : traj.states) {
            Field p = s.rho;
            for (double& x : p) x -= 1.0;
            rep.mass_drift = std::max(rep.mass_drift, std::abs(integrate(p, g) - mass0));
        }
    }
    return rep;
}

}  // namespace coldplasma
