#pragma once

#include <cmath>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/grid.hpp"

namespace cptest {

inline coldplasma::Field sample(const coldplasma::Grid& g, double (*f)(double)) {
    coldplasma::Field out(g.nodes.size());
    for (size_t j = 0; j < out.size(); ++j) out[j] = f(g.nodes[j]);
    return out;
}

// rho0 = 1 - 0.8 sech(w x), u0 = 0 on [-10, 10].
inline std::pair<coldplasma::Field, coldplasma::Field> well_data(const coldplasma::Grid& g,
                                                                 double w) {
    coldplasma::Field rho0(g.nodes.size()), u0(g.nodes.size(), 0.0);
    for (size_t j = 0; j < rho0.size(); ++j)
        rho0[j] = 1.0 - 0.8 / std::cosh(w * g.nodes[j]);
    return {rho0, u0};
}

// Shared narrow-well blow-up run at the reference resolution, saved
// every step, carried past the breakdown; built once per test binary.
inline const coldplasma::Trajectory& narrow_well_run() {
    static const coldplasma::Trajectory traj = [] {
        coldplasma::SimConfig cfg;
        cfg.n = 2048;
        cfg.t_end = 2.6;
        const coldplasma::Grid g = coldplasma::make_grid(cfg.half_width, cfg.n);
        auto [rho0, u0] = well_data(g, 7.0);
        return coldplasma::run(cfg, rho0, u0);
    }();
    return traj;
}

}  // namespace cptest
