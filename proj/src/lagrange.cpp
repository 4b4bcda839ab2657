#include "coldplasma/lagrange.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "coldplasma/spline.hpp"

namespace coldplasma {

namespace {

struct SplineSet {
    PeriodicSpline u, v, B;
    SplineSet(const FieldState& s, const Grid& g) : u(s.u, g), v(s.v, g), B(s.B, g) {}
};

// Rolling two-slot cache of per-state splines; the RK4 loop only ever needs
// a consecutive (i, i+1) pair.
class FieldSplines {
  public:
    FieldSplines(const Trajectory& traj, const Grid& g) : traj_(traj), g_(g) {}
    const SplineSet& at(size_t i) {
        auto& slot = slots_[i % 2];
        if (!slot.set || slot.index != i) {
            slot.set = std::make_unique<SplineSet>(traj_.states[i], g_);
            slot.index = i;
        }
        return *slot.set;
    }

  private:
    struct Slot {
        size_t index = static_cast<size_t>(-1);
        std::unique_ptr<SplineSet> set;
    };
    const Trajectory& traj_;
    const Grid& g_;
    std::array<Slot, 2> slots_;
};

struct Rhs {
    double dx, dw, domega;
};

}  // namespace

CharacteristicTrace trace(const Trajectory& traj, double alpha, const Grid& g,
                          double w_floor) {
    if (!(alpha > -g.half_width && alpha < g.half_width))
        throw std::invalid_argument("trace: alpha outside (-L, L)");
    if (traj.states.empty()) throw std::invalid_argument("trace: empty trajectory");

    // Linear-in-time interpolation between saved states is only accurate
    // when every step was kept.
    if (traj.energies.size() != traj.states.size())
        throw std::invalid_argument(
            "trace: trajectory must be saved at every step (save_stride = 1); have " +
            std::to_string(traj.states.size()) + " states for " +
            std::to_string(traj.energies.size()) + " recorded steps");

    const double rho0_alpha = interpolate(traj.rho0, g, alpha);
    const Field du0 = derivative(traj.u0, g);
    const double du0_alpha = interpolate(du0, g, alpha);

    CharacteristicTrace tr;
    tr.alpha = alpha;
    double x = alpha, w = 1.0, omega = du0_alpha;
    tr.times.push_back(traj.states.front().t);
    tr.positions.push_back(x);
    tr.w.push_back(w);
    tr.wprime.push_back(omega);

    FieldSplines splines(traj, g);
    auto eval = [&](size_t i, double theta, double xq, double wq, double omq) -> Rhs {
        const SplineSet& s0 = splines.at(i);
        const SplineSet& s1 = splines.at(i + 1);
        const double u = (1.0 - theta) * s0.u.eval_periodic(xq) + theta * s1.u.eval_periodic(xq);
        const double v = (1.0 - theta) * s0.v.eval_periodic(xq) + theta * s1.v.eval_periodic(xq);
        const double B = (1.0 - theta) * s0.B.eval_periodic(xq) + theta * s1.B.eval_periodic(xq);
        return {u, omq, (B - v * v) * rho0_alpha - B * B * wq};
    };

    for (size_t i = 0; i + 1 < traj.states.size(); ++i) {
        const double h = traj.states[i + 1].t - traj.states[i].t;
        const Rhs k1 = eval(i, 0.0, x, w, omega);
        const Rhs k2 = eval(i, 0.5, x + 0.5 * h * k1.dx, w + 0.5 * h * k1.dw,
                            omega + 0.5 * h * k1.domega);
        const Rhs k3 = eval(i, 0.5, x + 0.5 * h * k2.dx, w + 0.5 * h * k2.dw,
                            omega + 0.5 * h * k2.domega);
        const Rhs k4 =
            eval(i, 1.0, x + h * k3.dx, w + h * k3.dw, omega + h * k3.domega);
        x += (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
        w += (h / 6.0) * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
        omega += (h / 6.0) * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);

        if (!(x >= -g.half_width && x < g.half_width))
            throw std::runtime_error("trace: characteristic left the domain at t = " +
                                     std::to_string(traj.states[i + 1].t) +
                                     " (x = " + std::to_string(x) + ")");

        tr.times.push_back(traj.states[i + 1].t);
        tr.positions.push_back(x);
        tr.w.push_back(w);
        tr.wprime.push_back(omega);
        if (w <= w_floor) {
            tr.zero_crossing = traj.states[i + 1].t;
            break;
        }
    }
    return tr;
}

double mass_invariant_residual(const CharacteristicTrace& tr, const Trajectory& traj,
                               double rho0_alpha) {
    const Grid& g = traj.grid;
    double worst = 0.0;
    for (size_t k = 0; k < tr.times.size(); ++k) {
        if (tr.zero_crossing && tr.times[k] >= *tr.zero_crossing) break;
        const FieldState& s = traj.states[k];
        double rho_max = 0.0;
        for (double r : s.rho) rho_max = std::max(rho_max, r);
        if (rho_max > 5.0) break;
        PeriodicSpline rho_spline(s.rho, g);
        const double resid = std::abs(tr.w[k] * rho_spline.eval_periodic(tr.positions[k]) -
                                      rho0_alpha);
        worst = std::max(worst, resid);
    }
    return worst;
}

std::optional<double> fit_blowup_rate(const CharacteristicTrace& tr) {
    if (!tr.zero_crossing) return std::nullopt;
    const double t_star = *tr.zero_crossing;

    std::vector<double> xs, ys;
    for (size_t k = 0; k < tr.times.size(); ++k) {
        const double gap = t_star - tr.times[k];
        if (gap <= 0.0 || tr.w[k] <= 0.0 || tr.wprime[k] == 0.0) continue;
        xs.push_back(std::log(gap));
        ys.push_back(std::log(std::abs(tr.wprime[k] / tr.w[k])));
    }
    // Final approach window: the last samples before the crossing.
    const size_t window = 40;
    if (xs.size() > window) {
        xs.erase(xs.begin(), xs.end() - window);
        ys.erase(ys.begin(), ys.end() - window);
    }
    if (xs.size() < 10) return std::nullopt;

    const size_t m = xs.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t k = 0; k < m; ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (m * sxy - sx * sy) / denom;
}

}  // namespace coldplasma
