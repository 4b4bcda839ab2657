#include "coldplasma/criteria.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coldplasma/dynamics.hpp"

namespace coldplasma {

double compute_h0(double H0) {
    if (H0 < 0.0)
        throw std::invalid_argument("compute_h0: H0 must be nonnegative, got " +
                                    std::to_string(H0));
    return 2.0 * H0 + std::sqrt(4.0 * H0 * H0 + 2.0 * H0);
}

FlagArray criterion_i(const Field& rho0, double h0) {
    FlagArray flags(rho0.size(), 0);
    if (h0 >= 1.0) return flags;
    const double threshold = (1.0 - h0) * (1.0 - h0) / (2.0 * (1.0 + h0));
    for (size_t j = 0; j < rho0.size(); ++j) flags[j] = rho0[j] < threshold ? 1 : 0;
    return flags;
}

FlagArray criterion_ii(const Field& rho0, const Field& du0, double h0) {
    FlagArray flags(rho0.size(), 0);
    if (h0 >= 1.0) return flags;
    const double a = (1.0 - h0) * (1.0 - h0);
    for (size_t j = 0; j < rho0.size(); ++j) {
        const double radicand = 2.0 * (1.0 + h0) * rho0[j] - a;
        flags[j] = (radicand >= 0.0 && -std::sqrt(radicand) >= du0[j]) ? 1 : 0;
    }
    return flags;
}

FlagArray criterion_iii(const Field& rho0, const Field& du0, double h0) {
    FlagArray flags(rho0.size(), 0);
    for (size_t j = 0; j < rho0.size(); ++j)
        flags[j] = (-std::sqrt(2.0 * (1.0 + h0) * rho0[j]) >= du0[j]) ? 1 : 0;
    return flags;
}

double blowup_time_bound(BlowupCase c, double rho0_alpha, double du0_alpha, double h0) {
    switch (c) {
        case BlowupCase::i: {
            const double threshold = (1.0 - h0) * (1.0 - h0) / (2.0 * (1.0 + h0));
            if (!(h0 < 1.0) || !(rho0_alpha < threshold))
                throw std::invalid_argument("blowup_time_bound: criterion (i) not satisfied");
            return std::numbers::pi / (1.0 - h0);  // pi / sqrt(a), a = (1-h0)^2
        }
        case BlowupCase::ii: {
            const double radicand =
                2.0 * (1.0 + h0) * rho0_alpha - (1.0 - h0) * (1.0 - h0);
            if (!(h0 < 1.0) || radicand < 0.0 || !(-std::sqrt(radicand) >= du0_alpha))
                throw std::invalid_argument("blowup_time_bound: criterion (ii) not satisfied");
            return std::numbers::pi / (1.0 - h0);
        }
        case BlowupCase::iii: {
            const double c2 = (1.0 + h0) * rho0_alpha;
            if (!(-std::sqrt(2.0 * c2) >= du0_alpha))
                throw std::invalid_argument("blowup_time_bound: criterion (iii) not satisfied");
            // Earliest root of the majorant (c2/2) t^2 + du0 t + 1; the
            // criterion makes the discriminant du0^2 - 2 c2 nonnegative.
            const double disc = du0_alpha * du0_alpha - 2.0 * c2;
            return (-du0_alpha - std::sqrt(std::max(disc, 0.0))) / c2;
        }
    }
    throw std::invalid_argument("blowup_time_bound: unknown case");
}

namespace {

void record_witness(std::optional<CriterionWitness>& best, const FlagArray& flags,
                    const Grid& g, const std::vector<double>& margins) {
    for (size_t j = 0; j < flags.size(); ++j) {
        if (!flags[j]) continue;
        if (!best || margins[j] > best->margin)
            best = CriterionWitness{static_cast<int>(j), g.nodes[j], margins[j]};
    }
}

}  // namespace

BlowupCriteriaReport evaluate(const Field& rho0, const Field& u0, const Grid& g) {
    require_on_grid(rho0, g);
    require_on_grid(u0, g);

    BlowupCriteriaReport rep;
    const FieldState s0 = initial_state(rho0, u0, g);
    rep.H0 = energy(s0, g);
    rep.h0 = compute_h0(rep.H0);
    rep.threshold_i = (1.0 - rep.h0) * (1.0 - rep.h0) / (2.0 * (1.0 + rep.h0));

    const Field du0 = derivative(u0, g);
    rep.flags_i = criterion_i(rho0, rep.h0);
    rep.flags_ii = criterion_ii(rho0, du0, rep.h0);
    rep.flags_iii = criterion_iii(rho0, du0, rep.h0);

    const size_t n = rho0.size();
    std::vector<double> margin_i(n), margin_ii(n), margin_iii(n);
    for (size_t j = 0; j < n; ++j) {
        margin_i[j] = rep.threshold_i - rho0[j];
        const double rad2 = 2.0 * (1.0 + rep.h0) * rho0[j] - (1.0 - rep.h0) * (1.0 - rep.h0);
        margin_ii[j] = rad2 >= 0.0 ? -std::sqrt(rad2) - du0[j] : -1.0;
        margin_iii[j] = -std::sqrt(2.0 * (1.0 + rep.h0) * rho0[j]) - du0[j];
    }
    record_witness(rep.witness_i, rep.flags_i, g, margin_i);
    record_witness(rep.witness_ii, rep.flags_ii, g, margin_ii);
    record_witness(rep.witness_iii, rep.flags_iii, g, margin_iii);

    std::optional<double> t_upper;
    auto consider = [&](double t) {
        if (!t_upper || t < *t_upper) t_upper = t;
    };
    for (size_t j = 0; j < n; ++j) {
        if (rep.flags_i[j]) consider(blowup_time_bound(BlowupCase::i, rho0[j], du0[j], rep.h0));
        if (rep.flags_ii[j]) consider(blowup_time_bound(BlowupCase::ii, rho0[j], du0[j], rep.h0));
        if (rep.flags_iii[j])
            consider(blowup_time_bound(BlowupCase::iii, rho0[j], du0[j], rep.h0));
    }
    rep.t_upper = t_upper;
    return rep;
}

}  // namespace coldplasma
