#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coldplasma/grid.hpp"

namespace coldplasma {

/// h0 = 2 H(0) + sqrt(4 H(0)^2 + 2 H(0)); bounds sup|B - 1| for all time.
double compute_h0(double H0);

using FlagArray = std::vector<std::uint8_t>;

enum class BlowupCase { i, ii, iii };

/// Where and how strongly a criterion holds: the best witnessing node.
struct CriterionWitness {
    int index;      // grid node index
    double alpha;   // node coordinate
    double margin;  // slack in the defining inequality (>= 0 when flagged)
};

struct BlowupCriteriaReport {
    double H0 = 0.0;
    double h0 = 0.0;
    double threshold_i = 0.0;  // (1-h0)^2 / (2(1+h0)); diagnostic even for h0 >= 1
    FlagArray flags_i, flags_ii, flags_iii;
    std::optional<CriterionWitness> witness_i, witness_ii, witness_iii;
    std::optional<double> t_upper;  // earliest analytic blow-up-time bound
    bool any() const { return t_upper.has_value(); }
};

/// (i):  h0 < 1  and  rho0(a) < (1-h0)^2 / (2(1+h0)).
FlagArray criterion_i(const Field& rho0, double h0);

/// (ii): h0 < 1  and  -sqrt(2(1+h0) rho0(a) - (1-h0)^2) >= u0'(a),
/// with the radicand required nonnegative.
FlagArray criterion_ii(const Field& rho0, const Field& du0, double h0);

/// (iii): -sqrt(2(1+h0) rho0(a)) >= u0'(a).  No smallness condition on h0.
FlagArray criterion_iii(const Field& rho0, const Field& du0, double h0);

/** Analytic upper bound for the first zero of the Jacobian w at a point
 * where the given criterion holds.
 *
 * Cases (i) and (ii): pi / sqrt(a) with a = (1-h0)^2, from the comparison
 * oscillator w'' + a w <= b.  Case (iii): the earliest root of the
 * quadratic majorant (c/2) t^2 + u0'(a) t + 1 with c = (1+h0) rho0(a),
 * i.e. t* = (-du0 - sqrt(du0^2 - 2c)) / c, real because the criterion
 * enforces du0 <= -sqrt(2c).
 *
 * Throws std::invalid_argument when the criterion does not hold at the
 * supplied point values (the bound formula is meaningless there).
 */
double blowup_time_bound(BlowupCase c, double rho0_alpha, double du0_alpha, double h0);

/// Full report for initial data (rho0, u0): energy, h0, per-node flags for
/// all three criteria, witnesses, and the earliest analytic time bound.
BlowupCriteriaReport evaluate(const Field& rho0, const Field& u0, const Grid& g);

}  // namespace coldplasma
