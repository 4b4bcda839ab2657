#pragma once

#include <vector>

#include "coldplasma/grid.hpp"

namespace coldplasma {

/** Periodic cubic spline through the samples of a Field.
 *
 * Building the spline costs one cyclic tridiagonal solve for the
 * second-derivative moments; evaluation is O(1) per point.  Useful when a
 * field must be probed many times (characteristic tracing); for one-shot
 * queries see interpolate() in grid.hpp.
 */
class PeriodicSpline {
  public:
    PeriodicSpline(const Field& f, const Grid& g);

    /// Evaluates at x in [-L, L).  Throws std::out_of_range otherwise.
    double operator()(double x) const;

    /// Evaluates at x wrapped periodically into [-L, L).
    double eval_periodic(double x) const;

  private:
    double left_;
    double dx_;
    std::vector<double> y_;
    std::vector<double> m_;  // second-derivative moments at the nodes
};

}  // namespace coldplasma
