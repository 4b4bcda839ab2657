#pragma once

#include <vector>

namespace coldplasma {

/** Solves a cyclic tridiagonal system.
 *
 * Row i reads  a[i]*x[i-1] + b[i]*x[i] + c[i]*x[i+1] = r[i]  with indices
 * wrapping mod n (row 0 couples to x[n-1], row n-1 to x[0]).  Thomas
 * algorithm on the interior plus a Sherman-Morrison rank-one correction for
 * the wrap entries.  Requires n >= 3 and a diagonally healthy system; the
 * caller is responsible for well-posedness.
 */
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a,
                                             const std::vector<double>& b,
                                             const std::vector<double>& c,
                                             const std::vector<double>& r);

}  // namespace coldplasma
