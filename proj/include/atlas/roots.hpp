#ifndef ATLAS_ROOTS_HPP
#define ATLAS_ROOTS_HPP

#include <complex>
#include <vector>

#include "atlas/bivariate_poly.hpp"

namespace atlas {

// All complex roots of sum_k coeffs[k] z^k by Aberth-Ehrlich simultaneous
// iteration (deterministic starting configuration).  Throws NumericError on
// non-convergence.
std::vector<Complex> aberth_roots(std::vector<Complex> coeffs, double tol = 1e-13,
                                  int max_iter = 400);

// Roots of an exact integer polynomial.  Coefficients are scaled uniformly by
// a power of two (which leaves the roots unchanged) before conversion to
// double; throws NumericError when the coefficient spread exceeds the double
// exponent range even after scaling.
std::vector<Complex> roots_of(const UnivariatePoly& p, double tol = 1e-13);

}  // namespace atlas

#endif
