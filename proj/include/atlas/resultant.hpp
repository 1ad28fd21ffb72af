#ifndef ATLAS_RESULTANT_HPP
#define ATLAS_RESULTANT_HPP

#include <vector>

#include "atlas/bivariate_poly.hpp"

namespace atlas {

// Sylvester matrix of (p, q) with respect to v; entries are polynomials in a.
std::vector<std::vector<UnivariatePoly>> sylvester_matrix_v(const BivariatePoly& p,
                                                            const BivariatePoly& q);

// Res_v(p, q) by fraction-free Gaussian elimination (Bareiss) on the
// polynomial-entry Sylvester matrix.  Exact; intended for small inputs.
UnivariatePoly resultant_v_bareiss(const BivariatePoly& p, const BivariatePoly& q);

// Res_v(p, q) by exact evaluation/interpolation: the resultant is computed
// modulo word-size primes at integer points, interpolated, lifted by CRT
// until stable, and verified against an exact integer determinant at a
// fresh evaluation point.
UnivariatePoly resultant_v_interpolate(const BivariatePoly& p, const BivariatePoly& q);

// Front door: picks the direct route for small Sylvester matrices and the
// interpolation route otherwise.  Throws std::invalid_argument when both
// inputs are constant in v or either is zero.
UnivariatePoly resultant_v(const BivariatePoly& p, const BivariatePoly& q);

// disc_v up to the leading-coefficient factor: Res_v(p, dp/dv).
UnivariatePoly discriminant_v(const BivariatePoly& p);

// Exact determinant of an integer matrix (Bareiss).  Exposed for tests.
mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m);

}  // namespace atlas

#endif
