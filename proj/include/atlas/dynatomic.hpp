#ifndef ATLAS_DYNATOMIC_HPP
#define ATLAS_DYNATOMIC_HPP

#include <filesystem>
#include <string>

#include "atlas/bivariate_poly.hpp"

namespace atlas {

// Default symbolic degree budget: deg_v grows like 3^(n-1).
inline constexpr int kDefaultCurveBudget = 8;

// Vanishing condition for the marked critical point +a to have period
// dividing n under z |-> z^3 - 3a^2 z + 2a^3 + v.  Monic in v with
// deg_v = 3^(n-1).
BivariatePoly build_Qn(int n, int budget = kDefaultCurveBudget);

// Exact-period-n factor, by recursive division of Q_n by the Phi_d over the
// proper divisors d of n.  The division remainder is checked to be zero and
// the product identity prod_{d|n} Phi_d = Q_n is re-verified by exact
// multiplication; a failure of either check throws InternalError.
// Results are cached process-wide (write-once map).
const BivariatePoly& build_Phin(int n, int budget = kDefaultCurveBudget);

void clear_phin_cache();

// Text cache format, deterministic bytes:
//   header "PHIN n=<n> degv=<d>", then one line per term "i j coeff",
//   sorted lexicographically by (i, j).
std::string serialize_phin(const BivariatePoly& p, int n);
BivariatePoly parse_phin(const std::string& text, int* n_out = nullptr);

void write_phin_file(const std::filesystem::path& path, const BivariatePoly& p, int n);
BivariatePoly read_phin_file(const std::filesystem::path& path, int* n_out = nullptr);

}  // namespace atlas

#endif
