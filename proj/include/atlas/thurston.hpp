#ifndef ATLAS_THURSTON_HPP
#define ATLAS_THURSTON_HPP

#include <string>
#include <vector>

namespace atlas {

// Partition of the period-n critical orbit {c, f(c), ..., f^{n-1}(c)} into p
// blocks by orbit index mod p, cyclically permuted by the dynamics.  Each
// block must contain at least two orbit points, so p | n and n/p >= 2.
struct CyclicBlockPartition {
    int n = 0;
    int p = 0;
    std::vector<std::vector<int>> blocks;  // blocks[i] = {j : j mod p == i}
    int critical_block = 0;                // block containing orbit index 0 (c)

    bool valid() const;
    std::string serialize() const;  // "n=<n> p=<p> critical=<j>"
};

// Row-major nonnegative matrix.
struct Matrix {
    int dim = 0;
    std::vector<double> entries;

    double& at(int i, int j) { return entries[i * dim + j]; }
    double at(int i, int j) const { return entries[i * dim + j]; }
    static Matrix zero(int dim) { return {dim, std::vector<double>(dim * dim, 0.0)}; }
};

// All canonical cyclic block partitions of the n-cycle: one per divisor p of
// n with n/p >= 2.
std::vector<CyclicBlockPartition> enumerate_partitions(int n);

// Pullback-degree transition matrix of the partition multicurve: cyclic p x p
// with a 1/2 out of the critical block and 1 elsewhere.
Matrix transition_matrix(const CyclicBlockPartition& part);

// Spectral radius of a nonnegative matrix: strongly-connected-component
// decomposition, then shifted power iteration per irreducible block.
double leading_eigenvalue(const Matrix& m, double rel_tol = 1e-12);

// True iff the multicurve is an obstruction: leading eigenvalue >= 1 (the
// boundary case counts, tested with a 1e-9 slack).
bool obstruction_check(const Matrix& m);
bool obstruction_check(const CyclicBlockPartition& part);

}  // namespace atlas

#endif
