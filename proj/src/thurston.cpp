#include "atlas/thurston.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace atlas {

bool CyclicBlockPartition::valid() const {
    if (n < 2 || p < 1 || n % p != 0 || n / p < 2) return false;
    if (int(blocks.size()) != p) return false;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < p; ++i) {
        if (int(blocks[i].size()) < 2) return false;
        for (int j : blocks[i]) {
            if (j < 0 || j >= n || seen[j]) return false;
            seen[j] = true;
            // the shift by one must send block i onto block (i+1) mod p
            if ((j % p) != (blocks[i][0] % p)) return false;
        }
    }
    for (bool s : seen)
        if (!s) return false;
    if (critical_block < 0 || critical_block >= p) return false;
    bool found = false;
    for (int j : blocks[critical_block]) found = found || (j == 0);
    return found;
}

std::string CyclicBlockPartition::serialize() const {
    std::ostringstream os;
    os << "n=" << n << " p=" << p << " critical=" << critical_block;
    return os.str();
}

std::vector<CyclicBlockPartition> enumerate_partitions(int n) {
    if (n < 2) throw std::invalid_argument("enumerate_partitions: n must be >= 2");
    std::vector<CyclicBlockPartition> out;
    for (int p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        CyclicBlockPartition part;
        part.n = n;
        part.p = p;
        part.blocks.resize(p);
        for (int j = 0; j < n; ++j) part.blocks[j % p].push_back(j);
        part.critical_block = 0;  // orbit index 0 is c
        out.push_back(std::move(part));
    }
    return out;
}

Matrix transition_matrix(const CyclicBlockPartition& part) {
    if (!part.valid()) throw std::invalid_argument("transition_matrix: invalid partition");
    Matrix m = Matrix::zero(part.p);
    if (part.p == 1) {
        // The single block maps over itself through the critical point with
        // degree 2.
        m.at(0, 0) = 0.5;
        return m;
    }
    for (int i = 0; i < part.p; ++i) {
        int j = (i + 1) % part.p;
        m.at(i, j) = (i == part.critical_block) ? 0.5 : 1.0;
    }
    return m;
}

namespace {

// Tarjan strongly connected components on the support graph of m.
struct Tarjan {
    const Matrix& m;
    std::vector<int> index, low, comp;
    std::vector<bool> onstack;
    std::vector<int> stack;
    int counter = 0, ncomp = 0;

    explicit Tarjan(const Matrix& mat)
        : m(mat), index(mat.dim, -1), low(mat.dim, 0), comp(mat.dim, -1), onstack(mat.dim, false) {}

    void dfs(int u) {
        index[u] = low[u] = counter++;
        stack.push_back(u);
        onstack[u] = true;
        for (int w = 0; w < m.dim; ++w) {
            if (m.at(u, w) == 0.0) continue;
            if (index[w] < 0) {
                dfs(w);
                low[u] = std::min(low[u], low[w]);
            } else if (onstack[w]) {
                low[u] = std::min(low[u], index[w]);
            }
        }
        if (low[u] == index[u]) {
            for (;;) {
                int w = stack.back();
                stack.pop_back();
                onstack[w] = false;
                comp[w] = ncomp;
                if (w == u) break;
            }
            ++ncomp;
        }
    }

    std::vector<std::vector<int>> run() {
        for (int u = 0; u < m.dim; ++u)
            if (index[u] < 0) dfs(u);
        std::vector<std::vector<int>> comps(ncomp);
        for (int u = 0; u < m.dim; ++u) comps[comp[u]].push_back(u);
        return comps;
    }
};

// Spectral radius of an irreducible block by power iteration on M + I
// (primitive, so the iteration converges), minus the shift.
double block_spectral_radius(const Matrix& m, const std::vector<int>& nodes, double rel_tol) {
    const int k = int(nodes.size());
    if (k == 1) {
        double diag = m.at(nodes[0], nodes[0]);
        return diag;  // 1x1 component: self-loop weight (0 if none)
    }
    std::vector<double> x(k, 1.0), y(k);
    double lambda = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        for (int i = 0; i < k; ++i) {
            double s = x[i];  // the +I shift
            for (int j = 0; j < k; ++j) s += m.at(nodes[i], nodes[j]) * x[j];
            y[i] = s;
        }
        // Rayleigh quotient with the all-ones left vector surrogate: use the
        // ratio of norms, which converges for primitive matrices.
        double ny = 0.0, nx = 0.0;
        for (int i = 0; i < k; ++i) {
            ny += y[i] * y[i];
            nx += x[i] * x[i];
        }
        double est = std::sqrt(ny / nx);
        for (int i = 0; i < k; ++i) x[i] = y[i] / std::sqrt(ny);
        if (iter > 0 && std::abs(est - lambda) <= rel_tol * std::max(1.0, std::abs(est))) {
            lambda = est;
            break;
        }
        lambda = est;
    }
    return lambda - 1.0;
}

}  // namespace

double leading_eigenvalue(const Matrix& m, double rel_tol) {
    if (m.dim <= 0 || int(m.entries.size()) != m.dim * m.dim)
        throw std::invalid_argument("leading_eigenvalue: dimension mismatch");
    for (double e : m.entries)
        if (e < 0.0) throw std::invalid_argument("leading_eigenvalue: negative entry");
    auto comps = Tarjan(m).run();
    double best = 0.0;
    for (const auto& nodes : comps)
        best = std::max(best, block_spectral_radius(m, nodes, rel_tol));
    return best;
}

bool obstruction_check(const Matrix& m) { return leading_eigenvalue(m) >= 1.0 - 1e-9; }

bool obstruction_check(const CyclicBlockPartition& part) {
    return obstruction_check(transition_matrix(part));
}

}  // namespace atlas
