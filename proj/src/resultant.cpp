#include "atlas/resultant.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "atlas/errors.hpp"

namespace atlas {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 x, u64 y, u64 p) { return u64(u128(x) * y % p); }

u64 powmod(u64 x, u64 e, u64 p) {
    u64 r = 1;
    x %= p;
    while (e) {
        if (e & 1) r = mulmod(r, x, p);
        x = mulmod(x, x, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 x, u64 p) { return powmod(x, p - 2, p); }

std::vector<u64> prime_pool(std::size_t count) {
    static std::vector<u64> primes;
    static mpz_class cursor = (mpz_class(1) << 62);
    while (primes.size() < count) {
        mpz_nextprime(cursor.get_mpz_t(), cursor.get_mpz_t());
        primes.push_back(mpz_get_ui(cursor.get_mpz_t()));
    }
    return {primes.begin(), primes.begin() + count};
}

// Determinant over Z/p by Gaussian elimination with pivoting.
u64 det_mod(std::vector<std::vector<u64>> m, u64 p) {
    const std::size_t n = m.size();
    u64 det = 1;
    bool neg = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            neg = !neg;
        }
        det = mulmod(det, m[col][col], p);
        u64 inv = invmod(m[col][col], p);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            u64 f = mulmod(m[r][col], inv, p);
            for (std::size_t c = col; c < n; ++c) {
                u64 sub = mulmod(f, m[col][c], p);
                m[r][c] = (m[r][c] >= sub) ? m[r][c] - sub : m[r][c] + p - sub;
            }
        }
    }
    if (neg && det) det = p - det;
    return det;
}

// Sylvester determinant mod p with the variable a evaluated at a0.
u64 sylvester_det_mod(const std::vector<UnivariatePoly>& fc,
                      const std::vector<UnivariatePoly>& gc, u64 a0, u64 p) {
    const int m = int(fc.size()) - 1;
    const int n = int(gc.size()) - 1;
    std::vector<u64> F(m + 1), G(n + 1);
    for (int k = 0; k <= m; ++k) F[k] = fc[k].evaluate_mod(a0, p);
    for (int k = 0; k <= n; ++k) G[k] = gc[k].evaluate_mod(a0, p);
    const int N = m + n;
    std::vector<std::vector<u64>> M(N, std::vector<u64>(N, 0));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[r][r + k] = F[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[n + r][r + k] = G[n - k];
    return det_mod(std::move(M), p);
}

// Newton interpolation over Z/p at the points xs.
std::vector<u64> interpolate_mod(const std::vector<u64>& xs, std::vector<u64> ys, u64 p) {
    const std::size_t n = xs.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            u64 num = (ys[i] >= ys[i - 1]) ? ys[i] - ys[i - 1] : ys[i] + p - ys[i - 1];
            u64 den = (xs[i] >= xs[i - k]) ? xs[i] - xs[i - k] : xs[i] + p - xs[i - k];
            ys[i] = mulmod(num, invmod(den, p), p);
        }
    std::vector<u64> poly{ys[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        // poly = poly * (x - xs[k]) + ys[k]
        poly.insert(poly.begin(), 0);
        u64 xk = xs[k] % p;
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
            u64 sub = mulmod(poly[i + 1], xk, p);
            poly[i] = (poly[i] >= sub) ? poly[i] - sub : poly[i] + p - sub;
        }
        poly[0] = (poly[0] + ys[k]) % p;
    }
    return poly;
}

void require_valid(const BivariatePoly& p, const BivariatePoly& q) {
    if (p.is_zero() || q.is_zero())
        throw std::invalid_argument("resultant_v: zero polynomial input");
    if (p.degree_v() < 1 && q.degree_v() < 1)
        throw std::invalid_argument("resultant_v: both inputs constant in v");
}

}  // namespace

std::vector<std::vector<UnivariatePoly>> sylvester_matrix_v(const BivariatePoly& p,
                                                            const BivariatePoly& q) {
    const int m = p.degree_v();
    const int n = q.degree_v();
    auto fc = p.v_coefficients();
    auto gc = q.v_coefficients();
    const int N = m + n;
    std::vector<std::vector<UnivariatePoly>> M(N, std::vector<UnivariatePoly>(N));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[r][r + k] = fc[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[n + r][r + k] = gc[n - k];
    return M;
}

UnivariatePoly resultant_v_bareiss(const BivariatePoly& p, const BivariatePoly& q) {
    require_valid(p, q);
    if (p.degree_v() < 1) {
        // Res_v(c(a), q) = c(a)^deg_v(q)
        UnivariatePoly r = UnivariatePoly::constant(1);
        UnivariatePoly c = p.coeff_of_v(0);
        for (int k = 0; k < q.degree_v(); ++k) r = r * c;
        return r;
    }
    if (q.degree_v() < 1) {
        UnivariatePoly r = UnivariatePoly::constant(1);
        UnivariatePoly c = q.coeff_of_v(0);
        for (int k = 0; k < p.degree_v(); ++k) r = r * c;
        return r;
    }

    auto M = sylvester_matrix_v(p, q);
    const int N = int(M.size());
    UnivariatePoly prev = UnivariatePoly::constant(1);
    bool neg = false;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int piv = k + 1;
            while (piv < N && M[piv][k].is_zero()) ++piv;
            if (piv == N) return {};  // singular for all a: resultant is 0
            std::swap(M[piv], M[k]);
            neg = !neg;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j)
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]).exact_div(prev);
            M[i][k] = {};
        }
        prev = M[k][k];
    }
    UnivariatePoly det = M[N - 1][N - 1];
    return neg ? -det : det;
}

mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m) {
    const int N = int(m.size());
    mpz_class prev = 1;
    bool neg = false;
    for (int k = 0; k < N - 1; ++k) {
        if (m[k][k] == 0) {
            int piv = k + 1;
            while (piv < N && m[piv][k] == 0) ++piv;
            if (piv == N) return 0;
            std::swap(m[piv], m[k]);
            neg = !neg;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                mpz_class num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return neg ? mpz_class(-m[N - 1][N - 1]) : m[N - 1][N - 1];
}

UnivariatePoly resultant_v_interpolate(const BivariatePoly& p, const BivariatePoly& q) {
    require_valid(p, q);
    if (p.degree_v() < 1 || q.degree_v() < 1) return resultant_v_bareiss(p, q);

    auto fc = p.v_coefficients();
    auto gc = q.v_coefficients();
    const long degbound =
        long(q.degree_v()) * std::max(p.degree_a(), 0) + long(p.degree_v()) * std::max(q.degree_a(), 0);

    // Pass 1: find the true degree modulo two primes (guards against a prime
    // killing the leading coefficient).
    auto primes = prime_pool(2);
    long truedeg = -1;
    std::vector<u64> xs(degbound + 1);
    for (long i = 0; i <= degbound; ++i) xs[i] = u64(i);
    for (u64 pr : primes) {
        std::vector<u64> ys(xs.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(xs.size()); ++i)
            ys[i] = sylvester_det_mod(fc, gc, xs[i], pr);
        auto poly = interpolate_mod(xs, ys, pr);
        long d = long(poly.size()) - 1;
        while (d >= 0 && poly[d] == 0) --d;
        truedeg = std::max(truedeg, d);
    }
    if (truedeg < 0) return {};

    // Pass 2: CRT lift at truedeg+1 points until the symmetric representative
    // stabilizes across a prime.
    std::vector<u64> pts(truedeg + 1);
    for (long i = 0; i <= truedeg; ++i) pts[i] = u64(i);
    std::vector<mpz_class> residues(truedeg + 1, 0);
    mpz_class modulus = 1;
    std::vector<mpz_class> prev_reps;
    std::size_t nprimes = 0;
    std::vector<mpz_class> reps(truedeg + 1);
    for (;;) {
        ++nprimes;
        u64 pr = prime_pool(nprimes + 2).back();  // skip the degree-pass primes
        std::vector<u64> ys(pts.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(pts.size()); ++i)
            ys[i] = sylvester_det_mod(fc, gc, pts[i], pr);
        auto poly = interpolate_mod(pts, ys, pr);
        poly.resize(truedeg + 1, 0);

        // CRT: residues mod modulus with the new prime.
        mpz_class prz = mpz_class(std::to_string(pr));
        mpz_class minv;
        mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), prz.get_mpz_t());
        for (long k = 0; k <= truedeg; ++k) {
            mpz_class r_old = residues[k] % prz;
            mpz_class diff = (mpz_class(std::to_string(poly[k])) - r_old) % prz;
            if (diff < 0) diff += prz;
            residues[k] += modulus * ((diff * minv) % prz);
        }
        modulus *= prz;

        mpz_class half = modulus / 2;
        for (long k = 0; k <= truedeg; ++k)
            reps[k] = (residues[k] > half) ? residues[k] - modulus : residues[k];
        if (!prev_reps.empty() && reps == prev_reps) break;
        prev_reps = reps;
        if (nprimes > 4096) throw NumericError("resultant_v_interpolate: CRT failed to stabilize");
    }

    UnivariatePoly result{std::vector<mpz_class>(reps.begin(), reps.end())};

    // Verification at a fresh point against the exact integer determinant.
    mpz_class t = truedeg + 3;
    const int m = int(fc.size()) - 1, n = int(gc.size()) - 1, N = m + n;
    std::vector<mpz_class> F(m + 1), G(n + 1);
    for (int k = 0; k <= m; ++k) F[k] = fc[k].evaluate_int(t);
    for (int k = 0; k <= n; ++k) G[k] = gc[k].evaluate_int(t);
    std::vector<std::vector<mpz_class>> M(N, std::vector<mpz_class>(N, 0));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[r][r + k] = F[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[n + r][r + k] = G[n - k];
    if (integer_determinant(std::move(M)) != result.evaluate_int(t))
        throw InternalError("resultant_v_interpolate: verification failed");
    return result;
}

UnivariatePoly resultant_v(const BivariatePoly& p, const BivariatePoly& q) {
    require_valid(p, q);
    const int dim = std::max(p.degree_v(), 0) + std::max(q.degree_v(), 0);
    if (dim <= 12) return resultant_v_bareiss(p, q);
    return resultant_v_interpolate(p, q);
}

UnivariatePoly discriminant_v(const BivariatePoly& p) {
    return resultant_v(p, p.derivative_v());
}

}  // namespace atlas
