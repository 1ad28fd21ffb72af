#include "atlas/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "atlas/errors.hpp"

namespace atlas {

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

std::vector<Complex> aberth_roots(std::vector<Complex> coeffs, double tol, int max_iter) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};

    // Factor out roots at the origin.
    std::vector<Complex> roots;
    std::size_t shift = 0;
    while (shift < coeffs.size() - 1 && std::abs(coeffs[shift]) == 0.0) ++shift;
    if (shift > 0) {
        roots.assign(shift, Complex(0.0));
        coeffs.erase(coeffs.begin(), coeffs.begin() + shift);
    }
    const int d = int(coeffs.size()) - 1;
    if (d == 0) return roots;
    if (d == 1) {
        roots.push_back(-coeffs[0] / coeffs[1]);
        return roots;
    }

    std::vector<Complex> deriv(d);
    for (int k = 1; k <= d; ++k) deriv[k - 1] = coeffs[k] * double(k);

    // Fujiwara root bound for the starting circle (scale-aware, unlike the
    // plain Cauchy bound).
    double bound = 0.0;
    for (int k = 0; k < d; ++k) {
        double c = std::abs(coeffs[k] / coeffs[d]);
        if (c > 0.0) bound = std::max(bound, std::pow(c, 1.0 / double(d - k)));
    }
    double r = 1e-3 + 2.0 * bound;

    std::vector<Complex> z(d);
    for (int i = 0; i < d; ++i) {
        double theta = 2.0 * std::numbers::pi * i / d + 0.4;
        z[i] = std::polar(r, theta);
    }

    // Clustered or ill-conditioned roots keep the corrections above tol at a
    // rounding-noise floor, so a stagnation exit accepts once the iteration
    // stops improving below a loose threshold (callers polish with Newton).
    double best = 1e300;
    int stagnant = 0;
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            Complex pz = horner(coeffs, z[i]);
            Complex dpz = horner(deriv, z[i]);
            Complex w = (std::abs(dpz) > 0) ? pz / dpz : Complex(0.0);
            Complex sum = 0.0;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300) diff = 1e-300;
                sum += 1.0 / diff;
            }
            Complex corr = w / (1.0 - w * sum);
            z[i] -= corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(z[i])));
        }
        if (worst < tol) {
            roots.insert(roots.end(), z.begin(), z.end());
            return roots;
        }
        if (worst < 0.5 * best) {
            best = worst;
            stagnant = 0;
        } else {
            ++stagnant;
        }
        if (stagnant >= 50 && worst < 1e-8) {
            roots.insert(roots.end(), z.begin(), z.end());
            return roots;
        }
    }
    throw NumericError("aberth_roots: no convergence for degree " + std::to_string(d));
}

std::vector<Complex> roots_of(const UnivariatePoly& p, double tol) {
    if (p.is_zero()) throw std::invalid_argument("roots_of: zero polynomial");
    const auto& cs = p.coeffs();
    // Uniform power-of-two scaling of the coefficient vector.
    long emax = -1000000000L;
    long emin = 1000000000L;
    for (const auto& c : cs) {
        if (c == 0) continue;
        long e;
        mpz_get_d_2exp(&e, c.get_mpz_t());
        emax = std::max(emax, e);
        emin = std::min(emin, e);
    }
    if (emax - emin > 1900)
        throw NumericError("roots_of: coefficient spread exceeds double range");
    long shift = emax - 500;
    std::vector<Complex> dc(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k] == 0) continue;
        long e;
        double mant = mpz_get_d_2exp(&e, cs[k].get_mpz_t());
        dc[k] = Complex(std::ldexp(mant, int(e - shift)), 0.0);
    }
    return aberth_roots(std::move(dc), tol);
}

}  // namespace atlas
