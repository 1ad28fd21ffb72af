#include "atlas/cubic_map.hpp"

#include <cmath>
#include <limits>

#include "atlas/errors.hpp"

namespace atlas {

double CubicMap::escape_radius() const {
    double m = 2.0 * (1.0 + std::norm(a_) + std::abs(2.0 * a_ * a_ * a_ + v_));
    return std::max(4.0, m);
}

std::vector<Complex> orbit(const CubicMap& map, Complex z, int k) {
    if (k < 0) throw std::invalid_argument("orbit: k must be >= 0");
    std::vector<Complex> out;
    out.reserve(k + 1);
    out.push_back(z);
    for (int i = 0; i < k; ++i) {
        z = map.apply(z);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericError("orbit: overflow to floating infinity at step " +
                               std::to_string(i + 1));
        out.push_back(z);
    }
    return out;
}

GreenValue green(const CubicMap& map, Complex z, double tol, int budget) {
    if (tol <= 0) throw std::invalid_argument("green: tol must be positive");
    const double r0 = map.escape_radius();
    // Size of the lower-order part of f; controls the tail once |z| is large.
    const double low = 3.0 * std::norm(map.a()) + std::abs(2.0 * map.a() * map.a() * map.a() + map.v()) + 1.0;
    const double log2 = std::log(2.0);

    GreenValue g;
    double scale = 1.0;  // 3^{-k}
    int k = 0;
    bool escaped = false;
    for (; k < budget; ++k) {
        double az = std::abs(z);
        if (az >= r0) {
            escaped = true;
            // |g - 3^{-k} log|z_k|| <= 3^{-k} * min(log2/2, tail from |eps|<=low/|z|^2)
            double tail = std::min(log2 / 2.0, 0.75 * low / (az * az));
            double err = scale * tail;
            if (err <= tol || az > 1e100) {
                g.value = scale * std::log(az);
                g.error_bound = err;
                g.iterations_used = k;
                g.status = EscapeClass::EscapeLocus;
                return g;
            }
        }
        z = map.apply(z);
        scale /= 3.0;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericError("green: overflow before tail bound was reached");
    }
    g.iterations_used = k;
    if (escaped) {
        // Budget ran out after escape: report the last estimate.
        double az = std::abs(z);
        g.value = scale * std::log(az);
        g.error_bound = scale * log2 / 2.0;
        g.status = EscapeClass::EscapeLocus;
        return g;
    }
    double az = std::abs(z);
    if (az < r0) {
        g.status = EscapeClass::Bounded;
        g.value = 0.0;
        g.undetermined_possible = true;
    } else {
        g.status = EscapeClass::Undetermined;
    }
    return g;
}

EscapeClass classify_escape(const CubicMap& map, double tol, int budget) {
    GreenValue g = green(map, map.free_critical(), tol, budget);
    if (g.status == EscapeClass::EscapeLocus && g.value - g.error_bound > 0)
        return EscapeClass::EscapeLocus;
    // A very small budget cannot distinguish a bounded orbit from a slow one.
    if (g.status == EscapeClass::Bounded && budget >= 64) return EscapeClass::Bounded;
    return EscapeClass::Undetermined;
}

PeriodResult exact_period(const CubicMap& map, int nmax, double tol) {
    if (nmax < 1) throw std::invalid_argument("exact_period: nmax must be >= 1");
    // Iterate x = z - a instead of z: with z = a + x,
    //   f(z) - a = x^2 (x + 3a) + (v - a),
    // which avoids the a^3-scale cancellations of the raw orbit and keeps the
    // rounding floor near eps * |a| even for very large parameters.
    // The residual floor also depends on the conditioning of the orbit with
    // respect to v: a machine-accurate v on an ill-conditioned branch cannot
    // push |f^d(a) - a| below eps * |v| * |d x_d / d v|, so the derivative is
    // tracked alongside and widens the acceptance band where needed.
    Complex a = map.marked_critical();
    Complex t = map.v() - a;
    Complex x = 0.0;
    Complex dx = 0.0;  // d x / d v
    const double eps = std::numeric_limits<double>::epsilon();
    const double vscale = 1.0 + std::abs(a) + std::abs(t);
    for (int d = 1; d <= nmax; ++d) {
        dx = (2.0 * x * (x + 3.0 * a) + x * x) * dx + 1.0;
        x = x * x * (x + 3.0 * a) + t;
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return {PeriodStatus::None, 0};
        double dist = std::abs(x);
        double band = std::max(tol, 20.0 * eps * vscale * (1.0 + std::abs(dx)));
        if (dist < band) return {PeriodStatus::Found, d};
        if (dist < 10.0 * band) return {PeriodStatus::Ambiguous, d};
    }
    return {PeriodStatus::None, 0};
}

BottcherResult bottcher(const CubicMap& map, Complex z, double tol) {
    const double r0 = map.escape_radius();
    GreenValue g = green(map, z, tol);
    if (!g.escaped() || g.value <= std::log(r0))
        throw std::invalid_argument("bottcher: point is not in the deep escape regime");

    // phi(z) = z * prod_m (z_{m+1} / z_m^3)^{3^{-(m+1)}} with principal roots,
    // accumulated in log form.
    Complex logphi = std::log(z);
    Complex zm = z;
    double scale = 1.0 / 3.0;
    for (int m = 0; m < 64; ++m) {
        Complex znext = map.apply(zm);
        if (!std::isfinite(znext.real()) || !std::isfinite(znext.imag())) break;
        Complex ratio = znext / (zm * zm * zm);
        if (std::abs(ratio - 1.0) >= 1.0) return {Complex(0.0), true};
        Complex term = std::log(ratio);  // principal branch
        logphi += scale * term;
        if (scale * std::abs(term) <= tol) break;
        zm = znext;
        scale /= 3.0;
        if (std::abs(zm) > 1e90) break;  // remaining factors are below tol
    }
    return {std::exp(logphi), false};
}

}  // namespace atlas
