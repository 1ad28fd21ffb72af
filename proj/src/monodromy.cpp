#include "atlas/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "atlas/dynatomic.hpp"
#include "atlas/errors.hpp"
#include "atlas/resultant.hpp"
#include "atlas/roots.hpp"

namespace atlas {

namespace {

double pairwise_min_separation(const std::vector<Complex>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, std::abs(pts[i] - pts[j]));
    return pts.size() < 2 ? std::numeric_limits<double>::infinity() : best;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int d) : parent(d) {
        for (int i = 0; i < d; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

// -------------------------------------------------------------- Permutation

Permutation Permutation::identity(int d) {
    Permutation p;
    p.images.resize(d);
    for (int i = 0; i < d; ++i) p.images[i] = i;
    return p;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images[i] != i) return false;
    return true;
}

bool Permutation::is_bijective() const {
    std::vector<bool> seen(images.size(), false);
    for (int x : images) {
        if (x < 0 || x >= size() || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.images.resize(images.size());
    for (int i = 0; i < size(); ++i) p.images[images[i]] = i;
    return p;
}

Permutation Permutation::then(const Permutation& other) const {
    Permutation p;
    p.images.resize(images.size());
    for (int i = 0; i < size(); ++i) p.images[i] = other.images[images[i]];
    return p;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images.size(), false);
    for (int i = 0; i < size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int x = i;
        while (!seen[x]) {
            seen[x] = true;
            cyc.push_back(x);
            x = images[x];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<int> type;
    for (const auto& c : cycles()) type.push_back(int(c.size()));
    std::sort(type.rbegin(), type.rend());
    return type;
}

std::string Permutation::cycle_notation() const {
    std::ostringstream os;
    bool any = false;
    for (const auto& c : cycles()) {
        if (c.size() == 1) continue;
        any = true;
        os << "(";
        for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
        os << ")";
    }
    if (!any) os << "()";
    return os.str();
}

// -------------------------------------------------------------- CurveFamily

CurveFamily::CurveFamily(int n, int budget) : n_(n) {
    vcoeffs_ = build_Phin(n, budget).v_coefficients();
    coeff_bits_.reserve(vcoeffs_.size());
    for (const auto& c : vcoeffs_) {
        std::size_t bits = 0;
        for (const auto& z : c.coeffs())
            if (z != 0) bits = std::max(bits, mpz_sizeinbase(z.get_mpz_t(), 2));
        coeff_bits_.push_back(double(bits));
    }
}

const BivariatePoly& CurveFamily::phi() const { return build_Phin(n_); }

std::vector<Complex> CurveFamily::coeffs_at(Complex a) const {
    std::vector<Complex> out(vcoeffs_.size());
    for (std::size_t j = 0; j < vcoeffs_.size(); ++j) out[j] = vcoeffs_[j].evaluate(a);
    return out;
}

Complex CurveFamily::eval(Complex a, Complex v) const { return FiberEval(*this, a).eval_pair(v).first; }

Complex CurveFamily::eval_dv(Complex a, Complex v) const {
    return FiberEval(*this, a).eval_pair(v).second;
}

double CurveFamily::coeff_norm_at(Complex a) const {
    double norm = 0.0;
    for (const auto& c : vcoeffs_) norm = std::max(norm, std::abs(c.evaluate(a)));
    return std::max(norm, 1.0);
}

int CurveFamily::precision_bits_at(double abs_a) const {
    double need = 0.0;
    double la = std::log2(1.0 + abs_a);
    for (std::size_t j = 0; j < vcoeffs_.size(); ++j) {
        if (vcoeffs_[j].is_zero()) continue;
        need = std::max(need, coeff_bits_[j] + vcoeffs_[j].degree() * la);
    }
    if (need <= 10.0) return 0;
    // 160 guard bits: Newton must localize roots whose nearest neighbor is a
    // near-double cluster; attainable accuracy scales like sqrt(u), so the
    // guard has to be roomy to keep tracking resolution below ~1e-10.
    return 160 + int(std::ceil(need));
}

// ---------------------------------------------------- extended-precision path

namespace {

// Complex number over GMP floats with explicit per-value precision; gmpxx
// expression templates compute at the precision of the assignment target.
struct MPC {
    mpf_class re, im;

    explicit MPC(int bits) : re(0, bits), im(0, bits) {}
    MPC(Complex z, int bits) : re(z.real(), bits), im(z.imag(), bits) {}

    int bits() const { return int(re.get_prec()); }
    Complex to_complex() const { return {re.get_d(), im.get_d()}; }
};

MPC mpc_add(const MPC& x, const MPC& y) {
    MPC r(x.bits());
    r.re = x.re + y.re;
    r.im = x.im + y.im;
    return r;
}

MPC mpc_sub(const MPC& x, const MPC& y) {
    MPC r(x.bits());
    r.re = x.re - y.re;
    r.im = x.im - y.im;
    return r;
}

MPC mpc_mul(const MPC& x, const MPC& y) {
    MPC r(x.bits());
    r.re = x.re * y.re - x.im * y.im;
    r.im = x.re * y.im + x.im * y.re;
    return r;
}

MPC mpc_div(const MPC& x, const MPC& y) {
    MPC r(x.bits());
    mpf_class den(0, x.bits());
    den = y.re * y.re + y.im * y.im;
    r.re = (x.re * y.re + x.im * y.im) / den;
    r.im = (x.im * y.re - x.re * y.im) / den;
    return r;
}

mpf_class mpc_abs2(const MPC& x) {
    mpf_class s(0, x.bits());
    s = x.re * x.re + x.im * x.im;
    return s;
}

double mpc_abs_d(const MPC& x) { return std::sqrt(mpc_abs2(x).get_d()); }

MPC evaluate_poly_mp(const UnivariatePoly& p, const MPC& a, int bits) {
    MPC acc(bits);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        acc = mpc_mul(acc, a);
        acc.re += *it;
    }
    return acc;
}

// Aberth-Ehrlich on a monic extended-precision coefficient vector.  The
// target accuracy only has to beat double rounding on the returned roots.
std::vector<Complex> aberth_mp(const std::vector<MPC>& coeffs, int bits) {
    const int d = int(coeffs.size()) - 1;
    if (d < 1) return {};
    std::vector<MPC> deriv;
    deriv.reserve(d);
    for (int k = 1; k <= d; ++k) {
        MPC c(bits);
        c.re = coeffs[k].re * k;
        c.im = coeffs[k].im * k;
        deriv.push_back(std::move(c));
    }

    mpf_class lead2 = mpc_abs2(coeffs[d]);
    double bound = 0.0;
    for (int k = 0; k < d; ++k) {
        mpf_class q(0, bits);
        q = mpc_abs2(coeffs[k]) / lead2;
        double ratio2 = q.get_d();
        if (ratio2 > 0.0) bound = std::max(bound, std::pow(ratio2, 0.5 / double(d - k)));
    }
    double r0 = 1e-3 + 2.0 * bound;

    std::vector<MPC> z;
    z.reserve(d);
    for (int i = 0; i < d; ++i) {
        double theta = 2.0 * std::numbers::pi * i / d + 0.4;
        z.emplace_back(std::polar(r0, theta), bits);
    }

    auto horner = [&](const std::vector<MPC>& c, const MPC& x) {
        MPC acc(bits);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mpc_add(mpc_mul(acc, x), *it);
        return acc;
    };

    double best = 1e300;
    int stagnant = 0;
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            MPC pz = horner(coeffs, z[i]);
            MPC dpz = horner(deriv, z[i]);
            MPC w(bits);
            if (mpc_abs2(dpz).get_d() != 0.0 || sgn(dpz.re) != 0 || sgn(dpz.im) != 0)
                w = mpc_div(pz, dpz);
            MPC sum(bits);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                MPC diff = mpc_sub(z[i], z[j]);
                MPC one(Complex(1.0, 0.0), bits);
                sum = mpc_add(sum, mpc_div(one, diff));
            }
            MPC one(Complex(1.0, 0.0), bits);
            MPC corr = mpc_div(w, mpc_sub(one, mpc_mul(w, sum)));
            z[i] = mpc_sub(z[i], corr);
            worst = std::max(worst, mpc_abs_d(corr) / (1.0 + mpc_abs_d(z[i])));
        }
        if (worst < 1e-17) break;
        if (worst < 0.5 * best) {
            best = worst;
            stagnant = 0;
        } else {
            ++stagnant;
        }
        if (stagnant >= 50 && worst < 1e-13) break;
        if (iter == 499)
            throw NumericError("aberth_mp: no convergence for degree " + std::to_string(d));
    }

    std::vector<Complex> out;
    out.reserve(d);
    for (const auto& zi : z) out.push_back(zi.to_complex());
    return out;
}

}  // namespace

struct FiberEval::MpCoeffs {
    std::vector<MPC> coeffs;
};

FiberEval::FiberEval(const CurveFamily& fam, Complex a) : a_(a) {
    bits_ = fam.precision_bits_at(std::abs(a));
    const auto& polys = fam.v_coeff_polys();
    if (bits_ == 0) {
        dcoeffs_.resize(polys.size());
        for (std::size_t j = 0; j < polys.size(); ++j) dcoeffs_[j] = polys[j].evaluate(a);
        absc_.resize(polys.size());
        for (std::size_t j = 0; j < polys.size(); ++j) absc_[j] = std::abs(dcoeffs_[j]);
    } else {
        mp_ = std::make_unique<MpCoeffs>();
        MPC am(a, bits_);
        mp_->coeffs.reserve(polys.size());
        for (const auto& p : polys) mp_->coeffs.push_back(evaluate_poly_mp(p, am, bits_));
        absc_.resize(polys.size());
        for (std::size_t j = 0; j < polys.size(); ++j) absc_[j] = mpc_abs_d(mp_->coeffs[j]);
    }
}

double FiberEval::noise_floor(Complex v) const {
    // Magnitude sum of the Horner intermediates times the working-precision
    // roundoff: residuals below this are indistinguishable from zero.
    double av = std::abs(v);
    double s = 0.0;
    for (std::size_t j = absc_.size(); j-- > 0;) s = s * av + absc_[j];
    double u = bits_ ? std::ldexp(1.0, -bits_) : 2.220446049250313e-16;
    return 8.0 * double(absc_.size()) * u * s;
}

FiberEval::~FiberEval() = default;
FiberEval::FiberEval(FiberEval&&) noexcept = default;

std::pair<Complex, Complex> FiberEval::eval_pair(Complex v) const {
    if (bits_ == 0) {
        Complex f = 0.0, df = 0.0;
        for (std::size_t j = dcoeffs_.size(); j-- > 0;) {
            if (j >= 1) df = df * v + double(j) * dcoeffs_[j];
            f = f * v + dcoeffs_[j];
        }
        return {f, df};
    }
    MPC vm(v, bits_);
    MPC f(bits_), df(bits_);
    for (std::size_t j = mp_->coeffs.size(); j-- > 0;) {
        if (j >= 1) {
            MPC scaled(bits_);
            scaled.re = mp_->coeffs[j].re * double(j);
            scaled.im = mp_->coeffs[j].im * double(j);
            df = mpc_add(mpc_mul(df, vm), scaled);
        }
        f = mpc_add(mpc_mul(f, vm), mp_->coeffs[j]);
    }
    return {f.to_complex(), df.to_complex()};
}

std::vector<Complex> FiberEval::solve() const {
    if (bits_ == 0) return aberth_roots(dcoeffs_);
    return aberth_mp(mp_->coeffs, bits_);
}

Fiber CurveFamily::fiber_at(Complex a0, double residual_tol) const {
    FiberEval ctx(*this, a0);
    auto roots = ctx.solve();
    // Newton polish
    for (auto& v : roots) {
        for (int it = 0; it < 12; ++it) {
            auto [f, df] = ctx.eval_pair(v);
            if (std::abs(f) <= ctx.noise_floor(v)) break;
            if (std::abs(df) == 0.0) break;
            Complex dv = f / df;
            v -= dv;
            if (std::abs(dv) < 1e-15 * (1.0 + std::abs(v))) break;
        }
    }
    double norm = coeff_norm_at(a0);
    for (const auto& v : roots)
        if (std::abs(ctx.eval_pair(v).first) > residual_tol * norm)
            throw NumericError("fiber_at: residual too large at base " +
                               std::to_string(a0.real()) + "+" + std::to_string(a0.imag()) + "i");
    Fiber f{a0, std::move(roots), 0.0};
    f.min_separation = pairwise_min_separation(f.roots);
    if (f.min_separation <= 0.0)
        throw NumericError("fiber_at: coincident fiber roots (base on the branch locus?)");
    return f;
}

AccurateOrbit CurveFamily::critical_orbit_at(Complex a0, Complex v_seed, int length) const {
    if (length < 1) throw std::invalid_argument("critical_orbit_at: length must be >= 1");
    // The orbit amplifies an error in v by ~(9|a|^2)^k after k steps, so the
    // root is refined and the orbit iterated with that many guard bits on top
    // of the fiber-evaluation precision.
    double la = std::log2(2.0 + std::abs(a0));
    int bits = std::max(precision_bits_at(std::abs(a0)), 64) +
               length * int(2.0 * la + 10.0) + 64;
    MPC am(a0, bits);
    std::vector<MPC> coeffs;
    coeffs.reserve(vcoeffs_.size());
    for (const auto& p : vcoeffs_) coeffs.push_back(evaluate_poly_mp(p, am, bits));
    std::vector<MPC> deriv;
    deriv.reserve(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        MPC c(bits);
        c.re = coeffs[k].re * double(k);
        c.im = coeffs[k].im * double(k);
        deriv.push_back(std::move(c));
    }
    auto horner = [bits](const std::vector<MPC>& c, const MPC& x) {
        MPC acc(bits);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mpc_add(mpc_mul(acc, x), *it);
        return acc;
    };

    // Newton from the double seed; convergence is linear inside collapsed
    // root clusters, hence the generous iteration cap and stagnation exit.
    MPC v(v_seed, bits);
    double target = std::ldexp(1.0 + std::abs(v_seed), -std::min(bits - 16, 900));
    double best = 1e300;
    int stagnant = 0;
    for (int it = 0; it < 2000; ++it) {
        MPC f = horner(coeffs, v);
        MPC df = horner(deriv, v);
        if (sgn(df.re) == 0 && sgn(df.im) == 0) break;
        MPC dv = mpc_div(f, df);
        v = mpc_sub(v, dv);
        double rd = mpc_abs_d(dv);
        if (rd <= target) break;
        if (rd < 0.5 * best) {
            best = rd;
            stagnant = 0;
        } else if (++stagnant >= 60) {
            break;
        }
    }

    AccurateOrbit out;
    out.v = v.to_complex();
    out.points.push_back(a0);
    MPC x(Complex(0.0, 0.0), bits);
    MPC t = mpc_sub(v, am);
    MPC threea(bits);
    threea.re = 3.0 * am.re;
    threea.im = 3.0 * am.im;
    for (int k = 1; k <= length; ++k) {
        x = mpc_add(mpc_mul(mpc_mul(x, x), mpc_add(x, threea)), t);
        out.points.push_back(mpc_add(x, am).to_complex());
        // Threshold tied to the working precision: true near-returns of
        // period-n orbits decay polynomially in |a| and must not be mistaken
        // for exact returns, while the orbit itself is good to ~2^-112.
        if (out.period == 0 && mpc_abs_d(x) < std::ldexp(1.0 + std::abs(a0), -56))
            out.period = k;
    }
    return out;
}

// ----------------------------------------------------------------- tracking

TrackResult track_fiber(const CurveFamily& fam, const std::vector<Complex>& path,
                        const Fiber& start, const TrackOptions& opts) {
    if (path.size() < 2) return {start, 0};
    Fiber cur = start;
    std::size_t steps = 0;
    const std::size_t d = cur.roots.size();
    // Distance to the nearest root outside the own sub-floor cluster.  Roots
    // closer than loose_floor are cluster mates whose labels may scramble, so
    // the movement limit only has to keep each root away from the others.
    const double floor_gap = opts.loose_floor;
    std::vector<double> gap(d);
    auto refresh_gaps = [&] {
        for (std::size_t i = 0; i < d; ++i) {
            double g = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                double dist = std::abs(cur.roots[i] - cur.roots[j]);
                if (dist >= floor_gap) g = std::min(g, dist);
            }
            gap[i] = g;
        }
    };
    double h = opts.initial_step;
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        Complex from = path[seg], to = path[seg + 1];
        if (std::abs(to - from) == 0.0) continue;
        double t = 0.0;
        h = std::min(std::max(h, opts.min_step * 4.0), 0.25);
        // Steps without a secant prediction (segment start, after rejections)
        // are capped by the movement limit at limit / |dv/da|; with collapsed
        // clusters that is far below min_step, so the bootstrap gets extra
        // halving headroom.  4e-15 keeps the a increment representable.
        const double hmin = std::max(opts.min_step * 1e-4, 4.0e-15);
        // Secant predictor state: positions one accepted step back within this
        // segment, and the parameter distance covered by that step.
        std::vector<Complex> prev;
        double hprev = 0.0;
        refresh_gaps();
        while (t < 1.0) {
            double hstep = std::min(h, 1.0 - t);
            Complex anew = from + (t + hstep) * (to - from);
            FiberEval ctx(fam, anew);
            // The corrector must stay within a third of each root's own gap of
            // the predicted position, so the Newton target is the analytic
            // continuation (or a cluster mate) and never a distinct neighbor.
            std::vector<Complex> corrected(d);
            bool ok = true;
            for (std::size_t i = 0; i < d; ++i) {
                Complex vpred = cur.roots[i];
                if (hprev > 0.0) vpred += (cur.roots[i] - prev[i]) * (hstep / hprev);
                double limit = std::max(gap[i], floor_gap) / 3.0;
                Complex v = vpred;
                bool converged = false;
                for (int it = 0; it < opts.newton_iters; ++it) {
                    auto [f, df] = ctx.eval_pair(v);
                    if (std::abs(f) <= ctx.noise_floor(v)) {
                        converged = true;
                        break;
                    }
                    if (std::abs(df) == 0.0) break;
                    Complex dv = f / df;
                    v -= dv;
                    if (std::abs(v - vpred) > limit) break;  // left the safe disc, shrink
                    if (std::abs(dv) < 1e-13 * (1.0 + std::abs(v)) ||
                        std::abs(dv) < 1e-2 * floor_gap) {
                        converged = true;
                        break;
                    }
                }
                if (!converged || std::abs(v - vpred) > limit) {
                    ok = false;
                    break;
                }
                corrected[i] = v;
            }
            bool collided = false;
            double newsep = 0.0;
            if (ok) {
                // A fast drop in separation usually just means the step was too
                // long; retry shorter and only report a collision at stall.
                newsep = pairwise_min_separation(corrected);
                if (newsep < cur.min_separation / 3.0 && newsep >= floor_gap) {
                    ok = false;
                    collided = true;
                }
            }
            if (ok) {
                prev = std::move(cur.roots);
                hprev = hstep;
                cur.base = anew;
                cur.roots = std::move(corrected);
                cur.min_separation = newsep;
                refresh_gaps();
                t += hstep;
                ++steps;
                h = std::min(h * 1.4, 0.25);
            } else {
                h /= 2.0;
                hprev = 0.0;  // secant slope is stale after a rejection
                if (h < hmin) {
                    std::string at = std::to_string(anew.real()) + "+" +
                                     std::to_string(anew.imag()) + "i";
                    if (collided)
                        throw NumericError(
                            "CollisionError: fiber roots collided near a = " + at +
                            " (path too close to a branch point)");
                    throw NumericError("TrackingStall: step underflow near a = " + at);
                }
            }
        }
    }
    // Residual sanity at the end of the path.
    double norm = fam.coeff_norm_at(cur.base);
    FiberEval endctx(fam, cur.base);
    for (const auto& v : cur.roots)
        if (std::abs(endctx.eval_pair(v).first) > opts.residual_tol * norm)
            throw NumericError("track_fiber: residual too large at end of path");
    return {cur, steps};
}

std::vector<Fiber> continue_to_radii(const CurveFamily& fam, const Fiber& start,
                                     const std::vector<double>& radii,
                                     const TrackOptions& opts) {
    if (std::abs(start.base.imag()) != 0.0 || start.base.real() <= 0.0)
        throw std::invalid_argument("continue_to_radii: start base must be real positive");
    double rmax = start.base.real();
    for (double r : radii) {
        if (r <= rmax)
            throw std::invalid_argument("continue_to_radii: radii must increase outward");
        rmax = r;
    }
    const int bits = std::max(fam.precision_bits_at(rmax) + 64, 192);
    const std::size_t d = start.roots.size();
    const auto& polys = fam.v_coeff_polys();

    auto scale = [bits](const MPC& x, double t) {
        MPC r(bits);
        r.re = x.re * t;
        r.im = x.im * t;
        return r;
    };
    // Distinct escape regions separate like 0.04/r^3 along a real ray while
    // same-word conjugate pairs fall off at least like r^-3.5 (then
    // exponentially), so this floor keeps every word-distinct pair strict and
    // lets collapsing pairs cluster; calibrated on the n <= 4 fibers.
    auto cluster_floor = [](double r) { return 3e-3 * std::pow(r, -3.5); };

    std::vector<MPC> pos;
    pos.reserve(d);
    for (const auto& v : start.roots) pos.emplace_back(v, bits);
    std::vector<MPC> hist1, hist2;
    int histn = 0;
    double a0 = start.base.real(), a1 = 0.0, a2 = 0.0;

    std::vector<double> gap(d);
    auto refresh_gaps = [&](double floor_gap) {
        for (std::size_t i = 0; i < d; ++i) {
            double g = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                double dist = mpc_abs_d(mpc_sub(pos[i], pos[j]));
                if (dist >= floor_gap) g = std::min(g, dist);
            }
            gap[i] = g;
        }
    };

    std::vector<Fiber> out;
    out.reserve(radii.size());
    double h = opts.initial_step;
    for (double rk : radii) {
        const double L = rk - a0;
        const double hmin = std::max(opts.min_step * 1e-4, 4.0e-15);
        h = std::min(std::max(h, opts.min_step * 4.0), 0.25);
        while (a0 < rk) {
            double anew = std::min(a0 + h * L, rk);
            const double floor_gap = cluster_floor(anew);
            refresh_gaps(floor_gap);

            MPC am(Complex(anew, 0.0), bits);
            std::vector<MPC> coeffs;
            coeffs.reserve(polys.size());
            for (const auto& p : polys) coeffs.push_back(evaluate_poly_mp(p, am, bits));
            std::vector<MPC> deriv;
            deriv.reserve(coeffs.size() - 1);
            for (std::size_t k = 1; k < coeffs.size(); ++k) deriv.push_back(scale(coeffs[k], double(k)));
            auto horner = [bits](const std::vector<MPC>& c, const MPC& x) {
                MPC acc(bits);
                for (auto it = c.rbegin(); it != c.rend(); ++it)
                    acc = mpc_add(mpc_mul(acc, x), *it);
                return acc;
            };

            std::vector<MPC> corrected;
            corrected.reserve(d);
            bool ok = true;
            const double d0 = anew - a0;
            for (std::size_t i = 0; i < d; ++i) {
                // Quadratic extrapolation through the last accepted positions
                // cancels the 1/a drift the whole cluster shares.
                MPC vpred = pos[i];
                if (histn >= 1) {
                    MPC s1 = scale(mpc_sub(pos[i], hist1[i]), 1.0 / (a0 - a1));
                    vpred = mpc_add(vpred, scale(s1, d0));
                    if (histn >= 2) {
                        MPC t = scale(mpc_sub(hist1[i], hist2[i]), 1.0 / (a1 - a2));
                        MPC s2 = scale(mpc_sub(s1, t), 1.0 / (a0 - a2));
                        vpred = mpc_add(vpred, scale(s2, d0 * (d0 + (a0 - a1))));
                    }
                }
                const double limit = std::max(gap[i], floor_gap) / 3.0;
                MPC v = vpred;
                bool converged = false;
                for (int it = 0; it < opts.newton_iters; ++it) {
                    MPC f = horner(coeffs, v);
                    MPC df = horner(deriv, v);
                    if (sgn(df.re) == 0 && sgn(df.im) == 0) break;
                    MPC dv = mpc_div(f, df);
                    v = mpc_sub(v, dv);
                    if (mpc_abs_d(mpc_sub(v, vpred)) > limit) break;
                    double rd = mpc_abs_d(dv);
                    if (rd <= 1e-2 * floor_gap ||
                        rd <= std::ldexp(1.0 + mpc_abs_d(v), -100)) {
                        converged = true;
                        break;
                    }
                }
                if (!converged || mpc_abs_d(mpc_sub(v, vpred)) > limit) {
                    ok = false;
                    break;
                }
                corrected.push_back(std::move(v));
            }
            if (ok) {
                hist2 = std::move(hist1);
                a2 = a1;
                hist1 = std::move(pos);
                a1 = a0;
                pos = std::move(corrected);
                a0 = anew;
                histn = std::min(histn + 1, 2);
                h = std::min(h * 1.4, 0.25);
            } else {
                // History stays valid across rejections; only the step shrinks.
                h /= 2.0;
                if (h < hmin)
                    throw NumericError("TrackingStall: step underflow near a = " +
                                       std::to_string(anew));
            }
        }
        Fiber f;
        f.base = Complex(rk, 0.0);
        f.roots.reserve(d);
        for (const auto& p : pos) f.roots.push_back(p.to_complex());
        f.min_separation = pairwise_min_separation(f.roots);
        out.push_back(std::move(f));
    }
    return out;
}

Permutation match_to_fiber(const Fiber& reference, const std::vector<Complex>& points) {
    if (points.size() != reference.roots.size())
        throw std::invalid_argument("match_to_fiber: size mismatch");
    Permutation perm;
    perm.images.resize(points.size(), -1);
    double limit = reference.min_separation / 3.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        int best = -1;
        double bestd = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < reference.roots.size(); ++j) {
            double d = std::abs(points[i] - reference.roots[j]);
            if (d < bestd) {
                bestd = d;
                best = int(j);
            }
        }
        if (bestd > limit)
            throw NumericError("match_to_fiber: nearest root beyond the safety margin");
        perm.images[i] = best;
    }
    if (!perm.is_bijective()) throw NumericError("match_to_fiber: matching is not a bijection");
    return perm;
}

// ------------------------------------------------------------ branch points

BranchPointSet branch_points(const CurveFamily& fam, double merge_tol) {
    BranchPointSet out;
    if (fam.degree() < 2) {
        out.discriminant = UnivariatePoly::constant(1);
        return out;  // linear in v: no collisions possible
    }
    const BivariatePoly& phi = fam.phi();
    out.discriminant = resultant_v(phi, phi.derivative_v()).primitive_part();
    if (out.discriminant.is_zero())
        throw InternalError("branch_points: discriminant vanishes identically");
    if (out.discriminant.degree() == 0) return out;

    auto roots = roots_of(out.discriminant);
    std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    // Greedy cluster merge at the tolerance.
    std::vector<Complex> merged;
    std::vector<int> counts;
    for (const auto& r : roots) {
        bool joined = false;
        for (std::size_t k = 0; k < merged.size(); ++k) {
            if (std::abs(r - merged[k]) < merge_tol) {
                merged[k] = (merged[k] * double(counts[k]) + r) / double(counts[k] + 1);
                ++counts[k];
                joined = true;
                break;
            }
        }
        if (!joined) {
            merged.push_back(r);
            counts.push_back(1);
        }
    }

    // Residuals on the power-of-two-scaled double image of the discriminant.
    std::vector<double> dc(out.discriminant.degree() + 1);
    {
        long emax = -1000000000L;
        for (const auto& c : out.discriminant.coeffs()) {
            if (c == 0) continue;
            long e;
            mpz_get_d_2exp(&e, c.get_mpz_t());
            emax = std::max(emax, e);
        }
        long shift = emax - 500;
        for (std::size_t k = 0; k < dc.size(); ++k) {
            const mpz_class& c = out.discriminant.coeffs()[k];
            if (c == 0) continue;
            long e;
            double mant = mpz_get_d_2exp(&e, c.get_mpz_t());
            dc[k] = std::ldexp(mant, int(e - shift));
        }
    }
    double norm = 0.0;
    for (double c : dc) norm = std::max(norm, std::abs(c));
    for (const auto& b : merged) {
        Complex acc = 0.0;
        for (std::size_t k = dc.size(); k-- > 0;) acc = acc * b + dc[k];
        out.residuals.push_back(std::abs(acc) / norm);
    }
    out.points = std::move(merged);
    return out;
}

// ---------------------------------------------------------------- monodromy

namespace {

std::vector<Complex> loop_waypoints(Complex base, Complex beta, double radius, int segments) {
    std::vector<Complex> path;
    Complex dir = (base - beta) / std::abs(base - beta);
    Complex approach = beta + radius * dir;
    path.push_back(base);
    path.push_back(approach);
    double phi0 = std::arg(dir);
    for (int k = 1; k <= segments; ++k) {
        double phi = phi0 + 2.0 * std::numbers::pi * k / segments;
        path.push_back(beta + radius * std::polar(1.0, phi));
    }
    path.push_back(approach);
    path.push_back(base);
    return path;
}

Permutation infinity_once(const CurveFamily& fam, double R, const TrackOptions& opts) {
    Fiber start = fam.fiber_at(Complex(R, 0.0));
    std::vector<Complex> path;
    const int m = 64;
    for (int k = 0; k <= m; ++k)
        path.push_back(std::polar(R, 2.0 * std::numbers::pi * k / m));
    auto res = track_fiber(fam, path, start, opts);
    return match_to_fiber(start, res.end.roots);
}

}  // namespace

MonodromyResult connected_components(const CurveFamily& fam, const MonodromyOptions& opts) {
    BranchPointSet bps = branch_points(fam);
    const int d = fam.degree();

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);

    std::string last_error;
    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
        double maxmod = 0.0;
        for (const auto& b : bps.points) maxmod = std::max(maxmod, std::abs(b));
        double radius = std::max(2.0, 2.0 * maxmod);
        double angle = uni(rng);
        Complex base = std::polar(radius, angle);

        try {
            Fiber start = fam.fiber_at(base);

            // Loop order: branch points sorted by argument as seen from base.
            std::vector<int> order(bps.points.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                double ax = std::arg(bps.points[x] - base);
                double ay = std::arg(bps.points[y] - base);
                if (ax != ay) return ax < ay;
                return std::abs(bps.points[x] - base) < std::abs(bps.points[y] - base);
            });

            std::vector<Permutation> gens(order.size());
            std::vector<std::exception_ptr> errs(order.size());
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(order.size()); ++k) {
                try {
                    const Complex beta = bps.points[order[k]];
                    double nearest = std::numeric_limits<double>::infinity();
                    for (std::size_t j = 0; j < bps.points.size(); ++j)
                        if (int(j) != order[k])
                            nearest = std::min(nearest, std::abs(bps.points[j] - beta));
                    double rloop = std::min({nearest / 3.0, std::abs(base - beta) / 4.0});
                    rloop = std::max(rloop, 1e-6);
                    auto path = loop_waypoints(base, beta, rloop, opts.circle_segments);
                    auto res = track_fiber(fam, path, start, opts.track);
                    gens[k] = match_to_fiber(start, res.end.roots);
                } catch (...) {
                    errs[k] = std::current_exception();
                }
            }
            for (auto& e : errs)
                if (e) std::rethrow_exception(e);

            UnionFind uf(d);
            for (const auto& g : gens)
                for (int i = 0; i < d; ++i) uf.unite(i, g.images[i]);
            std::vector<int> count(d, 0);
            for (int i = 0; i < d; ++i) ++count[uf.find(i)];
            std::vector<int> sizes;
            for (int i = 0; i < d; ++i)
                if (count[i] > 0) sizes.push_back(count[i]);
            std::sort(sizes.rbegin(), sizes.rend());

            MonodromyResult out;
            out.n = fam.n();
            out.degree = d;
            out.base = base;
            for (int idx : order) {
                out.branch_points.push_back(bps.points[idx]);
                out.branch_residuals.push_back(bps.residuals[idx]);
            }
            out.generators = std::move(gens);
            out.orbit_count = int(sizes.size());
            out.orbit_sizes = std::move(sizes);
            out.seed = opts.seed;
            out.infinity = monodromy_at_infinity(fam, 2.0 * radius, opts.track);
            return out;
        } catch (const NumericError& e) {
            last_error = e.what();
        }
    }
    throw NumericError("connected_components: all retries failed; last error: " + last_error);
}

Permutation monodromy_at_infinity(const CurveFamily& fam, double R, const TrackOptions& opts) {
    if (fam.degree() == 1) return Permutation::identity(1);
    Permutation p1 = infinity_once(fam, R, opts);
    Permutation p2 = infinity_once(fam, 2.0 * R, opts);
    if (p1.cycle_type() != p2.cycle_type())
        throw NumericError("UnstableAtInfinity: cycle type changed under radius doubling");
    return p1;
}

Permutation involution_on_fiber(const CurveFamily& fam, const Fiber& fiber,
                                const TrackOptions& opts) {
    std::vector<Complex> path;
    const int m = 32;
    for (int k = 0; k <= m; ++k)
        path.push_back(fiber.base * std::polar(1.0, std::numbers::pi * k / m));
    auto res = track_fiber(fam, path, fiber, opts);

    Fiber mirrored;
    mirrored.base = -fiber.base;
    mirrored.roots.reserve(fiber.roots.size());
    for (const auto& v : fiber.roots) mirrored.roots.push_back(-v);
    mirrored.min_separation = fiber.min_separation;
    return match_to_fiber(mirrored, res.end.roots);
}

}  // namespace atlas
