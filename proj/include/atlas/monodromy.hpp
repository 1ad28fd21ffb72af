#ifndef ATLAS_MONODROMY_HPP
#define ATLAS_MONODROMY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "atlas/bivariate_poly.hpp"

namespace atlas {

// Bijection of {0..d-1}; images[i] is where label i is sent.
struct Permutation {
    std::vector<int> images;

    static Permutation identity(int d);
    int size() const { return int(images.size()); }
    bool is_identity() const;
    bool is_bijective() const;
    Permutation inverse() const;
    // Composition "first this, then other".
    Permutation then(const Permutation& other) const;
    std::vector<std::vector<int>> cycles() const;
    // Sorted cycle lengths, descending.
    std::vector<int> cycle_type() const;
    std::string cycle_notation() const;
    bool operator==(const Permutation&) const = default;
};

// Fiber of the projection (a, v) -> a over the base point.
struct Fiber {
    Complex base;
    std::vector<Complex> roots;
    double min_separation = 0.0;
};

// Marked critical orbit computed at curve working precision; see
// CurveFamily::critical_orbit_at.
struct AccurateOrbit {
    Complex v;                    // fiber root refined from the seed
    std::vector<Complex> points;  // z_0 .. z_length, rounded to double
    int period = 0;               // smallest k with z_k = z_0, 0 if none found
};

// Precomputed evaluation data for Phi_n, shared read-only by all trackers.
class CurveFamily {
public:
    explicit CurveFamily(int n, int budget = 8);

    int n() const { return n_; }
    int degree() const { return int(vcoeffs_.size()) - 1; }
    const BivariatePoly& phi() const;
    const std::vector<UnivariatePoly>& v_coeff_polys() const { return vcoeffs_; }

    // Coefficients of v |-> Phi_n(a, v), low to high.
    std::vector<Complex> coeffs_at(Complex a) const;
    Complex eval(Complex a, Complex v) const;
    Complex eval_dv(Complex a, Complex v) const;
    // Max |coefficient| of the fiber polynomial at a; residual normalizer.
    double coeff_norm_at(Complex a) const;

    // Working-precision bits needed to evaluate the fiber polynomial near its
    // roots at |a|: 0 when plain doubles suffice.  The monic fiber polynomial
    // cancels through coefficient-norm-sized intermediates near the root
    // clusters, so doubles become useless once that norm passes ~2^30.
    int precision_bits_at(double abs_a) const;

    // Solve Phi_n(a0, .) = 0, polish with Newton and check residuals and
    // pairwise separation.
    Fiber fiber_at(Complex a0, double residual_tol = 1e-8) const;

    // Refine v_seed to the nearest fiber root and iterate the marked critical
    // orbit with enough guard bits that the returned points (and the exact
    // period certificate) are double-accurate; in doubles the orbit's
    // condition number ~(9|a|^2)^k destroys the late points at large |a|.
    AccurateOrbit critical_orbit_at(Complex a0, Complex v_seed, int length) const;

private:
    int n_;
    std::vector<UnivariatePoly> vcoeffs_;
    std::vector<double> coeff_bits_;  // bit length of the largest coefficient, per v-degree
};

// One-a evaluation context: the v-coefficients are evaluated once (in doubles
// or in GMP floats, as precision_bits_at demands) and reused across Newton
// iterations at that a.
class FiberEval {
public:
    FiberEval(const CurveFamily& fam, Complex a);
    ~FiberEval();
    FiberEval(FiberEval&&) noexcept;
    FiberEval(const FiberEval&) = delete;
    FiberEval& operator=(const FiberEval&) = delete;

    Complex base() const { return a_; }
    int precision_bits() const { return bits_; }  // 0: double path
    // (Phi_n(a, v), dPhi_n/dv(a, v)); intermediates at working precision,
    // results rounded to double.
    std::pair<Complex, Complex> eval_pair(Complex v) const;
    // Attainable |Phi_n| accuracy near v; Newton residuals below this are
    // converged for the working precision.
    double noise_floor(Complex v) const;
    // All fiber roots, Aberth at working precision, rounded to double.
    std::vector<Complex> solve() const;

private:
    struct MpCoeffs;
    Complex a_;
    int bits_ = 0;
    std::vector<Complex> dcoeffs_;
    std::vector<double> absc_;
    std::unique_ptr<MpCoeffs> mp_;
};

struct TrackOptions {
    double initial_step = 0.05;    // relative to segment length
    double min_step = 1e-12;       // relative; 1e-4 of this: TrackingStall
                                   // (headroom for unpredicted bootstrap steps)
    int newton_iters = 8;
    double residual_tol = 1e-8;
    // Absolute cluster tolerance.  Zero keeps strict per-label tracking.
    // Positive values treat roots closer than loose_floor as one cluster
    // whose internal labels may scramble; used for rays toward large |a|,
    // where conjugate branches collapse far below double resolution while
    // distinct regions stay >~ 1/|a| apart.
    double loose_floor = 0.0;
};

struct TrackResult {
    Fiber end;                 // roots in start-label order
    std::size_t steps = 0;
};

// Continue all fiber roots along the polyline of a-values.  Throws
// NumericError (TrackingStall / CollisionError) on failure.
TrackResult track_fiber(const CurveFamily& fam, const std::vector<Complex>& path,
                        const Fiber& start, const TrackOptions& opts = {});

// Continue a fiber outward along the positive real axis through the given
// increasing radii, holding root positions at working precision so branch
// identity survives separations far below double resolution; roots closer
// than a family-calibrated cluster floor may scramble among themselves.
// Returns one fiber per radius, rounded to double.
std::vector<Fiber> continue_to_radii(const CurveFamily& fam, const Fiber& start,
                                     const std::vector<double>& radii,
                                     const TrackOptions& opts = {});

// Nearest-neighbor matching of points against the reference fiber, with the
// min_separation/3 safety margin; throws NumericError when ambiguous.
Permutation match_to_fiber(const Fiber& reference, const std::vector<Complex>& points);

struct BranchPointSet {
    std::vector<Complex> points;       // deduplicated, sorted
    std::vector<double> residuals;     // |disc| at each point, scaled
    UnivariatePoly discriminant;       // Res_v(Phi_n, dPhi_n/dv), primitive part
};

// Roots in a of Res_v(Phi_n, d/dv Phi_n), merged at the given tolerance.
BranchPointSet branch_points(const CurveFamily& fam, double merge_tol = 1e-8);

struct MonodromyOptions {
    std::uint64_t seed = 1;
    int circle_segments = 24;
    int max_retries = 3;
    TrackOptions track;
};

struct MonodromyResult {
    int n = 0;
    int degree = 0;
    Complex base;
    std::vector<Complex> branch_points;
    std::vector<double> branch_residuals;
    std::vector<Permutation> generators;    // one per branch point, loop order
    Permutation infinity;                   // once around a large circle
    int orbit_count = 0;                    // orbits of the finite generators
    std::vector<int> orbit_sizes;
    std::uint64_t seed = 0;
};

// Monodromy generators of the projection around every finite branch point,
// plus the permutation at infinity; orbit count of the generated group.
MonodromyResult connected_components(const CurveFamily& fam, const MonodromyOptions& opts = {});

// Permutation from tracking once counterclockwise around |a| = R starting at
// a = R.  Verifies that the cycle type is stable under doubling R.
Permutation monodromy_at_infinity(const CurveFamily& fam, double R,
                                  const TrackOptions& opts = {});

// Deck pairing of the double cover: track a0 -> -a0 along the upper half
// circle and match against the negated fiber.
Permutation involution_on_fiber(const CurveFamily& fam, const Fiber& fiber,
                                const TrackOptions& opts = {});

}  // namespace atlas

#endif
