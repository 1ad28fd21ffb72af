#ifndef ATLAS_CUBIC_MAP_HPP
#define ATLAS_CUBIC_MAP_HPP

#include <complex>
#include <optional>
#include <vector>

namespace atlas {

using Complex = std::complex<double>;

inline constexpr int kDefaultIterBudget = 10000;
inline constexpr double kDefaultTol = 1e-12;

// One parameter point of the critically marked cubic family
//   z |-> z^3 - 3a^2 z + 2a^3 + v
// with marked periodic critical point +a and free critical point -a.
class CubicMap {
public:
    CubicMap(Complex a, Complex v) : a_(a), v_(v) {}

    Complex a() const { return a_; }
    Complex v() const { return v_; }

    Complex apply(Complex z) const {
        return z * z * z - 3.0 * a_ * a_ * z + 2.0 * a_ * a_ * a_ + v_;
    }
    Complex derivative(Complex z) const { return 3.0 * (z * z - a_ * a_); }

    Complex marked_critical() const { return a_; }
    Complex free_critical() const { return -a_; }
    // Non-critical preimage of the corresponding critical value.
    Complex cocritical_of_marked() const { return -2.0 * a_; }
    Complex cocritical_of_free() const { return 2.0 * a_; }

    // Once |z| >= escape_radius(), |f(z)| >= |z|^3 / 2, so
    // |log|f(z)| - 3 log|z|| <= log 2 and the Green tail bound applies.
    double escape_radius() const;

private:
    Complex a_, v_;
};

enum class EscapeClass { EscapeLocus, Bounded, Undetermined };

// Logarithmic escape rate with a forward error estimate ("modulo floating
// point": bounds are not interval-rigorous).
struct GreenValue {
    double value = 0.0;
    double error_bound = 0.0;
    int iterations_used = 0;
    EscapeClass status = EscapeClass::Bounded;
    // Bounded results within a finite budget can never exclude slow escape.
    bool undetermined_possible = false;

    bool escaped() const { return status == EscapeClass::EscapeLocus; }
};

// [z, f(z), ..., f^k(z)].  Throws NumericError on overflow to floating infinity.
std::vector<Complex> orbit(const CubicMap& map, Complex z, int k);

GreenValue green(const CubicMap& map, Complex z, double tol = kDefaultTol,
                 int budget = kDefaultIterBudget);

// Classification of the parameter by the fate of the free critical point -a.
EscapeClass classify_escape(const CubicMap& map, double tol = kDefaultTol,
                            int budget = kDefaultIterBudget);

enum class PeriodStatus { Found, None, Ambiguous };

struct PeriodResult {
    PeriodStatus status = PeriodStatus::None;
    int period = 0;  // valid when status == Found
};

// Smallest n <= nmax with |f^n(a) - a| < tol while |f^d(a) - a| >= 10 tol for
// d < n.  A distance falling between the two bands yields Ambiguous.
PeriodResult exact_period(const CubicMap& map, int nmax, double tol = kDefaultTol);

struct BottcherResult {
    Complex phi;
    bool branch_error = false;  // a factor left the principal sector
};

// Boettcher coordinate near infinity, phi(z)/z -> 1, via the telescoping
// product of 3^m-th roots.  Requires green(map, z).value > log(escape_radius).
BottcherResult bottcher(const CubicMap& map, Complex z, double tol = kDefaultTol);

}  // namespace atlas

#endif
