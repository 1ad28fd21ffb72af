#ifndef ATLAS_BIVARIATE_POLY_HPP
#define ATLAS_BIVARIATE_POLY_HPP

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace atlas {

using Complex = std::complex<double>;

// Exponent pair: degree in a, degree in v.
struct Monomial {
    int deg_a = 0;
    int deg_v = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Dense polynomial in a with arbitrary-precision integer coefficients.
class UnivariatePoly {
public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<mpz_class> coeffs);
    static UnivariatePoly constant(const mpz_class& c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const mpz_class& coeff(int k) const;
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& leading() const;

    UnivariatePoly operator+(const UnivariatePoly& o) const;
    UnivariatePoly operator-(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const UnivariatePoly& o) const;
    UnivariatePoly operator-() const;
    bool operator==(const UnivariatePoly& o) const { return coeffs_ == o.coeffs_; }

    // Exact quotient; throws InternalError if the division leaves a remainder.
    UnivariatePoly exact_div(const UnivariatePoly& d) const;

    UnivariatePoly derivative() const;
    mpz_class content() const;
    // Divide out the content and make the leading coefficient positive.
    UnivariatePoly primitive_part() const;

    Complex evaluate(Complex a) const;
    mpz_class evaluate_int(const mpz_class& a) const;
    std::uint64_t evaluate_mod(std::uint64_t a, std::uint64_t p) const;

    // Largest |coefficient| as a double (clamped to DBL_MAX on overflow).
    double max_coeff_magnitude() const;

private:
    void trim();
    std::vector<mpz_class> coeffs_;  // coeffs_[k] multiplies a^k
};

// Sparse bivariate polynomial over Z in the variables (a, v).
// Invariant: no zero coefficients are stored; all arithmetic is exact.
class BivariatePoly {
public:
    using TermMap = std::map<Monomial, mpz_class>;

    BivariatePoly() = default;
    static BivariatePoly zero() { return {}; }
    static BivariatePoly constant(const mpz_class& c);
    static BivariatePoly var_a();
    static BivariatePoly var_v();
    static BivariatePoly monomial(int deg_a, int deg_v, const mpz_class& c);

    bool is_zero() const { return terms_.empty(); }
    int degree_a() const;
    int degree_v() const;
    int total_degree() const;
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    mpz_class coeff(int deg_a, int deg_v) const;

    BivariatePoly operator+(const BivariatePoly& o) const;
    BivariatePoly operator-(const BivariatePoly& o) const;
    BivariatePoly operator*(const BivariatePoly& o) const;
    BivariatePoly operator-() const;
    BivariatePoly scaled(const mpz_class& c) const;
    bool operator==(const BivariatePoly& o) const { return terms_ == o.terms_; }

    void add_term(int deg_a, int deg_v, const mpz_class& c);

    // Horner in v, inner Horner in a.  Plain double arithmetic; round-off is
    // not tracked here (callers that need bounds scale by coefficient size).
    Complex evaluate(Complex a, Complex v) const;

    BivariatePoly derivative_a() const;
    BivariatePoly derivative_v() const;

    // p(-a,-v) compared against p: +1, -1, or nullopt when neither sign works.
    std::optional<int> involution_symmetry_sign() const;

    // Coefficient of v^j as a polynomial in a.
    UnivariatePoly coeff_of_v(int j) const;
    // All v-coefficients, index j = 0..degree_v().
    std::vector<UnivariatePoly> v_coefficients() const;

    // Division by a divisor monic in v.  Returns (quotient, remainder) with
    // deg_v(remainder) < deg_v(divisor); exact over Z because of monicity.
    std::pair<BivariatePoly, BivariatePoly> divide_v(const BivariatePoly& divisor) const;

    // Serial reference product, kept alongside the OpenMP kernel.
    static BivariatePoly multiply_serial(const BivariatePoly& p, const BivariatePoly& q);
    static BivariatePoly multiply_omp(const BivariatePoly& p, const BivariatePoly& q);

private:
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const BivariatePoly& p);

}  // namespace atlas

#endif
