#include "atlas/bivariate_poly.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "atlas/errors.hpp"

namespace atlas {

// ---------------------------------------------------------------- univariate

UnivariatePoly::UnivariatePoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

UnivariatePoly UnivariatePoly::constant(const mpz_class& c) {
    if (c == 0) return {};
    return UnivariatePoly({c});
}

void UnivariatePoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& UnivariatePoly::coeff(int k) const {
    static const mpz_class kZero = 0;
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[k];
}

const mpz_class& UnivariatePoly::leading() const {
    if (coeffs_.empty()) throw InternalError("leading() of zero polynomial");
    return coeffs_.back();
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
    std::vector<mpz_class> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(int(k)) + o.coeff(int(k));
    return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const {
    std::vector<mpz_class> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(int(k)) - o.coeff(int(k));
    return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator-() const {
    std::vector<mpz_class> out(coeffs_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = -coeffs_[k];
    return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpz_class> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::exact_div(const UnivariatePoly& d) const {
    if (d.is_zero()) throw InternalError("exact_div by zero polynomial");
    if (is_zero()) return {};
    if (degree() < d.degree()) throw InternalError("exact_div: degree mismatch");
    std::vector<mpz_class> rem = coeffs_;
    std::vector<mpz_class> quo(degree() - d.degree() + 1);
    for (int k = degree() - d.degree(); k >= 0; --k) {
        mpz_class& top = rem[k + d.degree()];
        if (top == 0) continue;
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), d.leading().get_mpz_t());
        if (r != 0) throw InternalError("exact_div: nonexact leading division");
        quo[k] = q;
        for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= q * d.coeffs_[j];
    }
    for (const auto& c : rem)
        if (c != 0) throw InternalError("exact_div: nonzero remainder");
    return UnivariatePoly(std::move(quo));
}

UnivariatePoly UnivariatePoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<mpz_class> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * int(k);
    return UnivariatePoly(std::move(out));
}

mpz_class UnivariatePoly::content() const {
    mpz_class g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

UnivariatePoly UnivariatePoly::primitive_part() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (leading() < 0) g = -g;
    std::vector<mpz_class> out(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = coeffs_[k] / g;
    return UnivariatePoly(std::move(out));
}

Complex UnivariatePoly::evaluate(Complex a) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * a + it->get_d();
    return acc;
}

mpz_class UnivariatePoly::evaluate_int(const mpz_class& a) const {
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + *it;
    return acc;
}

std::uint64_t UnivariatePoly::evaluate_mod(std::uint64_t a, std::uint64_t p) const {
    using u128 = unsigned __int128;
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        std::uint64_t c = mpz_fdiv_ui(it->get_mpz_t(), p);
        acc = std::uint64_t((u128(acc) * a + c) % p);
    }
    return acc;
}

double UnivariatePoly::max_coeff_magnitude() const {
    double m = 0.0;
    for (const auto& c : coeffs_) {
        double x = std::abs(c.get_d());
        if (!std::isfinite(x)) return DBL_MAX;
        m = std::max(m, x);
    }
    return m;
}

// ---------------------------------------------------------------- bivariate

BivariatePoly BivariatePoly::constant(const mpz_class& c) {
    BivariatePoly p;
    p.add_term(0, 0, c);
    return p;
}

BivariatePoly BivariatePoly::var_a() { return monomial(1, 0, 1); }
BivariatePoly BivariatePoly::var_v() { return monomial(0, 1, 1); }

BivariatePoly BivariatePoly::monomial(int deg_a, int deg_v, const mpz_class& c) {
    BivariatePoly p;
    p.add_term(deg_a, deg_v, c);
    return p;
}

int BivariatePoly::degree_a() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg_a);
    return d;
}

int BivariatePoly::degree_v() const {
    if (terms_.empty()) return -1;
    // Monomial ordering is (deg_a, deg_v); scan for the max v-degree.
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg_v);
    return d;
}

int BivariatePoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg_a + m.deg_v);
    return d;
}

mpz_class BivariatePoly::coeff(int deg_a, int deg_v) const {
    auto it = terms_.find({deg_a, deg_v});
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void BivariatePoly::add_term(int deg_a, int deg_v, const mpz_class& c) {
    if (c == 0) return;
    Monomial m{deg_a, deg_v};
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
    BivariatePoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m.deg_a, m.deg_v, c);
    return out;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
    BivariatePoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m.deg_a, m.deg_v, -c);
    return out;
}

BivariatePoly BivariatePoly::operator-() const {
    BivariatePoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

BivariatePoly BivariatePoly::scaled(const mpz_class& c) const {
    BivariatePoly out;
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

BivariatePoly BivariatePoly::multiply_serial(const BivariatePoly& p, const BivariatePoly& q) {
    BivariatePoly out;
    for (const auto& [mp, cp] : p.terms_)
        for (const auto& [mq, cq] : q.terms_)
            out.add_term(mp.deg_a + mq.deg_a, mp.deg_v + mq.deg_v, cp * cq);
    return out;
}

BivariatePoly BivariatePoly::multiply_omp(const BivariatePoly& p, const BivariatePoly& q) {
#ifndef _OPENMP
    return multiply_serial(p, q);
#else
    if (p.terms_.size() < 64 || q.terms_.size() < 64) return multiply_serial(p, q);
    std::vector<const std::pair<const Monomial, mpz_class>*> pterms;
    pterms.reserve(p.terms_.size());
    for (const auto& t : p.terms_) pterms.push_back(&t);

    int nthreads = omp_get_max_threads();
    std::vector<BivariatePoly> partial(nthreads);
#pragma omp parallel
    {
        BivariatePoly& local = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(pterms.size()); ++i) {
            const auto& [mp, cp] = *pterms[i];
            for (const auto& [mq, cq] : q.terms_)
                local.add_term(mp.deg_a + mq.deg_a, mp.deg_v + mq.deg_v, cp * cq);
        }
    }
    BivariatePoly out;
    for (auto& part : partial)
        for (const auto& [m, c] : part.terms_) out.add_term(m.deg_a, m.deg_v, c);
    return out;
#endif
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
    return multiply_omp(*this, o);
}

Complex BivariatePoly::evaluate(Complex a, Complex v) const {
    if (terms_.empty()) return 0.0;
    auto cols = v_coefficients();
    Complex acc = 0.0;
    for (auto it = cols.rbegin(); it != cols.rend(); ++it) acc = acc * v + it->evaluate(a);
    return acc;
}

BivariatePoly BivariatePoly::derivative_a() const {
    BivariatePoly out;
    for (const auto& [m, c] : terms_)
        if (m.deg_a > 0) out.terms_.emplace(Monomial{m.deg_a - 1, m.deg_v}, c * m.deg_a);
    return out;
}

BivariatePoly BivariatePoly::derivative_v() const {
    BivariatePoly out;
    for (const auto& [m, c] : terms_)
        if (m.deg_v > 0) out.terms_.emplace(Monomial{m.deg_a, m.deg_v - 1}, c * m.deg_v);
    return out;
}

std::optional<int> BivariatePoly::involution_symmetry_sign() const {
    if (terms_.empty()) return std::nullopt;
    // p(-a,-v) flips the sign of odd-total-degree terms; p is an eigenvector
    // of the involution iff all terms have the same total-degree parity.
    int parity = (terms_.begin()->first.deg_a + terms_.begin()->first.deg_v) & 1;
    for (const auto& [m, c] : terms_)
        if (((m.deg_a + m.deg_v) & 1) != parity) return std::nullopt;
    return parity == 0 ? +1 : -1;
}

UnivariatePoly BivariatePoly::coeff_of_v(int j) const {
    std::vector<mpz_class> cs;
    for (const auto& [m, c] : terms_) {
        if (m.deg_v != j) continue;
        if (int(cs.size()) <= m.deg_a) cs.resize(m.deg_a + 1);
        cs[m.deg_a] = c;
    }
    return UnivariatePoly(std::move(cs));
}

std::vector<UnivariatePoly> BivariatePoly::v_coefficients() const {
    int dv = degree_v();
    std::vector<std::vector<mpz_class>> cs(dv + 1);
    for (const auto& [m, c] : terms_) {
        auto& col = cs[m.deg_v];
        if (int(col.size()) <= m.deg_a) col.resize(m.deg_a + 1);
        col[m.deg_a] = c;
    }
    std::vector<UnivariatePoly> out;
    out.reserve(dv + 1);
    for (auto& col : cs) out.emplace_back(std::move(col));
    return out;
}

std::pair<BivariatePoly, BivariatePoly> BivariatePoly::divide_v(const BivariatePoly& divisor) const {
    int dd = divisor.degree_v();
    if (dd < 0) throw InternalError("divide_v by zero polynomial");
    UnivariatePoly lead = divisor.coeff_of_v(dd);
    if (lead.degree() != 0 || lead.coeff(0) != 1)
        throw InternalError("divide_v requires a divisor monic in v");

    BivariatePoly rem = *this;
    BivariatePoly quo;
    int dn = rem.degree_v();
    while (dn >= dd) {
        UnivariatePoly top = rem.coeff_of_v(dn);
        if (!top.is_zero()) {
            BivariatePoly qterm;
            for (int k = 0; k <= top.degree(); ++k)
                qterm.add_term(k, dn - dd, top.coeff(k));
            quo = quo + qterm;
            rem = rem - qterm * divisor;
        }
        --dn;
        // degree_v(rem) may have dropped further when top was zero
        dn = std::min(dn, rem.degree_v());
    }
    return {quo, rem};
}

std::ostream& operator<<(std::ostream& os, const BivariatePoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        mpz_class ac = abs(c);
        bool havevar = m.deg_a > 0 || m.deg_v > 0;
        if (ac != 1 || !havevar) os << ac.get_str();
        if (m.deg_a > 0) { os << "a"; if (m.deg_a > 1) os << "^" << m.deg_a; }
        if (m.deg_v > 0) { os << "v"; if (m.deg_v > 1) os << "^" << m.deg_v; }
    }
    return os;
}

}  // namespace atlas
