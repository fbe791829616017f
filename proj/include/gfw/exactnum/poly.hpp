#ifndef GFW_EXACTNUM_POLY_HPP
#define GFW_EXACTNUM_POLY_HPP

#include <algorithm>
#include <compare>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "gfw/error.hpp"
#include "gfw/exactnum/integer.hpp"
#include "gfw/exactnum/prime_field.hpp"

namespace gfw {

/// The field Q, in the same shape as PrimeField so that Poly can be
/// instantiated over either.
struct RationalField {
    using value_type = Rational;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool is_one(const value_type& a) const { return a == 1; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw DomainError("inverse of zero in Q");
        return 1 / a;
    }
    value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
    value_type from_int(long long v) const { return Rational(static_cast<long>(v)); }
    std::string to_string(const value_type& a) const { return gfw::to_string(a); }
    friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

/// Dense univariate polynomial over a field. Coefficients are stored from
/// the constant term up and the leading coefficient is never zero.
template <class F>
class Poly {
  public:
    using field_type = F;
    using value_type = typename F::value_type;

    explicit Poly(F field) : field_(std::move(field)) {}
    Poly(F field, std::vector<value_type> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        trim();
    }
    Poly()
        requires std::is_default_constructible_v<F>
    = default;

    static Poly constant(F field, value_type c) { return Poly(field, {std::move(c)}); }
    static Poly monomial(F field, value_type c, int deg) {
        std::vector<value_type> v(deg + 1, field.zero());
        v[deg] = std::move(c);
        return Poly(std::move(field), std::move(v));
    }
    static Poly x(F field) { return monomial(field, field.one(), 1); }

    const F& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && field_.is_one(c_[0]); }
    const std::vector<value_type>& coeffs() const noexcept { return c_; }
    value_type coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : field_.zero();
    }
    const value_type& lead() const {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && field_.is_one(c_.back()); }

    Poly monic() const {
        if (is_zero()) return *this;
        value_type li = field_.inv(lead());
        return scaled(li);
    }
    Poly scaled(const value_type& s) const {
        std::vector<value_type> v(c_.size(), field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.mul(c_[i], s);
        return Poly(field_, std::move(v));
    }
    Poly shifted(int k) const {  // multiply by x^k
        if (is_zero()) return *this;
        std::vector<value_type> v(k, field_.zero());
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(field_, std::move(v));
    }

    value_type eval(const value_type& x) const {
        value_type r = field_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_.add(field_.mul(r, x), *it);
        return r;
    }

    Poly derivative() const {
        std::vector<value_type> v;
        for (std::size_t i = 1; i < c_.size(); ++i)
            v.push_back(field_.mul(c_[i], field_.from_int(static_cast<long long>(i))));
        return Poly(field_, std::move(v));
    }

    /// Coefficient reversal x^n p(1/x) with n = max(n_in, degree).
    Poly reversed(int n) const {
        std::vector<value_type> v(n + 1, field_.zero());
        for (int i = 0; i <= degree(); ++i) v[n - i] = c_[i];
        return Poly(field_, std::move(v));
    }

    Poly operator-() const {
        std::vector<value_type> v(c_.size(), field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.neg(c_[i]);
        return Poly(field_, std::move(v));
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<value_type> v(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.add(a.coeff(i), b.coeff(i));
        return Poly(a.field_, std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<value_type> v(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.sub(a.coeff(i), b.coeff(i));
        return Poly(a.field_, std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<value_type> v(a.c_.size() + b.c_.size() - 1, a.field_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.field_.is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] = a.field_.add(v[i + j], a.field_.mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.field_, std::move(v));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Euclidean division; throws on a zero divisor.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        const F& k = a.field_;
        if (a.degree() < b.degree()) return {Poly(k), a};
        std::vector<value_type> r = a.c_;
        std::vector<value_type> q(a.degree() - b.degree() + 1, k.zero());
        value_type li = k.inv(b.lead());
        for (int i = a.degree(); i >= b.degree(); --i) {
            if (k.is_zero(r[i])) continue;
            value_type c = k.mul(r[i], li);
            q[i - b.degree()] = c;
            for (int j = 0; j <= b.degree(); ++j)
                r[i - b.degree() + j] = k.sub(r[i - b.degree() + j], k.mul(c, b.c_[j]));
        }
        r.resize(b.degree());
        return {Poly(k, std::move(q)), Poly(k, std::move(r))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Total order used for canonical output: degree first, then
    /// coefficients from the top down.
    friend bool canonical_less(const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (field_.is_zero(c_[i])) continue;
            std::string cs = field_.to_string(c_[i]);
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            if (!out.empty()) out += neg ? "-" : "+";
            else if (neg) out += "-";
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            if (i == 0) out += cs;
            else if (cs == "1") out += mono;
            else out += cs + "*" + mono;
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
    }

    F field_{};
    std::vector<value_type> c_;
};

using PolyQ = Poly<RationalField>;
using PolyFp = Poly<PrimeField>;

/// Monic gcd (zero if both inputs are zero).
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> ext_gcd(const Poly<F>& a, const Poly<F>& b) {
    const F& k = a.field();
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = Poly<F>::constant(k, k.one()), s1(k);
    Poly<F> t0(k), t1 = Poly<F>::constant(k, k.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<F> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<F> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto li = k.inv(r0.lead());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

/// Inverse of a modulo m; throws when they are not coprime.
template <class F>
Poly<F> inv_mod(const Poly<F>& a, const Poly<F>& m) {
    auto [g, s, t] = ext_gcd(a % m, m);
    if (g.degree() != 0) throw DomainError("polynomial not invertible modulo " + m.to_string());
    return s % m;
}

template <class F>
Poly<F> mul_mod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
    return (a * b) % m;
}

template <class F>
Poly<F> pow_mod(Poly<F> base, Integer e, const Poly<F>& m) {
    Poly<F> r = Poly<F>::constant(base.field(), base.field().one()) % m;
    base = base % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul_mod(r, base, m);
        e >>= 1;
        if (e > 0) base = mul_mod(base, base, m);
    }
    return r;
}

/// Exponent of the irreducible pi in a (a != 0).
template <class F>
int poly_valuation(Poly<F> a, const Poly<F>& pi) {
    if (a.is_zero()) throw DomainError("valuation of the zero polynomial");
    int v = 0;
    for (;;) {
        auto [q, r] = divmod(a, pi);
        if (!r.is_zero()) return v;
        a = std::move(q);
        ++v;
    }
}

template <class F>
Poly<F> poly_pow(const Poly<F>& a, unsigned e) {
    Poly<F> r = Poly<F>::constant(a.field(), a.field().one());
    for (unsigned i = 0; i < e; ++i) r *= a;
    return r;
}

bool has_integer_coeffs(const PolyQ& f);
/// Least common multiple of the coefficient denominators.
Integer common_denominator(const PolyQ& f);
/// Reduce an integral polynomial modulo p.
PolyFp reduce_mod(const PolyQ& f, const PrimeField& k);
/// Lift F_p coefficients to integers in [0, p).
PolyQ lift(const PolyFp& f);
/// Discriminant of f via the Sylvester resultant with f'.
Rational discriminant(const PolyQ& f);
Rational resultant(const PolyQ& f, const PolyQ& g);
/// Number of distinct real roots by a Sturm sequence.
int sturm_real_root_count(const PolyQ& f);

}  // namespace gfw

#endif
