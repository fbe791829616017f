#ifndef GFW_EXACTNUM_PRIME_FIELD_HPP
#define GFW_EXACTNUM_PRIME_FIELD_HPP

#include <cstdint>
#include <string>

#include "gfw/error.hpp"
#include "gfw/exactnum/integer.hpp"

namespace gfw {

/// The prime field F_p, p < 2^62. Elements are plain residues in [0, p);
/// the field object carries the modulus and does the arithmetic.
class PrimeField {
  public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (std::uint64_t{1} << 62) || !is_prime(p))
            throw DomainError("F_p needs a prime modulus below 2^62, got " + std::to_string(p));
    }

    std::uint64_t characteristic() const noexcept { return p_; }

    value_type zero() const noexcept { return 0; }
    value_type one() const noexcept { return 1; }
    bool is_zero(value_type a) const noexcept { return a == 0; }
    bool is_one(value_type a) const noexcept { return a == 1; }

    value_type add(value_type a, value_type b) const noexcept {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const noexcept {
        return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % p_);
    }
    value_type pow(value_type a, std::uint64_t e) const noexcept {
        value_type r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    value_type inv(value_type a) const {
        if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
        return pow(a, p_ - 2);
    }
    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

    value_type from_int(long long v) const noexcept {
        long long m = v % static_cast<long long>(p_);
        return static_cast<value_type>(m < 0 ? m + static_cast<long long>(p_) : m);
    }
    value_type from_integer(const Integer& v) const {
        Integer r = v % Integer(static_cast<unsigned long>(p_));
        if (r < 0) r += static_cast<unsigned long>(p_);
        return r.get_ui();
    }
    value_type from_rational(const Rational& q) const {
        return div(from_integer(q.get_num()), from_integer(q.get_den()));
    }

    /// Euler's criterion; zero counts as a square.
    bool is_square(value_type a) const noexcept {
        if (a == 0 || p_ == 2) return true;
        return pow(a, (p_ - 1) / 2) == 1;
    }

    std::string to_string(value_type a) const { return std::to_string(a); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

  private:
    std::uint64_t p_;
};

/// A single element of F_p together with its modulus.
class Fp {
  public:
    Fp(const PrimeField& field, long long v) : field_(field), v_(field.from_int(v)) {}
    Fp(std::uint64_t p, long long v) : Fp(PrimeField(p), v) {}

    std::uint64_t residue() const noexcept { return v_; }
    std::uint64_t modulus() const noexcept { return field_.characteristic(); }
    const PrimeField& field() const noexcept { return field_; }

    friend Fp operator+(const Fp& a, const Fp& b) { return {same(a, b), a.field_.add(a.v_, b.v_), raw{}}; }
    friend Fp operator-(const Fp& a, const Fp& b) { return {same(a, b), a.field_.sub(a.v_, b.v_), raw{}}; }
    friend Fp operator*(const Fp& a, const Fp& b) { return {same(a, b), a.field_.mul(a.v_, b.v_), raw{}}; }
    friend Fp operator/(const Fp& a, const Fp& b) { return {same(a, b), a.field_.div(a.v_, b.v_), raw{}}; }
    Fp operator-() const { return {field_, field_.neg(v_), raw{}}; }
    Fp inverse() const { return {field_, field_.inv(v_), raw{}}; }
    friend bool operator==(const Fp& a, const Fp& b) noexcept {
        return a.field_ == b.field_ && a.v_ == b.v_;
    }

  private:
    struct raw {};
    static const PrimeField& same(const Fp& a, const Fp& b) {
        if (!(a.field_ == b.field_)) throw DomainError("mixing elements of different prime fields");
        return a.field_;
    }
    Fp(const PrimeField& f, std::uint64_t v, raw) : field_(f), v_(v) {}
    PrimeField field_;
    std::uint64_t v_;
};

}  // namespace gfw

#endif
