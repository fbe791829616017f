#ifndef GFW_EXACTNUM_CERT_REAL_HPP
#define GFW_EXACTNUM_CERT_REAL_HPP

#include <mpfr.h>

#include <string>

#include "gfw/exactnum/integer.hpp"

namespace gfw {

inline constexpr int kDefaultPrecision = 128;

/// Owning wrapper around mpfr_t.
class Mpfr {
  public:
    explicit Mpfr(mpfr_prec_t prec = kDefaultPrecision) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Mpfr(const Mpfr& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;

  private:
    mpfr_t v_;
};

enum class Ordering { Less, Equal, Greater, Indeterminate };

/// Certified real: a closed interval [lower, upper] guaranteed to contain
/// the exact value. Every operation rounds outward, so enclosures are
/// preserved. The midpoint/radius view is derived on demand.
class CertReal {
  public:
    explicit CertReal(int prec = kDefaultPrecision);

    static CertReal from_integer(const Integer& v, int prec = kDefaultPrecision);
    static CertReal from_rational(const Rational& v, int prec = kDefaultPrecision);
    static CertReal from_double(double v, int prec = kDefaultPrecision);
    /// [lo, hi]; throws if lo > hi.
    static CertReal from_bounds(const Mpfr& lo, const Mpfr& hi);
    static CertReal from_bounds(const Rational& lo, const Rational& hi, int prec = kDefaultPrecision);
    /// mid +- rad.
    static CertReal ball(const Mpfr& mid, const Mpfr& rad);
    static CertReal pi(int prec = kDefaultPrecision);
    static CertReal euler_e(int prec = kDefaultPrecision);

    int precision() const noexcept { return prec_; }
    const Mpfr& lower() const noexcept { return lo_; }
    const Mpfr& upper() const noexcept { return hi_; }
    /// Midpoint rounded to nearest.
    Mpfr midpoint() const;
    /// Radius rounded up, so [mid - rad, mid + rad] still encloses.
    Mpfr radius() const;
    double mid_double() const { return midpoint().to_double(); }
    double rad_double() const;

    bool is_exact() const;
    bool contains(const Rational& q) const;
    bool contains(const CertReal& inner) const;
    bool overlaps(const CertReal& o) const;
    bool contains_zero() const;
    bool is_positive() const;  // lower > 0
    bool is_negative() const;  // upper < 0

    CertReal with_precision(int prec) const;

    CertReal operator-() const;
    friend CertReal operator+(const CertReal& a, const CertReal& b);
    friend CertReal operator-(const CertReal& a, const CertReal& b);
    friend CertReal operator*(const CertReal& a, const CertReal& b);
    /// Throws DomainError if b contains zero.
    friend CertReal operator/(const CertReal& a, const CertReal& b);
    CertReal& operator+=(const CertReal& o) { return *this = *this + o; }
    CertReal& operator-=(const CertReal& o) { return *this = *this - o; }
    CertReal& operator*=(const CertReal& o) { return *this = *this * o; }
    CertReal& operator/=(const CertReal& o) { return *this = *this / o; }

    friend CertReal abs(const CertReal& a);
    friend CertReal sqr(const CertReal& a);
    /// Throws DomainError for enclosures reaching below zero.
    friend CertReal sqrt(const CertReal& a);
    friend CertReal exp(const CertReal& a);
    /// Throws DomainError unless the enclosure is strictly positive.
    friend CertReal log(const CertReal& a);
    friend CertReal pow(const CertReal& a, long n);
    /// a^r for a strictly positive enclosure.
    friend CertReal pow(const CertReal& a, const Rational& r);
    friend CertReal hull(const CertReal& a, const CertReal& b);

    /// Less/Greater only for disjoint enclosures, Equal only for identical
    /// point enclosures, otherwise Indeterminate.
    friend Ordering cmp(const CertReal& a, const CertReal& b);

    std::string to_string(int digits = 20) const;

  private:
    CertReal(Mpfr lo, Mpfr hi, int prec);
    Mpfr lo_, hi_;
    int prec_;
};

CertReal abs(const CertReal& a);
CertReal sqr(const CertReal& a);
CertReal sqrt(const CertReal& a);
CertReal exp(const CertReal& a);
CertReal log(const CertReal& a);
CertReal pow(const CertReal& a, long n);
CertReal pow(const CertReal& a, const Rational& r);
CertReal hull(const CertReal& a, const CertReal& b);
Ordering cmp(const CertReal& a, const CertReal& b);

/// Rectangular complex enclosure.
struct CertComplex {
    CertReal re, im;

    static CertComplex from_real(CertReal r) {
        CertReal z(r.precision());
        return {std::move(r), std::move(z)};
    }
    CertComplex conj() const { return {re, -im}; }
    CertReal abs2() const { return sqr(re) + sqr(im); }
    CertReal abs() const { return sqrt(abs2()); }

    friend CertComplex operator+(const CertComplex& a, const CertComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CertComplex operator-(const CertComplex& a, const CertComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend CertComplex operator*(const CertComplex& a, const CertComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CertComplex operator/(const CertComplex& a, const CertComplex& b) {
        CertReal d = b.abs2();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend CertComplex operator*(const CertComplex& a, const CertReal& s) { return {a.re * s, a.im * s}; }
};

}  // namespace gfw

#endif
