#include "gfw/exactnum/cert_real.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "gfw/error.hpp"

namespace gfw {

std::string Mpfr::to_string(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

CertReal::CertReal(int prec) : lo_(prec), hi_(prec), prec_(prec) {}

CertReal::CertReal(Mpfr lo, Mpfr hi, int prec) : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {}

CertReal CertReal::from_integer(const Integer& v, int prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_set_z(lo.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.get(), v.get_mpz_t(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal CertReal::from_rational(const Rational& v, int prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_set_q(lo.get(), v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), v.get_mpq_t(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal CertReal::from_double(double v, int prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_set_d(lo.get(), v, MPFR_RNDD);
    mpfr_set_d(hi.get(), v, MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal CertReal::from_bounds(const Mpfr& lo_in, const Mpfr& hi_in) {
    if (mpfr_cmp(lo_in.get(), hi_in.get()) > 0) throw DomainError("CertReal: lower bound exceeds upper bound");
    int prec = static_cast<int>(std::max(lo_in.precision(), hi_in.precision()));
    Mpfr lo(prec), hi(prec);
    mpfr_set(lo.get(), lo_in.get(), MPFR_RNDD);
    mpfr_set(hi.get(), hi_in.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal CertReal::from_bounds(const Rational& lo, const Rational& hi, int prec) {
    if (lo > hi) throw DomainError("CertReal: lower bound exceeds upper bound");
    return hull(from_rational(lo, prec), from_rational(hi, prec));
}

CertReal CertReal::ball(const Mpfr& mid, const Mpfr& rad) {
    int prec = static_cast<int>(mid.precision());
    Mpfr lo(prec), hi(prec);
    mpfr_sub(lo.get(), mid.get(), rad.get(), MPFR_RNDD);
    mpfr_add(hi.get(), mid.get(), rad.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal CertReal::pi(int prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal CertReal::euler_e(int prec) { return exp(from_integer(1, prec)); }

Mpfr CertReal::midpoint() const {
    Mpfr m(prec_ + 2);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

Mpfr CertReal::radius() const {
    Mpfr m = midpoint();
    Mpfr a(prec_), b(prec_);
    mpfr_sub(a.get(), hi_.get(), m.get(), MPFR_RNDU);
    mpfr_sub(b.get(), m.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_cmp(a.get(), b.get()) < 0) return b;
    return a;
}

double CertReal::rad_double() const { return mpfr_get_d(radius().get(), MPFR_RNDU); }

bool CertReal::is_exact() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

bool CertReal::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool CertReal::contains(const CertReal& inner) const {
    return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), inner.hi_.get()) >= 0;
}

bool CertReal::overlaps(const CertReal& o) const {
    return mpfr_cmp(lo_.get(), o.hi_.get()) <= 0 && mpfr_cmp(o.lo_.get(), hi_.get()) <= 0;
}

bool CertReal::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
bool CertReal::is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool CertReal::is_negative() const { return mpfr_sgn(hi_.get()) < 0; }

CertReal CertReal::with_precision(int prec) const {
    Mpfr lo(prec), hi(prec);
    mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
    mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal CertReal::operator-() const {
    Mpfr lo(prec_), hi(prec_);
    mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec_};
}

CertReal operator+(const CertReal& a, const CertReal& b) {
    int prec = std::max(a.prec_, b.prec_);
    Mpfr lo(prec), hi(prec);
    mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal operator-(const CertReal& a, const CertReal& b) {
    int prec = std::max(a.prec_, b.prec_);
    Mpfr lo(prec), hi(prec);
    mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

CertReal operator*(const CertReal& a, const CertReal& b) {
    int prec = std::max(a.prec_, b.prec_);
    Mpfr lo(prec), hi(prec), t(prec);
    const Mpfr* xs[2] = {&a.lo_, &a.hi_};
    const Mpfr* ys[2] = {&b.lo_, &b.hi_};
    bool first = true;
    for (const Mpfr* x : xs)
        for (const Mpfr* y : ys) {
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return {std::move(lo), std::move(hi), prec};
}

CertReal operator/(const CertReal& a, const CertReal& b) {
    if (b.contains_zero()) throw DomainError("CertReal: division by an enclosure containing zero");
    int prec = std::max(a.prec_, b.prec_);
    Mpfr lo(prec), hi(prec);
    mpfr_ui_div(lo.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(hi.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * CertReal(std::move(lo), std::move(hi), prec);
}

CertReal abs(const CertReal& a) {
    if (mpfr_sgn(a.lo_.get()) >= 0) return a;
    if (mpfr_sgn(a.hi_.get()) <= 0) return -a;
    Mpfr lo(a.prec_), hi(a.prec_);
    mpfr_neg(hi.get(), a.lo_.get(), MPFR_RNDU);
    if (mpfr_cmp(hi.get(), a.hi_.get()) < 0) mpfr_set(hi.get(), a.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), a.prec_};
}

CertReal sqr(const CertReal& a) {
    CertReal m = abs(a);
    Mpfr lo(a.prec_), hi(a.prec_);
    mpfr_sqr(lo.get(), m.lo_.get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), m.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), a.prec_};
}

CertReal sqrt(const CertReal& a) {
    if (mpfr_sgn(a.lo_.get()) < 0) throw DomainError("CertReal: sqrt of an enclosure reaching below zero");
    Mpfr lo(a.prec_), hi(a.prec_);
    mpfr_sqrt(lo.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), a.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), a.prec_};
}

CertReal exp(const CertReal& a) {
    Mpfr lo(a.prec_), hi(a.prec_);
    mpfr_exp(lo.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), a.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), a.prec_};
}

CertReal log(const CertReal& a) {
    if (!a.is_positive()) throw DomainError("CertReal: log of an enclosure touching zero");
    Mpfr lo(a.prec_), hi(a.prec_);
    mpfr_log(lo.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_log(hi.get(), a.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), a.prec_};
}

CertReal pow(const CertReal& a, long n) {
    if (n < 0) return CertReal::from_integer(1, a.prec_) / pow(a, -n);
    CertReal base = (n % 2 == 0) ? abs(a) : a;
    // Odd powers are monotone and even powers are monotone on |a|, so
    // evaluating at the endpoints gives the tight enclosure.
    Mpfr lo(a.prec_), hi(a.prec_);
    mpfr_pow_si(lo.get(), base.lo_.get(), n, MPFR_RNDD);
    mpfr_pow_si(hi.get(), base.hi_.get(), n, MPFR_RNDU);
    return {std::move(lo), std::move(hi), a.prec_};
}

CertReal pow(const CertReal& a, const Rational& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return pow(a, r.get_num().get_si());
    return exp(CertReal::from_rational(r, a.prec_) * log(a));
}

CertReal hull(const CertReal& a, const CertReal& b) {
    int prec = std::max(a.prec_, b.prec_);
    Mpfr lo(prec), hi(prec);
    mpfr_min(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi), prec};
}

Ordering cmp(const CertReal& a, const CertReal& b) {
    if (mpfr_cmp(a.hi_.get(), b.lo_.get()) < 0) return Ordering::Less;
    if (mpfr_cmp(a.lo_.get(), b.hi_.get()) > 0) return Ordering::Greater;
    if (a.is_exact() && b.is_exact() && mpfr_equal_p(a.lo_.get(), b.lo_.get())) return Ordering::Equal;
    return Ordering::Indeterminate;
}

std::string CertReal::to_string(int digits) const {
    return midpoint().to_string(digits) + " +/- " + radius().to_string(3);
}

}  // namespace gfw
