#ifndef GFW_EXACTNUM_SYMBOLIC_HPP
#define GFW_EXACTNUM_SYMBOLIC_HPP

#include <map>
#include <optional>
#include <string>

#include "gfw/exactnum/cert_real.hpp"
#include "gfw/exactnum/integer.hpp"

namespace gfw {

/// Exact real number c + sum_p c_p log(p), p prime, rational c and c_p.
/// Used for archimedean divisor coefficients so that quantities such as
/// e^{2 log 2} = 4 stay exact.
class LogLinear {
  public:
    LogLinear() = default;
    LogLinear(const Rational& c) : constant_(c) {}  // NOLINT(implicit)

    /// log(q) for q > 0, expanded over the primes of q.
    static LogLinear log_of(const Rational& q);

    const Rational& constant_part() const noexcept { return constant_; }
    const std::map<Integer, Rational>& log_terms() const noexcept { return logs_; }
    bool is_zero() const { return constant_ == 0 && logs_.empty(); }
    bool is_rational() const { return logs_.empty(); }

    LogLinear operator-() const;
    friend LogLinear operator+(const LogLinear& a, const LogLinear& b);
    friend LogLinear operator-(const LogLinear& a, const LogLinear& b) { return a + (-b); }
    friend LogLinear operator*(const Rational& s, const LogLinear& a);
    LogLinear& operator+=(const LogLinear& o) { return *this = *this + o; }
    friend bool operator==(const LogLinear& a, const LogLinear& b) {
        return a.constant_ == b.constant_ && a.logs_ == b.logs_;
    }

    CertReal evaluate(int prec = kDefaultPrecision) const;

    /// Literal form accepted by the divisor grammar: "3/2", "2log(2)",
    /// "(1/2-log(3))".
    std::string to_string() const;

  private:
    void add_log(const Integer& p, const Rational& c);
    Rational constant_ = 0;
    std::map<Integer, Rational> logs_;
};

/// Exact positive real e^a * prod_p p^{c_p} * pi^k with rational a, c_p, k.
/// Products, quotients and rational powers stay exact; equality with 1 is
/// decidable whenever k = 0 (Lindemann-Weierstrass handles a != 0).
class ExpMonomial {
  public:
    ExpMonomial() = default;

    static ExpMonomial from_rational(const Rational& q);  // q > 0
    static ExpMonomial exp_of(const LogLinear& x);
    static ExpMonomial pi_power(const Rational& k);

    const Rational& e_exponent() const noexcept { return e_exp_; }
    const Rational& pi_exponent() const noexcept { return pi_exp_; }
    const std::map<Integer, Rational>& prime_exponents() const noexcept { return primes_; }

    bool is_one() const { return e_exp_ == 0 && pi_exp_ == 0 && primes_.empty(); }
    bool is_algebraic() const { return e_exp_ == 0 && pi_exp_ == 0; }
    /// Value as a rational number when it is one.
    std::optional<Rational> as_rational() const;
    /// log of this value as a LogLinear (only without a pi part).
    std::optional<LogLinear> log() const;

    friend ExpMonomial operator*(const ExpMonomial& a, const ExpMonomial& b);
    friend ExpMonomial operator/(const ExpMonomial& a, const ExpMonomial& b);
    ExpMonomial inverse() const;
    ExpMonomial pow(const Rational& r) const;
    ExpMonomial sqrt() const { return pow(Rational(1, 2)); }
    friend bool operator==(const ExpMonomial& a, const ExpMonomial& b) {
        return a.e_exp_ == b.e_exp_ && a.pi_exp_ == b.pi_exp_ && a.primes_ == b.primes_;
    }

    CertReal evaluate(int prec = kDefaultPrecision) const;
    std::string to_string() const;

  private:
    void add_prime(const Integer& p, const Rational& c);
    Rational e_exp_ = 0, pi_exp_ = 0;
    std::map<Integer, Rational> primes_;
};

/// Three-way comparison of positive exact reals. Exact when the quotient
/// is algebraic; otherwise interval evaluation with the precision doubled
/// up to max_prec. Equal is only ever returned when proven.
Ordering compare(const ExpMonomial& a, const ExpMonomial& b, int prec = kDefaultPrecision,
                 int max_prec = 8 * kDefaultPrecision);

}  // namespace gfw

#endif
