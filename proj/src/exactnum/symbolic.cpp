#include "gfw/exactnum/symbolic.hpp"

#include <sstream>

#include "gfw/error.hpp"

namespace gfw {

namespace {

std::string coeff_times(const Rational& c, const std::string& atom, bool first) {
    std::string out;
    if (c < 0)
        out = "-";
    else if (!first)
        out = "+";
    Rational a = abs(c);
    if (a != 1) out += to_string(a);
    return out + atom;
}

}  // namespace

void LogLinear::add_log(const Integer& p, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = logs_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) logs_.erase(it);
    }
}

LogLinear LogLinear::log_of(const Rational& q) {
    if (q <= 0) throw DomainError("log of a non-positive rational");
    LogLinear out;
    if (q.get_num() != 1)
        for (auto& [p, e] : factor_integer(q.get_num())) out.add_log(p, e);
    if (q.get_den() != 1)
        for (auto& [p, e] : factor_integer(q.get_den())) out.add_log(p, -e);
    return out;
}

LogLinear LogLinear::operator-() const { return Rational(-1) * *this; }

LogLinear operator+(const LogLinear& a, const LogLinear& b) {
    LogLinear out = a;
    out.constant_ += b.constant_;
    for (auto& [p, c] : b.logs_) out.add_log(p, c);
    return out;
}

LogLinear operator*(const Rational& s, const LogLinear& a) {
    LogLinear out;
    if (s == 0) return out;
    out.constant_ = s * a.constant_;
    for (auto& [p, c] : a.logs_) out.logs_.emplace(p, s * c);
    return out;
}

CertReal LogLinear::evaluate(int prec) const {
    CertReal acc = CertReal::from_rational(constant_, prec);
    for (auto& [p, c] : logs_)
        acc += CertReal::from_rational(c, prec) * log(CertReal::from_integer(p, prec));
    return acc;
}

std::string LogLinear::to_string() const {
    if (logs_.empty()) return gfw::to_string(constant_);
    std::string body;
    bool first = true;
    if (constant_ != 0) {
        body = gfw::to_string(constant_);
        first = false;
    }
    for (auto& [p, c] : logs_) {
        body += coeff_times(c, "log(" + gfw::to_string(p) + ")", first);
        first = false;
    }
    std::size_t terms = logs_.size() + (constant_ != 0 ? 1 : 0);
    return terms == 1 ? body : "(" + body + ")";
}

void ExpMonomial::add_prime(const Integer& p, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = primes_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) primes_.erase(it);
    }
}

ExpMonomial ExpMonomial::from_rational(const Rational& q) {
    if (q <= 0) throw DomainError("ExpMonomial needs a positive value");
    return exp_of(LogLinear::log_of(q));
}

ExpMonomial ExpMonomial::exp_of(const LogLinear& x) {
    ExpMonomial out;
    out.e_exp_ = x.constant_part();
    for (auto& [p, c] : x.log_terms()) out.add_prime(p, c);
    return out;
}

ExpMonomial ExpMonomial::pi_power(const Rational& k) {
    ExpMonomial out;
    out.pi_exp_ = k;
    return out;
}

std::optional<Rational> ExpMonomial::as_rational() const {
    if (!is_algebraic()) return std::nullopt;
    Rational v = 1;
    for (auto& [p, c] : primes_) {
        if (c.get_den() != 1) return std::nullopt;
        v *= gfw::pow(Rational(p), c.get_num().get_si());
    }
    return v;
}

std::optional<LogLinear> ExpMonomial::log() const {
    if (pi_exp_ != 0) return std::nullopt;
    LogLinear out(e_exp_);
    for (auto& [p, c] : primes_) out += c * LogLinear::log_of(Rational(p));
    return out;
}

ExpMonomial operator*(const ExpMonomial& a, const ExpMonomial& b) {
    ExpMonomial out = a;
    out.e_exp_ += b.e_exp_;
    out.pi_exp_ += b.pi_exp_;
    for (auto& [p, c] : b.primes_) out.add_prime(p, c);
    return out;
}

ExpMonomial operator/(const ExpMonomial& a, const ExpMonomial& b) { return a * b.inverse(); }

ExpMonomial ExpMonomial::inverse() const { return pow(-1); }

ExpMonomial ExpMonomial::pow(const Rational& r) const {
    ExpMonomial out;
    if (r == 0) return out;
    out.e_exp_ = e_exp_ * r;
    out.pi_exp_ = pi_exp_ * r;
    for (auto& [p, c] : primes_) out.primes_.emplace(p, c * r);
    return out;
}

CertReal ExpMonomial::evaluate(int prec) const {
    if (auto q = as_rational()) return CertReal::from_rational(*q, prec);
    CertReal acc = CertReal::from_integer(1, prec);
    for (auto& [p, c] : primes_) acc *= gfw::pow(CertReal::from_integer(p, prec), c);
    if (e_exp_ != 0) acc *= exp(CertReal::from_rational(e_exp_, prec));
    if (pi_exp_ != 0) acc *= gfw::pow(CertReal::pi(prec), pi_exp_);
    return acc;
}

std::string ExpMonomial::to_string() const {
    if (is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    auto factor = [&](const std::string& base, const Rational& c) {
        if (!first) os << '*';
        first = false;
        os << base;
        if (c != 1) os << "^(" << gfw::to_string(c) << ')';
    };
    for (auto& [p, c] : primes_) factor(gfw::to_string(p), c);
    if (e_exp_ != 0) factor("e", e_exp_);
    if (pi_exp_ != 0) factor("pi", pi_exp_);
    return os.str();
}

Ordering compare(const ExpMonomial& a, const ExpMonomial& b, int prec, int max_prec) {
    ExpMonomial q = a / b;
    if (q.is_one()) return Ordering::Equal;
    if (q.is_algebraic()) {
        // prod p^{c_p} against 1: raise to the common denominator and
        // compare the two sides of the resulting rational identity.
        Integer den = 1;
        for (auto& [p, c] : q.prime_exponents()) den = lcm(den, Integer(c.get_den()));
        Integer num_side = 1, den_side = 1;
        for (auto& [p, c] : q.prime_exponents()) {
            Rational e = c * den;
            unsigned long k = Integer(abs(e.get_num())).get_ui();
            (e > 0 ? num_side : den_side) *= gfw::pow(p, k);
        }
        if (num_side == den_side) return Ordering::Equal;
        return num_side < den_side ? Ordering::Less : Ordering::Greater;
    }
    // A non-trivial pi or e part: not provably equal to 1 by this route
    // except through separation.
    for (int p = prec; p <= max_prec; p *= 2) {
        Ordering o = cmp(q.evaluate(p), CertReal::from_integer(1, p));
        if (o == Ordering::Less || o == Ordering::Greater) return o;
    }
    return Ordering::Indeterminate;
}

}  // namespace gfw
