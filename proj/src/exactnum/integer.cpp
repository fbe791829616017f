#include "gfw/exactnum/integer.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "gfw/error.hpp"

namespace gfw {

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    // GMP runs Baillie-PSW first; it has no known pseudoprimes and none
    // below 2^64.
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(std::uint64_t n) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
    return is_prime(z);
}

namespace {

Integer brent_rho(const Integer& n, unsigned long c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto step = [&](Integer& v) {
        v = v * v + c;
        v %= n;
    };
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        unsigned long k = 0;
        do {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                step(y);
                Integer d = x - y;
                if (d < 0) d = -d;
                q = (q * d) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            step(ys);
            Integer d = x - ys;
            if (d < 0) d = -d;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split(const Integer& n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Integer d = brent_rho(n, c);
        if (d != n && d != 1) {
            split(d, out);
            split(n / d, out);
            return;
        }
    }
}

}  // namespace

Factorization factor_integer(const Integer& n_in) {
    if (n_in == 0) throw DomainError("factor_integer: zero has no factorization");
    Integer n = abs(n_in);
    std::map<Integer, int> found;
    for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
        if (static_cast<unsigned long>(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++found[Integer(p)];
            n /= p;
        }
    }
    if (n > 1) split(n, found);
    return {found.begin(), found.end()};
}

int valuation(Integer n, const Integer& p) {
    if (n == 0) throw DomainError("valuation of zero");
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const Rational& q, const Integer& p) {
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

Integer pow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational pow(const Rational& base, long exp) {
    if (exp >= 0) {
        return make_rational(pow(base.get_num(), static_cast<unsigned long>(exp)),
                             pow(base.get_den(), static_cast<unsigned long>(exp)));
    }
    if (base == 0) throw DomainError("negative power of zero");
    auto e = static_cast<unsigned long>(-exp);
    return make_rational(pow(base.get_den(), e), pow(base.get_num(), e));
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty number", 0);
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    Integer num = 0, den = 1;
    bool digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        num = num * 10 + (s[i++] - '0');
        digits = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            num = num * 10 + (s[i++] - '0');
            den *= 10;
            digits = true;
        }
    }
    if (!digits) throw ParseError("expected digits in number '" + s + "'", i);
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        long e = 0;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])) && e < 100000)
            e = e * 10 + (s[i++] - '0');
        if (i == start) throw ParseError("expected exponent in number '" + s + "'", i);
        if (eneg) den *= pow(Integer(10), e);
        else num *= pow(Integer(10), e);
    } else if (i < s.size() && s[i] == '/') {
        ++i;
        Integer d = 0;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            d = d * 10 + (s[i++] - '0');
        if (i == start) throw ParseError("expected denominator in number '" + s + "'", i);
        if (d == 0) throw ParseError("zero denominator in number '" + s + "'", i);
        den *= d;
    }
    if (i != s.size()) throw ParseError("trailing characters in number '" + s + "'", i);
    return make_rational(neg ? Integer(-num) : num, den);
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace gfw
