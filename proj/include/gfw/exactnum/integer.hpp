#ifndef GFW_EXACTNUM_INTEGER_HPP
#define GFW_EXACTNUM_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gfw {

using Integer = mpz_class;
using Rational = mpq_class;

/// Prime power decomposition, primes ascending.
using Factorization = std::vector<std::pair<Integer, int>>;

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// Factor |n| (n != 0) by trial division followed by Brent's variant of
/// Pollard rho with a fixed sequence of constants, so the output is
/// reproducible.
Factorization factor_integer(const Integer& n);

/// Exponent of p in n (n != 0).
int valuation(Integer n, const Integer& p);
int valuation(const Rational& q, const Integer& p);

Integer pow(const Integer& base, unsigned long exp);
Rational pow(const Rational& base, long exp);

/// Parses "12", "-3/4", "0.125", "1e-2" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace gfw

#endif
