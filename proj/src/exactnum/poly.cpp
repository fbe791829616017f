#include "gfw/exactnum/poly.hpp"

#include "gfw/exactnum/matrix.hpp"

namespace gfw {

bool has_integer_coeffs(const PolyQ& f) {
    for (const auto& c : f.coeffs())
        if (c.get_den() != 1) return false;
    return true;
}

Integer common_denominator(const PolyQ& f) {
    Integer d = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den().get_mpz_t());
    return d;
}

PolyFp reduce_mod(const PolyQ& f, const PrimeField& k) {
    std::vector<std::uint64_t> v;
    v.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) v.push_back(k.from_rational(c));
    return PolyFp(k, std::move(v));
}

PolyQ lift(const PolyFp& f) {
    std::vector<Rational> v;
    for (auto c : f.coeffs()) v.emplace_back(Integer(static_cast<unsigned long>(c)));
    return PolyQ(RationalField{}, std::move(v));
}

Rational resultant(const PolyQ& f, const PolyQ& g) {
    const int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    const std::size_t size = static_cast<std::size_t>(m + n);
    RatMatrix s(size, size);
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s(r, r + i) = f.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s(n + r, r + i) = g.coeff(n - i);
    return determinant(std::move(s));
}

Rational discriminant(const PolyQ& f) {
    const int n = f.degree();
    if (n < 1) throw DomainError("discriminant of a constant polynomial");
    if (n == 1) return 1;
    Rational r = resultant(f, f.derivative()) / f.lead();
    return ((n * (n - 1) / 2) % 2) ? Rational(-r) : r;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int sturm_real_root_count(const PolyQ& f) {
    if (f.degree() < 1) return 0;
    std::vector<PolyQ> seq{f, f.derivative()};
    while (seq.back().degree() > 0) {
        PolyQ r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    std::vector<int> at_pos, at_neg;
    for (const auto& p : seq) {
        int s = sgn(p.lead());
        at_pos.push_back(s);
        at_neg.push_back(p.degree() % 2 ? -s : s);
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

}  // namespace gfw
