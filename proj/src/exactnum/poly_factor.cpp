#include "gfw/exactnum/poly_factor.hpp"

#include <algorithm>
#include <random>

namespace gfw {

namespace {

PolyFp pth_root(const PolyFp& f) {
    const auto p = static_cast<int>(f.field().characteristic());
    std::vector<std::uint64_t> v;
    for (int i = 0; i <= f.degree(); i += p) v.push_back(f.coeff(i));
    return PolyFp(f.field(), std::move(v));
}

PolyFp one(const PrimeField& k) { return PolyFp::constant(k, 1); }

void sqf_rec(const PolyFp& f, int scale, std::vector<FpFactor>& out) {
    if (f.degree() < 1) return;
    PolyFp g = f.derivative();
    if (g.is_zero()) {
        sqf_rec(pth_root(f), scale * static_cast<int>(f.field().characteristic()), out);
        return;
    }
    PolyFp c = gcd(f, g);
    PolyFp w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        PolyFp y = gcd(w, c);
        PolyFp z = w / y;
        if (z.degree() > 0) out.push_back({z.monic(), i * scale});
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) sqf_rec(pth_root(c), scale * static_cast<int>(f.field().characteristic()), out);
}

std::vector<std::pair<PolyFp, int>> distinct_degree(PolyFp g) {
    std::vector<std::pair<PolyFp, int>> out;
    const PrimeField& k = g.field();
    const PolyFp x = PolyFp::x(k);
    PolyFp h = x % g;
    Integer p(static_cast<unsigned long>(k.characteristic()));
    for (int i = 1; g.degree() >= 2 * i; ++i) {
        h = pow_mod(h, p, g);
        PolyFp d = gcd(g, h - x);
        if (d.degree() > 0) {
            out.emplace_back(d, i);
            g = g / d;
            h = h % g;
        }
    }
    if (g.degree() > 0) out.emplace_back(g.monic(), g.degree());
    return out;
}

PolyFp random_poly(const PrimeField& k, int below_degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, k.characteristic() - 1);
    std::vector<std::uint64_t> v(below_degree);
    for (auto& c : v) c = dist(rng);
    return PolyFp(k, std::move(v));
}

void equal_degree(const PolyFp& g, int d, std::mt19937_64& rng, std::vector<PolyFp>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const PrimeField& k = g.field();
    const std::uint64_t p = k.characteristic();
    for (;;) {
        PolyFp a = random_poly(k, g.degree(), rng);
        if (a.degree() < 1) continue;
        PolyFp b(k);
        if (p == 2) {
            PolyFp term = a % g;
            b = term;
            for (int i = 1; i < d; ++i) {
                term = mul_mod(term, term, g);
                b += term;
            }
        } else {
            Integer e = (pow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
            b = pow_mod(a, e, g) - one(k);
        }
        PolyFp h = gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree(h, d, rng, out);
            equal_degree(g / h, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FpFactor> squarefree_decomposition(const PolyFp& f) {
    if (f.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
    std::vector<FpFactor> out;
    sqf_rec(f.monic(), 1, out);
    return out;
}

std::vector<FpFactor> poly_factor_mod_p(const PolyFp& f) {
    if (f.is_zero()) throw DomainError("poly_factor_mod_p: zero polynomial");
    std::mt19937_64 rng(0x5eed5eedULL);
    std::vector<FpFactor> out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (const auto& [g, d] : distinct_degree(part)) {
            std::vector<PolyFp> irr;
            equal_degree(g, d, rng, irr);
            for (auto& h : irr) out.push_back({std::move(h), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
        return canonical_less(a.factor, b.factor);
    });
    // Different squarefree layers can contain the same irreducible when p
    // divides a multiplicity; merge them.
    std::vector<FpFactor> merged;
    for (auto& fac : out) {
        if (!merged.empty() && merged.back().factor == fac.factor) merged.back().multiplicity += fac.multiplicity;
        else merged.push_back(std::move(fac));
    }
    return merged;
}

bool is_irreducible(const PolyFp& f) {
    if (f.degree() < 1) return false;
    auto fac = poly_factor_mod_p(f);
    return fac.size() == 1 && fac[0].multiplicity == 1;
}

std::optional<PolyFp> sqrt_mod(const PolyFp& a_in, const PolyFp& pi) {
    const PrimeField& k = pi.field();
    PolyFp a = a_in % pi;
    if (a.is_zero()) return a;
    const Integer p(static_cast<unsigned long>(k.characteristic()));
    const Integer q = pow(p, static_cast<unsigned long>(pi.degree()));
    const PolyFp unit = one(k);
    if (k.characteristic() == 2) {
        // Squaring is bijective; the root is a^(q/2).
        return pow_mod(a, q / 2, pi);
    }
    if (pow_mod(a, (q - 1) / 2, pi) != unit) return std::nullopt;
    // Tonelli-Shanks in F_q.
    Integer odd = q - 1;
    int s = 0;
    while (mpz_even_p(odd.get_mpz_t())) {
        odd /= 2;
        ++s;
    }
    PolyFp z(k);
    for (unsigned long code = 1;; ++code) {
        std::vector<std::uint64_t> v;
        for (unsigned long c = code; c; c /= k.characteristic()) v.push_back(c % k.characteristic());
        PolyFp cand(k, std::move(v));
        cand = cand % pi;
        if (cand.is_zero()) continue;
        if (pow_mod(cand, (q - 1) / 2, pi) != unit) {
            z = cand;
            break;
        }
    }
    int m = s;
    PolyFp c = pow_mod(z, odd, pi);
    PolyFp t = pow_mod(a, odd, pi);
    PolyFp r = pow_mod(a, (odd + 1) / 2, pi);
    while (t != unit) {
        int i = 0;
        PolyFp tt = t;
        while (tt != unit) {
            tt = mul_mod(tt, tt, pi);
            ++i;
        }
        PolyFp b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, pi);
        m = i;
        c = mul_mod(b, b, pi);
        t = mul_mod(t, c, pi);
        r = mul_mod(r, b, pi);
    }
    PolyFp neg = (-r) % pi;
    return canonical_less(neg, r) ? neg : r;
}

std::vector<PolyFp> monic_irreducibles(const PrimeField& k, int degree) {
    std::vector<PolyFp> out;
    const std::uint64_t p = k.characteristic();
    std::uint64_t total = 1;
    for (int i = 0; i < degree; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint64_t> v(degree + 1, 0);
        std::uint64_t c = code;
        for (int i = 0; i < degree; ++i, c /= p) v[i] = c % p;
        v[degree] = 1;
        PolyFp cand(k, std::move(v));
        if (is_irreducible(cand)) out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const PolyFp& a, const PolyFp& b) { return canonical_less(a, b); });
    return out;
}

}  // namespace gfw
