#ifndef GFW_TESTS_SUPPORT_HPP
#define GFW_TESTS_SUPPORT_HPP

#include <random>

#include "gfw/places/places.hpp"

namespace gfw::test {

inline GlobalField F(const char* lit) { return GlobalField::parse(lit); }
inline FieldElement E(const GlobalField& K, const char* s) { return FieldElement::parse(K, s); }

inline PolyFp tpoly(const GlobalField& K, const char* s) {
    FieldElement a = E(K, s);
    return a.a().num;
}

/// Random element with small coefficients and a small denominator.
inline FieldElement random_element(const GlobalField& K, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-9, 9);
    for (;;) {
        FieldElement a(K);
        if (K.is_number_field()) {
            std::vector<Rational> v;
            for (int i = 0; i < K.degree(); ++i) v.push_back(make_rational(c(rng), 1 + rng() % 6));
            a = FieldElement::from_poly(K, PolyQ(RationalField{}, v));
        } else {
            const PrimeField& k = K.constant_field();
            auto rp = [&](int deg) {
                std::vector<std::uint64_t> v(deg + 1);
                for (auto& x : v) x = rng() % k.characteristic();
                return PolyFp(k, v);
            };
            PolyFp den = rp(1 + rng() % 2);
            if (den.is_zero()) continue;
            RatFunc ra(rp(rng() % 4), den);
            RatFunc rb = K.kind() == FieldKind::QuadraticFF ? RatFunc(rp(rng() % 3))
                                                           : RatFunc(k);
            a = FieldElement::from_parts(K, ra, rb);
        }
        if (!a.is_zero()) return a;
    }
}

inline std::vector<GlobalField> test_fields() {
    return {F("nf:x"),    F("nf:x^2+1"), F("nf:x^2-2"), F("nf:x^2+5"),
            F("ff:3"),    F("ff:5"),     F("ff:3:y^2=t^3-t")};
}

}  // namespace gfw::test

#endif
