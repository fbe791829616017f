#include <doctest.h>

#include <random>

#include "gfw/error.hpp"
#include "gfw/exactnum/poly_factor.hpp"
#include "gfw/places/places.hpp"
#include "support.hpp"

using namespace gfw;
using namespace gfw::test;

TEST_CASE("field literals") {
    CHECK(F("nf:x^2+1").degree() == 2);
    CHECK(F("nf:x^2+1").discriminant() == -4);
    CHECK(F("nf:x^2+1").to_string() == "nf:x^2+1");
    CHECK(F("ff:3:y^2=t^3-t").to_string() == "ff:3:y^2=t^3+2*t");
    CHECK(F("ff:3:y^2=t^3-t").genus() == 1);
    CHECK(F("ff:5").genus() == 0);
    for (auto& K : test_fields()) CHECK(GlobalField::parse(K.to_string()) == K);
    CHECK_THROWS_AS(F("nf:x^2-x"), DomainError);
    CHECK_THROWS_AS(F("nf:x^4+4"), DomainError);
    CHECK_THROWS_AS(F("nf:x^2-5"), UnsupportedError);
    CHECK_THROWS_AS(F("nf:x^2+3"), UnsupportedError);
    CHECK_THROWS_AS(F("nf:2*x^2+1"), DomainError);
    CHECK_THROWS_AS(F("ff:4"), ParseError);
    CHECK_THROWS_AS(F("ff:2:y^2=t"), UnsupportedError);
    CHECK_THROWS_AS(F("ff:3:y^2=t^2"), DomainError);
    CHECK_THROWS_AS(F("ff:3:y^2=t^5+1"), DomainError);
    try {
        F("nf:x^2+$");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
    }
    CHECK_NOTHROW(F("nf:x^3-2"));
    CHECK_NOTHROW(F("nf:x^4+1"));
    CHECK(F("nf:theta^2 + 1") == F("nf:x^2+1"));
}

TEST_CASE("elements: arithmetic and round trip") {
    auto Qi = F("nf:x^2+1");
    auto i = E(Qi, "x");
    CHECK(i * i == E(Qi, "-1"));
    CHECK((E(Qi, "1+x") / E(Qi, "1-x")) == i);
    CHECK(E(Qi, "2x") == E(Qi, "2*theta"));
    CHECK(E(Qi, "(1+x)^-2") * E(Qi, "(1+x)^2") == E(Qi, "1"));
    CHECK(E(Qi, "2+x").norm() == 5);

    auto C = F("ff:3:y^2=t^3-t");
    auto y = E(C, "y");
    CHECK(y * y == E(C, "t^3-t"));
    CHECK((E(C, "t+y") / E(C, "t+y")).is_one());
    CHECK(E(C, "1/2") == E(C, "2"));
    CHECK_THROWS_AS(E(C, "1/3"), ParseError);
    CHECK_THROWS_AS(E(F("ff:3"), "y"), ParseError);
    CHECK_THROWS_AS(E(Qi, "1/(x-x)"), ParseError);

    std::mt19937_64 rng(3);
    for (auto& K : test_fields())
        for (int k = 0; k < 30; ++k) {
            FieldElement a = random_element(K, rng);
            INFO(a.to_string());
            CHECK(FieldElement::parse(K, a.to_string()) == a);
        }
}

TEST_CASE("places above a base") {
    auto Qi = F("nf:x^2+1");
    auto p5 = places_above(Qi, Integer(5));
    REQUIRE(p5.size() == 2);
    CHECK(p5[0].e == 1);
    CHECK(p5[0].f == 1);
    CHECK(p5[0].label() == "(5,1)");
    auto p2 = places_above(Qi, Integer(2));
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].e == 2);
    CHECK(p2[0].f == 1);
    auto p3 = places_above(Qi, Integer(3));
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].f == 2);
    CHECK(p3[0].norm() == 9);
    CHECK_THROWS_AS(places_above(Qi, Integer(6)), DomainError);

    auto C = F("ff:3:y^2=t^3-t");
    auto pt = places_above(C, tpoly(C, "t"));
    REQUIRE(pt.size() == 1);
    CHECK(pt[0].e == 2);
    CHECK(pt[0].f == 1);
    CHECK_THROWS_AS(places_above(C, tpoly(C, "t^2")), DomainError);
    CHECK(places_at_infinity(C).size() == 1);
    CHECK(places_at_infinity(C)[0].e == 2);
    // t^3 - t at t = 2 (mod t+1... ) : f(1) = 0, f(2) = 6 = 0; take t^2+1: f = t^3 - t = -2t = t mod (t^2+1).
    auto pq = places_above(C, tpoly(C, "t^2+1"));
    int total = 0;
    for (auto& P : pq) total += P.e * P.f;
    CHECK(total == 2);
}

TEST_CASE("archimedean places, norms and S counts") {
    CHECK(archimedean_places(F("nf:x")).size() == 1);
    CHECK(archimedean_places(F("nf:x"))[0].kind == PlaceKind::Real);
    auto a = archimedean_places(F("nf:x^2+1"));
    REQUIRE(a.size() == 1);
    CHECK(a[0].kind == PlaceKind::Complex);
    CHECK(archimedean_places(F("ff:3")).empty());
    CHECK(norm_N(a[0]).mid_double() == doctest::Approx(7.389056099));
    CHECK(norm_N(places_above(F("nf:x^2+1"), Integer(5))[0]).contains(Rational(5)));
    CHECK(norm_N(places_at_infinity(F("ff:3"))[0]).contains(Rational(3)));
    CHECK(s_counts(F("nf:x")) == std::pair(1, 0));
    CHECK(s_counts(F("nf:x^2+1")) == std::pair(0, 2));
    CHECK(s_counts(F("ff:3")) == std::pair(0, 0));
    CHECK(s_counts(F("nf:x^3-2")) == std::pair(1, 2));
    for (auto& K : test_fields()) {
        if (!K.is_number_field()) continue;
        auto [s1, s2] = s_counts(K);
        CHECK(s1 + s2 == K.degree());
    }
}

TEST_CASE("valuations: worked examples") {
    auto Q = F("nf:x");
    auto P2 = places_above(Q, Integer(2))[0];
    CHECK(normalized_valuation(P2, E(Q, "2")).contains(Rational(1, 2)));

    auto Qi = F("nf:x^2+1");
    auto Q2 = places_above(Qi, Integer(2))[0];
    CHECK(normalized_valuation(Q2, E(Qi, "1+x")).contains(Rational(1, 2)));
    CHECK(valuation(Q2, E(Qi, "1+x")) == 1);
    CHECK(valuation(Q2, E(Qi, "2")) == 2);
    auto arch = archimedean_places(Qi)[0];
    CHECK(normalized_valuation(arch, E(Qi, "1+x")).contains(Rational(2)));
    auto Q5 = places_above(Qi, Integer(5))[0];
    CHECK(Q5.local_factor == PolyFp(PrimeField(5), {2, 1}));
    CHECK(valuation(Q5, E(Qi, "2+x")) == 1);
    CHECK(valuation(places_above(Qi, Integer(5))[1], E(Qi, "2+x")) == 0);
    CHECK(valuation(Q5, E(Qi, "1")) == 0);
    CHECK(valuation(Q5, E(Qi, "1/(2+x)^3")) == -3);
    CHECK_THROWS_AS(valuation(Q5, E(Qi, "0")), DomainError);

    auto C = F("ff:3:y^2=t^3-t");
    auto Pt = places_above(C, tpoly(C, "t"))[0];
    CHECK(valuation(Pt, E(C, "y")) == 1);
    CHECK(valuation(Pt, E(C, "t")) == 2);
    auto Pinf = places_at_infinity(C)[0];
    CHECK(valuation(Pinf, E(C, "t")) == -2);
    CHECK(valuation(Pinf, E(C, "y")) == -3);
    CHECK(valuation(Pinf, E(C, "y/t^2")) == 1);

    auto F3 = F("ff:3");
    CHECK(valuation(places_at_infinity(F3)[0], E(F3, "t")) == -1);
    CHECK(valuation(places_above(F3, tpoly(F3, "t"))[0], E(F3, "t^2/(t+1)")) == 2);
}

TEST_CASE("split places of the curve are distinguished") {
    // y^2 = t^3 - t over F_5: at t = 2, f = 6 = 1 is a square, so (t-2) splits.
    auto C = F("ff:5:y^2=t^3-t");
    auto ps = places_above(C, tpoly(C, "t-2"));
    REQUIRE(ps.size() == 2);
    auto a = E(C, "y-1"), b = E(C, "y+1");
    int va0 = valuation(ps[0], a), va1 = valuation(ps[1], a);
    int vb0 = valuation(ps[0], b), vb1 = valuation(ps[1], b);
    CHECK(va0 + va1 == 1);
    CHECK(vb0 + vb1 == 1);
    CHECK(va0 != vb0);
    // t^2 + t - ... degree-2 curve split at infinity when the leading coefficient is a square.
    auto D = F("ff:5:y^2=t^2+2");
    CHECK(places_at_infinity(D).size() == 2);
    CHECK(places_at_infinity(F("ff:5:y^2=2*t^2+1")).size() == 1);
    CHECK(places_at_infinity(F("ff:5:y^2=2*t^2+1"))[0].f == 2);
    auto inf = places_at_infinity(D);
    auto z = E(D, "y-t");
    CHECK(valuation(inf[0], z) + valuation(inf[1], z) == valuation(places_at_infinity(F("ff:5"))[0],
                                                                     E(F("ff:5"), "-2")) - 0);
}

TEST_CASE("fundamental identity") {
    for (auto& K : test_fields()) {
        if (K.is_number_field()) {
            for (int p : {2, 3, 5, 7, 11, 13, 29}) {
                int total = 0;
                for (auto& P : places_above(K, Integer(p))) total += P.e * P.f;
                CHECK(total == K.degree());
            }
        } else {
            const PrimeField& k = K.constant_field();
            for (int d = 1; d <= 2; ++d)
                for (auto& pi : monic_irreducibles(k, d)) {
                    int total = 0;
                    for (auto& P : places_above(K, pi)) total += P.e * P.f;
                    CHECK(total == K.degree());
                }
            int total = 0;
            for (auto& P : places_at_infinity(K)) total += P.e * P.f;
            CHECK(total == K.degree());
        }
    }
}

TEST_CASE("product formula and multiplicativity on random elements") {
    std::mt19937_64 rng(2024);
    for (auto& K : test_fields()) {
        for (int k = 0; k < 200; ++k) {
            FieldElement a = random_element(K, rng);
            CertReal d = product_formula_defect(a);
            CHECK(d.contains(Rational(1)));
            CHECK(d.rad_double() < 1e-20);
            if (!K.is_number_field()) CHECK(d.is_exact());
        }
        for (int k = 0; k < 40; ++k) {
            FieldElement a = random_element(K, rng), b = random_element(K, rng);
            for (auto& [P, v] : finite_divisor(a * b)) CHECK(v == valuation(P, a) + valuation(P, b));
        }
    }
    auto Q = F("nf:x");
    CHECK(product_formula_defect(E(Q, "2")).contains(Rational(1)));
    auto F3 = F("ff:3");
    CHECK(product_formula_defect(E(F3, "t")).is_exact());
    CHECK_THROWS_AS(product_formula_defect(E(Q, "0")), DomainError);
}

TEST_CASE("ramification and different") {
    auto Qi = F("nf:x^2+1");
    Extension ext(Qi, F("nf:x"));
    auto arch = archimedean_places(Qi)[0];
    CHECK(ramification_index(arch, ext) == 2);
    auto Q2 = places_above(Qi, Integer(2))[0];
    CHECK(ramification_index(Q2, ext) == 2);
    CHECK(different_exponent(Q2, ext) == LogLinear(Rational(2)));
    CHECK(different_exponent(arch, ext) == -LogLinear::log_of(Rational(2)));
    CHECK(different_exponent(arch, ext).evaluate().mid_double() == doctest::Approx(-0.693147));

    auto C = F("ff:3:y^2=t^3-t");
    Extension ec(C, F("ff:3"));
    auto Pt = places_above(C, tpoly(C, "t"))[0];
    CHECK(ramification_index(Pt, ec) == 2);
    CHECK(different_exponent(Pt, ec) == LogLinear(Rational(1)));
    CHECK_THROWS_AS(Extension(C, F("ff:5")), UnsupportedError);
    CHECK_THROWS_AS(Extension(Qi, F("nf:x^2-2")), UnsupportedError);
}

TEST_CASE("discriminant identity") {
    for (auto [lit, expect] : {std::pair{"nf:x^2+1", 4}, {"nf:x^2-2", 8}, {"nf:x^2+5", 20}, {"nf:x^3-2", 108}}) {
        auto K = F(lit);
        Extension ext(K, F("nf:x"));
        Integer prod = 1;
        for (auto& [p, e] : factor_integer(K.discriminant()))
            for (auto& Q : places_above(K, p)) {
                LogLinear r = different_exponent(Q, ext);
                REQUIRE(r.is_rational());
                prod *= gfw::pow(Q.norm(), r.constant_part().get_num().get_ui());
            }
        CHECK(prod == expect);
    }
}
