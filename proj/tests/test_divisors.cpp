#include <doctest.h>

#include <cmath>
#include <random>

#include "gfw/divisors/divisor.hpp"
#include "gfw/error.hpp"
#include "support.hpp"

using namespace gfw;
using namespace gfw::test;

namespace {

Divisor D(const GlobalField& K, const char* s) { return Divisor::parse(K, s); }

bool encloses(const CertReal& x, const Rational& q) { return x.contains(q); }

Integer ipow(long b, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
    return r;
}

Divisor random_divisor(const GlobalField& K, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-3, 3);
    Divisor d(K);
    std::vector<Place> support;
    if (K.is_number_field()) {
        for (long p : {2, 3, 5})
            for (const auto& P : places_above(K, Integer(p))) support.push_back(P);
        for (const auto& P : archimedean_places(K)) d.add_arch(P, make_rational(c(rng), 1 + rng() % 3));
    } else {
        for (const auto& P : places_above(K, PolyFp::x(K.constant_field()))) support.push_back(P);
        for (const auto& P : places_at_infinity(K)) support.push_back(P);
    }
    for (const auto& P : support) d.add_finite(P, c(rng));
    return d;
}

}  // namespace

TEST_CASE("degree: worked examples") {
    GlobalField Q = F("nf:x");
    CHECK(encloses(degree(Divisor(Q)), Rational(1)));
    CHECK(degree_value(Divisor(Q)).exact.is_one());

    CertReal d = degree(D(Q, "1*(2)+0.5*inf1"));
    CHECK(std::abs(d.mid_double() - 2 * std::exp(0.5)) < 1e-12);
    CHECK(d.rad_double() < 1e-30);

    GlobalField K = F("ff:3");
    for (int n = -3; n <= 6; ++n) {
        Divisor Dn(K);
        Dn.add_finite(places_at_infinity(K)[0], n);
        DegreeValue v = degree_value(Dn);
        REQUIRE(v.exact.as_rational());
        CHECK(*v.exact.as_rational() == (n >= 0 ? Rational(ipow(3, n)) : Rational(1, ipow(3, -n))));
    }
}

TEST_CASE("literals: parse, print, round trip") {
    GlobalField Q = F("nf:x");
    Divisor a = D(Q, "1*(2)+0.5*inf1");
    CHECK(a.finite_coeff(parse_place(Q, "(2)")) == 1);
    CHECK(a.arch_coeff(parse_place(Q, "inf")) == ArchCoeff(Rational(1, 2)));
    CHECK(D(Q, "2log(2)*inf1") == D(Q, "log(4)*inf1"));
    CHECK(D(Q, "0").is_zero());
    CHECK(D(Q, "-(2)+(2)").is_zero());
    CHECK(D(Q, "1e-1*inf").arch_coeff(parse_place(Q, "inf1")) == ArchCoeff(Rational(1, 10)));

    GlobalField K = F("ff:3");
    Divisor b = D(K, "2*(t)+3*inf");
    CHECK(b.finite_coeff(parse_place(K, "(t)")) == 2);
    CHECK(b.finite_coeff(parse_place(K, "inf")) == 3);

    GlobalField C = F("ff:3:y^2=t^3-t");
    CHECK_NOTHROW(D(C, "(t+2)"));  // ramified: a single place
    GlobalField G = F("nf:x^2+1");
    CHECK_THROWS_AS(D(G, "1*(5)"), ParseError);    // two places above 5
    CHECK_NOTHROW(D(G, "1*(5,2)"));
    CHECK_THROWS_AS(D(G, "1*(5,3)"), ParseError);
    CHECK_THROWS_AS(D(G, "1/2*(2)"), ParseError);  // finite coefficient not integral
    CHECK_THROWS_AS(D(G, "log(2)*(2)"), ParseError);
    CHECK_THROWS_AS(D(G, "1*(4)"), ParseError);
    CHECK_THROWS_AS(D(G, "1*inf2"), ParseError);  // one complex place
    CHECK_THROWS_AS(D(G, "1*(2"), ParseError);
    CHECK_THROWS_AS(D(G, "log(2)log(3)*inf"), ParseError);

    for (const auto& K2 : test_fields()) {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 30; ++i) {
            Divisor x = random_divisor(K2, rng);
            CAPTURE(x.to_string());
            CHECK(D(K2, x.to_string().c_str()) == x);
        }
    }
}

TEST_CASE("literals: deferred logabs coefficients round trip") {
    GlobalField K = F("nf:x^2-2");
    Divisor x = principal_divisor(E(K, "1+x"));
    CHECK(D(K, x.to_string().c_str()) == x);
}

TEST_CASE("add and negate") {
    GlobalField Q = F("nf:x");
    Divisor a = D(Q, "1*(2)");
    CHECK(negate(a) == D(Q, "-1*(2)"));
    CHECK((a + negate(a)).is_zero());
    CHECK_THROWS_AS(add(a, Divisor(F("nf:x^2+1"))), DomainError);
    CHECK_THROWS_AS(Divisor(Q).add_finite(parse_place(F("nf:x^2+1"), "(2)"), 1), DomainError);

    for (const auto& K : test_fields()) {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 20; ++i) {
            Divisor x = random_divisor(K, rng), y = random_divisor(K, rng);
            CHECK((x + negate(x)).is_zero());
            CertReal lhs = degree(x + y), rhs = degree(x) * degree(y);
            CHECK(lhs.overlaps(rhs));
            DegreeValue vx = degree_value(x), vy = degree_value(y), vxy = degree_value(x + y);
            CHECK(vxy.exact == vx.exact * vy.exact);
        }
    }
}

TEST_CASE("principal divisors") {
    GlobalField Q = F("nf:x");
    Divisor two = principal_divisor(E(Q, "2"));
    CHECK(two.finite_coeff(parse_place(Q, "(2)")) == -1);
    CHECK(two.arch_coeff(parse_place(Q, "inf")) == ArchCoeff(LogLinear::log_of(Rational(2))));
    CHECK(degree_value(two).exact.is_one());
    CHECK(principal_divisor(E(Q, "1")).is_zero());
    CHECK_THROWS_AS(principal_divisor(E(Q, "0")), DomainError);

    GlobalField K = F("ff:3");
    Divisor t = principal_divisor(E(K, "t"));
    CHECK(t.finite_coeff(parse_place(K, "(t)")) == -1);
    CHECK(t.finite_coeff(parse_place(K, "inf")) == 1);

    for (const auto& L : test_fields()) {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 100; ++i) {
            FieldElement a = random_element(L, rng);
            CAPTURE(L.to_string());
            CAPTURE(a.to_string());
            Divisor p = principal_divisor(a);
            CertReal d = degree(p);
            CHECK(encloses(d, Rational(1)));
            if (!L.is_number_field()) CHECK(degree_value(p).exact.is_one());
        }
    }
}

TEST_CASE("ramification divisor") {
    GlobalField G = F("nf:x^2+1");
    Divisor R = ramification_divisor(Extension(G, base_field(G)));
    CHECK(R == D(G, "2*(2)-log(2)*inf"));
    CHECK(encloses(degree(R), Rational(1)));
    CHECK(degree_value(R).exact.is_one());

    GlobalField M = F("nf:x^2+5");
    Divisor R5 = ramification_divisor(Extension(M, base_field(M)));
    CHECK(degree_value(R5).exact == ExpMonomial::from_rational(Rational(5)));

    GlobalField C = F("ff:3:y^2=t^3-t");
    Divisor RC = ramification_divisor(Extension(C, base_field(C)));
    CHECK(RC.finite().size() == 4);
    for (const auto& [P, c] : RC.finite()) {
        CHECK(c == 1);
        CHECK(P.norm() == 3);
    }
    CHECK(*degree_value(RC).exact.as_rational() == 81);

    GlobalField Q = F("nf:x");
    CHECK(ramification_divisor(Extension(Q, Q)).is_zero());
}

TEST_CASE("canonical divisor: worked examples") {
    GlobalField Q = F("nf:x");
    Divisor w = canonical_divisor(Q);
    CHECK(w == D(Q, "-2*(2)+2log(2)*inf1"));
    CHECK(degree_value(w).exact.is_one());

    GlobalField G = F("nf:x^2+1");
    Divisor wg = canonical_divisor(G);
    CHECK(wg == D(G, "-2*(2)+log(2)*inf"));  // R contributes 2*(2) - log(2)*inf, S0 contributes -4*(2)
    CHECK(degree_value(wg).exact.is_one());

    GlobalField C = F("ff:3:y^2=t^3-t");
    CHECK(*degree_value(canonical_divisor(C)).exact.as_rational() == 1);
    CHECK(*degree_value(canonical_divisor(F("ff:3"))).exact.as_rational() == Rational(1, 9));
    CHECK(*degree_value(canonical_divisor(F("ff:5"))).exact.as_rational() == Rational(1, 25));

    CanonicalChoice bad;
    bad.p0 = BasePlace::parse(F("ff:3"), "t^2+1");
    CHECK_THROWS_AS(canonical_divisor(F("ff:3"), bad), DomainError);
    CHECK_THROWS_AS(BasePlace::parse(Q, "4"), ParseError);
    CHECK_THROWS_AS(BasePlace::parse(F("ff:3"), "t^2-1"), ParseError);
}

TEST_CASE("canonical divisor degree identity, choice independence") {
    for (const char* lit : {"nf:x", "nf:x^2+1", "nf:x^2-2", "nf:x^2+5", "nf:x^2+3*x+3", "nf:x^3-2", "nf:x^2-x-1"}) {
        GlobalField K = F(lit);
        CAPTURE(lit);
        auto [s1, s2] = s_counts(K);
        Rational expected(abs(K.discriminant()), ipow(2, static_cast<unsigned long>(s2)));
        std::size_t n_arch = archimedean_places(K).size();
        for (long p : {2, 3, 5}) {
            for (std::size_t j = 0; j < n_arch; ++j) {
                CanonicalChoice ch;
                ch.p0 = BasePlace::parse(K, std::to_string(p));
                ch.pinf = static_cast<int>(j);
                DegreeValue v = degree_value(canonical_divisor(K, ch));
                CHECK(v.is_exact());
                CHECK(v.exact == ExpMonomial::from_rational(expected));
                CHECK(encloses(v.evaluate(), expected));
            }
        }
    }
    for (const char* lit : {"ff:3", "ff:5", "ff:3:y^2=t^3-t", "ff:5:y^2=t^3+t+1", "ff:7:y^2=t^2+3", "ff:5:y^2=t"}) {
        GlobalField K = F(lit);
        CAPTURE(lit);
        Rational expected = pow(Rational(K.constant_field().characteristic()), 2 * K.genus() - 2);
        std::vector<std::string> choices{"inf"};
        for (unsigned c = 0; c < K.constant_field().characteristic(); ++c) choices.push_back("t+" + std::to_string(c));
        for (const auto& c : choices) {
            CanonicalChoice ch;
            ch.p0 = BasePlace::parse(K, c);
            CHECK(*degree_value(canonical_divisor(K, ch)).exact.as_rational() == expected);
        }
    }
}
