#include <doctest.h>

#include <cmath>
#include <random>

#include "gfw/error.hpp"
#include "gfw/theorems/theorems.hpp"
#include "support.hpp"

using namespace gfw;
using namespace gfw::test;

namespace {

Divisor D(const GlobalField& K, const std::string& s) { return Divisor::parse(K, s); }
ExpMonomial Q(long n, long d = 1) { return ExpMonomial::from_rational(Rational(n, d)); }
ExpMonomial pi(long k) { return ExpMonomial::pi_power(Rational(k)); }

// (2 floor(e^a) + 1) / (2 e^a), straight from MPFR.
CertReal closed_form_i(long a) {
    CertReal ea = exp(CertReal::from_integer(a, 256));
    long fl = static_cast<long>(std::floor(ea.mid_double()));
    return CertReal::from_integer(2 * fl + 1, 256) / (CertReal::from_integer(2, 256) * ea);
}

// Lattice points of Z[i] in the disk |z|^2 <= r2, r2 not an integer.
long gauss_count(double r2) {
    long n = 0, r = static_cast<long>(std::sqrt(r2)) + 1;
    for (long x = -r; x <= r; ++x)
        for (long y = -r; y <= r; ++y)
            if (static_cast<double>(x * x + y * y) <= r2) ++n;
    return n;
}

}  // namespace

TEST_CASE("constants C and B") {
    auto c10 = constants(1, 0);
    CHECK(c10.c_theorem == Q(3));
    CHECK(c10.c_remark == Q(3));
    CHECK(c10.b == Q(2));

    auto c00 = constants(0, 0);
    CHECK(c00.c_theorem.is_one());
    CHECK(c00.c_remark.is_one());
    CHECK(c00.b.is_one());

    auto c02 = constants(0, 2);
    CHECK(c02.c_theorem == Q(288) * pi(-2));
    CHECK(c02.c_remark == Q(144) * pi(-1));
    CHECK(compare(c02.c_theorem, c02.c_remark) == Ordering::Less);
    CHECK(std::abs(c02.c_theorem.evaluate().mid_double() - 29.1805) < 1e-3);
    CHECK(std::abs(c02.c_remark.evaluate().mid_double() - 45.8366) < 1e-3);
    CHECK(c02.b == Q(2) * pi(1));

    for (int s1 = 0; s1 <= 4; ++s1) {
        auto c = constant_C(s1, 0);
        CHECK(c.first == c.second);
    }
    // 6^2 2! / 2^2 = 18
    CHECK(constant_C(2, 0).first == Q(18));
    CHECK(constant_B(2, 2) == Q(8) * pi(1));

    CHECK_THROWS_AS(constants(1, 1), DomainError);
    CHECK_THROWS_AS(constants(-1, 0), DomainError);
    CHECK(ball_volume(1) == Q(2));
    CHECK(ball_volume(2) == pi(1));
    CHECK_THROWS_AS(ball_volume(3), DomainError);
}

TEST_CASE("chi: closed form") {
    GlobalField Qf = F("nf:x");
    CHECK(chi(Divisor(Qf)).contains(Rational(0)));
    CHECK(chi(D(Qf, "5/2*inf")).contains(Rational(5, 2)));
    CHECK(chi(Divisor(F("nf:x^2+1"))).contains(Rational(0)));
    CHECK_THROWS_AS(chi(Divisor(F("ff:3"))), DomainError);
}

TEST_CASE("chi: covolume cross-check on random divisors") {
    for (const char* lit : {"nf:x", "nf:x^2+1", "nf:x^2-2", "nf:x^2+5"}) {
        GlobalField K = F(lit);
        CAPTURE(lit);
        std::mt19937_64 rng(11);
        std::vector<Place> pool;
        for (long p : {2, 3, 5, 7})
            for (const auto& P : places_above(K, Integer(p))) pool.push_back(P);
        for (int trial = 0; trial < 50; ++trial) {
            Divisor d(K);
            for (int j = 0; j < 3; ++j) d.add_finite(pool[rng() % pool.size()], static_cast<long>(rng() % 7) - 3);
            for (const auto& P : archimedean_places(K)) {
                ArchCoeff c = Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4));
                if (rng() % 2) c = c + ArchCoeff(LogLinear::log_of(Rational(3)));
                d.add_arch(P, c);
            }
            CAPTURE(d.to_string());
            CertReal a = chi(d), b = chi_from_covolume(d);
            CHECK(a.overlaps(b));
            CHECK(b.rad_double() < 1e-20);
        }
    }
}

TEST_CASE("i(D): worked examples") {
    GlobalField Qf = F("nf:x");
    IValue i0 = i_function(Divisor(Qf));
    REQUIRE(i0.exact);
    CHECK(*i0.exact == Q(3, 2));
    CHECK(i0.count == 3);

    IValue i3 = i_function(D(Qf, "3*inf"));
    CHECK(i3.count == 41);
    REQUIRE(i3.exact);
    CHECK(*i3.exact == Q(41, 2) * ExpMonomial::exp_of(LogLinear(Rational(-3))));
    CHECK(std::abs(i3.value.mid_double() - 1.0206) < 1e-4);

    IValue f = i_function(D(F("ff:3"), "3*inf"));
    CHECK(f.count == 1);
    REQUIRE(f.exact);
    CHECK(f.exact->is_one());
}

TEST_CASE("i(D) on Q matches the closed form") {
    GlobalField Qf = F("nf:x");
    for (long a = 1; a <= 10; ++a) {
        CAPTURE(a);
        IValue v = i_function(D(Qf, std::to_string(a) + "*inf"));
        CHECK(v.value.overlaps(closed_form_i(a)));
        CHECK(v.value.rad_double() < 1e-20);
        if (a >= 3) CHECK(std::abs(v.value.mid_double() - 1) < 0.05);
    }
}

TEST_CASE("rr1 sandwich") {
    GlobalField Qf = F("nf:x");
    VerificationReport r = verify_rr_sandwich(Divisor(Qf));
    CHECK(r.h0 == Integer(3));
    CHECK(r.h0_dual == Integer(3));
    CHECK(r.ratio->contains(Rational(1)));
    CHECK(r.ratio->is_exact());
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.verdict_theorem == Verdict::Holds);

    GlobalField K3 = F("ff:3");
    for (int n = 0; n <= 6; ++n) {
        VerificationReport s = verify_rr_sandwich(D(K3, std::to_string(n) + "*inf"));
        CAPTURE(n);
        CHECK(s.ratio->is_exact());
        CHECK(s.ratio->contains(Rational(1)));
        CHECK(s.c_remark->contains(Rational(1)));
        CHECK(s.verdict == Verdict::Holds);
        CHECK(s.margin->contains(Rational(0)));
    }

    GlobalField C = F("ff:3:y^2=t^3-t");
    for (const char* base : {"inf", "(t)", "(t+1)"})
        for (int n = 0; n <= 4; ++n) {
            VerificationReport s = verify_rr_sandwich(D(C, std::to_string(n) + "*" + base));
            CAPTURE(s.divisor);
            CHECK(s.ratio->contains(Rational(1)));
            CHECK(s.verdict == Verdict::Holds);
        }

    for (const char* lit : {"nf:x", "nf:x^2+1"}) {
        GlobalField K = F(lit);
        for (const char* a : {"0", "0.5", "1", "2", "3"}) {
            VerificationReport s = verify_rr_sandwich(D(K, std::string(a) + "*inf"));
            CAPTURE(lit);
            CAPTURE(a);
            CHECK(s.verdict == Verdict::Holds);
            CHECK(s.verdict_theorem.has_value());
            CHECK(s.c_theorem.has_value());
        }
    }
}

TEST_CASE("rr2: i(D) tends to 1") {
    GlobalField Qf = F("nf:x");
    std::vector<Divisor> sweep;
    for (long a = 1; a <= 10; ++a) sweep.push_back(D(Qf, std::to_string(a) + "*inf"));
    AsymptoticResult res = verify_rr_asymptotic(sweep, Rational(1, 20));
    CHECK(res.verdict == Verdict::Holds);
    REQUIRE(res.threshold);
    CHECK(cmp(*res.threshold, exp(CertReal::from_integer(3))) != Ordering::Greater);
    CHECK(res.points[0].verdict == Verdict::Fails);
    for (std::size_t k = 2; k < res.points.size(); ++k) CHECK(res.points[k].verdict == Verdict::Holds);
    // The identity holds exactly over Q.
    for (const auto& p : res.points) CHECK(p.note.empty());

    GlobalField G = F("nf:x^2+1");
    for (const char* a : {"3.2", "3.5", "4"}) {
        VerificationReport p = verify_rr_point(D(G, std::string(a) + "*inf"), Rational(1, 10));
        CAPTURE(a);
        CHECK(p.verdict == Verdict::Holds);
        CHECK(cmp(*p.deg, CertReal::from_integer(500)) == Ordering::Greater);
        CHECK(*p.h0 == gauss_count(std::exp(2 * std::stod(a))));
        // (h0/i) sqrt(deg w)/deg D = pi here, half of B.
        CHECK(p.ratio->overlaps(CertReal::pi()));
        CHECK(p.note.find("lhs/B = 1/2") != std::string::npos);
    }

    GlobalField K3 = F("ff:3");
    for (int n = 0; n <= 5; ++n) {
        VerificationReport p = verify_rr_point(D(K3, std::to_string(n) + "*inf"), Rational(1, 20));
        CHECK(p.i_value->contains(Rational(1)));
        CHECK(p.i_value->is_exact());
        CHECK(p.verdict == Verdict::Holds);
        CHECK(p.note.empty());
    }
    VerificationReport below = verify_rr_point(D(K3, "-3*inf"), Rational(1, 20));
    CHECK(below.verdict == Verdict::Fails);
    CHECK_THROWS_AS(verify_rr_point(Divisor(Qf), Rational(2)), DomainError);
}

TEST_CASE("Riemann-Hurwitz") {
    struct Case {
        const char *top, *bottom;
    };
    for (Case c : {Case{"nf:x^2+1", "nf:x"}, Case{"nf:x^2+5", "nf:x"}, Case{"nf:x^2-2", "nf:x"},
                   Case{"ff:3:y^2=t^3-t", "ff:3"}, Case{"nf:x^3-2", "nf:x"}, Case{"ff:5:y^2=t^3+t+1", "ff:5"}}) {
        CAPTURE(c.top);
        Extension ext(F(c.top), F(c.bottom));
        VerificationReport r = verify_rh(ext);
        CHECK(r.verdict == Verdict::Holds);
        CHECK(r.margin->is_exact());
        CHECK(r.margin->contains(Rational(0)));
    }
    Extension e(F("nf:x^2-2"), F("nf:x"));
    CHECK(verify_rh(e).note.find("deg R = 8") != std::string::npos);
}

TEST_CASE("Riemann-Hurwitz: independent of the choices") {
    for (const char* lit : {"nf:x^2+1", "nf:x^2-2", "nf:x^2+5"}) {
        Extension ext(F(lit), F("nf:x"));
        for (const char* p0 : {"(2)", "(3)", "(5)"})
            for (int pinf = 0; pinf < static_cast<int>(archimedean_places(ext.top()).size()); ++pinf)
                for (const char* q0 : {"(2)", "(3)"}) {
                    CanonicalChoice top{BasePlace::parse(ext.bottom(), p0), pinf};
                    CanonicalChoice bottom{BasePlace::parse(ext.bottom(), q0), 0};
                    CHECK(verify_rh(ext, top, bottom).verdict == Verdict::Holds);
                }
    }
    Extension ff(F("ff:3:y^2=t^3-t"), F("ff:3"));
    for (const char* p0 : {"inf", "(t)", "(t+1)"}) {
        CanonicalChoice top{BasePlace::parse(ff.bottom(), p0), std::nullopt};
        CHECK(verify_rh(ff, top, {}).verdict == Verdict::Holds);
    }
}

TEST_CASE("report serialisation") {
    VerificationReport r = verify_rr_sandwich(Divisor::parse(F("nf:x^2+1"), "1/2*inf"));
    std::string row = to_csv_row(r);
    CHECK(row.rfind("rr1,nf:x^2+1,", 0) == 0);
    int commas = 0;
    bool quoted = false;
    for (char ch : row) {
        if (ch == '"') quoted = !quoted;
        if (ch == ',' && !quoted) ++commas;
    }
    std::string header = csv_header();
    CHECK(commas == std::count(header.begin(), header.end(), ','));
    CHECK(to_jsonl(r).find("\"verdict\":\"Holds\"") != std::string::npos);
    CHECK(to_table_row(r).find("Holds") != std::string::npos);
}
