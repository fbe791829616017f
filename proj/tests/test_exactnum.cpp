#include <doctest.h>

#include <random>

#include "gfw/error.hpp"
#include "gfw/exactnum/complex_roots.hpp"
#include "gfw/exactnum/matrix.hpp"
#include "gfw/exactnum/poly_factor.hpp"
#include "gfw/exactnum/symbolic.hpp"

using namespace gfw;

namespace {

PolyFp fp_poly(std::uint64_t p, std::vector<long long> c) {
    PrimeField k(p);
    std::vector<std::uint64_t> v;
    for (auto x : c) v.push_back(k.from_int(x));
    return PolyFp(k, v);
}

PolyQ q_poly(std::vector<long> c) {
    std::vector<Rational> v;
    for (auto x : c) v.emplace_back(x);
    return PolyQ(RationalField{}, v);
}

PolyFp expand(const std::vector<FpFactor>& fs, const PrimeField& k) {
    PolyFp acc = PolyFp::constant(k, 1);
    for (auto& f : fs) acc *= poly_pow(f.factor, f.multiplicity);
    return acc;
}

}  // namespace

TEST_CASE("integers and rationals") {
    CHECK(is_prime(Integer(1000003)));
    CHECK_FALSE(is_prime(Integer(1000001)));
    auto f = factor_integer(Integer("600851475143"));
    REQUIRE(f.size() == 4);
    CHECK(f[3].first == 6857);
    Integer big = Integer("1000000007") * Integer("998244353");
    auto g = factor_integer(big);
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == Integer("998244353"));
    CHECK(valuation(Rational(3, 8), 2) == -3);
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("1e-2") == Rational(1, 100));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("prime field elements") {
    Fp a(7, 3), b(7, 5);
    CHECK((a * b).residue() == 1);
    CHECK((a / b * b) == a);
    CHECK_THROWS_AS(Fp(8, 1), DomainError);
    CHECK_THROWS_AS(Fp(5, 1) + Fp(7, 1), DomainError);
}

TEST_CASE("factoring over F_p: worked examples") {
    auto f5 = poly_factor_mod_p(fp_poly(5, {1, 0, 1}));
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].factor == fp_poly(5, {2, 1}));
    CHECK(f5[1].factor == fp_poly(5, {3, 1}));
    CHECK(f5[0].multiplicity == 1);

    auto f2 = poly_factor_mod_p(fp_poly(2, {1, 0, 1}));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].factor == fp_poly(2, {1, 1}));
    CHECK(f2[0].multiplicity == 2);

    auto f3 = poly_factor_mod_p(fp_poly(3, {0, 1}));
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].factor == fp_poly(3, {0, 1}));

    CHECK_THROWS_AS(poly_factor_mod_p(PolyFp(PrimeField(3))), DomainError);
}

TEST_CASE("factoring over F_p: product reproduces the input") {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 101u}) {
        PrimeField k(p);
        for (int trial = 0; trial < 60; ++trial) {
            int deg = 1 + static_cast<int>(rng() % 6);
            std::vector<std::uint64_t> c(deg + 1);
            for (auto& x : c) x = rng() % p;
            c[deg] = 1;
            PolyFp f(k, c);
            auto fs = poly_factor_mod_p(f);
            CHECK(expand(fs, k) == f);
            for (auto& g : fs) CHECK(is_irreducible(g.factor));
            for (std::size_t i = 1; i < fs.size(); ++i) CHECK(canonical_less(fs[i - 1].factor, fs[i].factor));
        }
    }
}

TEST_CASE("square roots modulo an irreducible") {
    PrimeField k(3);
    PolyFp pi = fp_poly(3, {1, 0, 1});  // t^2+1, F_9
    auto r = sqrt_mod(fp_poly(3, {2}), pi);
    REQUIRE(r);
    CHECK(mul_mod(*r, *r, pi) == fp_poly(3, {2}));
    CHECK(monic_irreducibles(k, 2).size() == 3);
}

TEST_CASE("complex roots: worked examples") {
    auto r2 = complex_roots(q_poly({-2, 0, 1}));
    REQUIRE(r2.real_roots.size() == 2);
    CHECK(r2.pairs.empty());
    CHECK(r2.real_roots[1].center_re.to_double() == doctest::Approx(1.41421356237));
    CHECK(r2.real_roots[0].center_re.to_double() == doctest::Approx(-1.41421356237));

    auto ri = complex_roots(q_poly({1, 0, 1}));
    CHECK(ri.real_roots.empty());
    REQUIRE(ri.pairs.size() == 1);
    CHECK(ri.pairs[0].center_im.to_double() == doctest::Approx(1.0));

    auto r3 = complex_roots(q_poly({-2, 0, 0, 1}));
    REQUIRE(r3.real_roots.size() == 1);
    CHECK(r3.pairs.size() == 1);
    CHECK(r3.real_roots[0].center_re.to_double() == doctest::Approx(1.25992105));

    CHECK_THROWS_AS(complex_roots(q_poly({1, 2, 1})), DomainError);
}

TEST_CASE("complex roots: residual consistent with radius") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int deg = 1 + static_cast<int>(rng() % 6);
        std::vector<long> c(deg + 1);
        for (auto& x : c) x = static_cast<long>(rng() % 21) - 10;
        c[deg] = 1;
        PolyQ f = q_poly(c);
        if (gcd(f, f.derivative()).degree() > 0) continue;
        auto roots = complex_roots(f);
        CHECK(static_cast<int>(roots.size()) == deg);
        PolyQ df = f.derivative();
        auto check = [&](const RootEnclosure& e) {
            CertComplex z{CertReal::from_bounds(e.center_re, e.center_re),
                          CertReal::from_bounds(e.center_im, e.center_im)};
            CertReal fz = evaluate(f, z).abs();
            CertReal dfz = evaluate(df, z).abs();
            // |f(z)| <= r |f'(z)| / n with r the certified radius; allow a
            // generous factor for the bound's slack.
            CertReal bound = CertReal::from_bounds(e.radius, e.radius) * dfz * CertReal::from_integer(4);
            CHECK(cmp(fz, bound) != Ordering::Greater);
            CHECK(e.radius.to_double() < 1e-30);
        };
        for (auto& e : roots.real_roots) check(e);
        for (auto& e : roots.pairs) check(e);
    }
}

TEST_CASE("certified reals: worked examples") {
    CertReal one = CertReal::from_integer(1);
    CertReal l = log(exp(one));
    CHECK(l.contains(Rational(1)));
    CHECK(l.rad_double() <= std::ldexp(1.0, -64));

    CertReal a = CertReal::from_bounds(Rational(9, 10), Rational(11, 10));
    CertReal b = CertReal::from_bounds(Rational(105, 100), Rational(12, 10));
    CHECK(cmp(a, b) == Ordering::Indeterminate);
    CHECK(cmp(a, CertReal::from_integer(2)) == Ordering::Less);

    Rational pi_lo("3141592653589793238462643383279502884197169399375/1000000000000000000000000000000000000000000000000");
    Rational pi_hi = pi_lo + Rational(1, Integer("1000000000000000000000000000000000000000000000000"));
    CertReal pi = CertReal::pi();
    CHECK(pi.overlaps(CertReal::from_bounds(pi_lo, pi_hi)));
    CHECK(pi.rad_double() < 1e-36);

    CHECK_THROWS_AS(log(CertReal::from_bounds(Rational(-1), Rational(1))), DomainError);
    CHECK_THROWS_AS(one / CertReal::from_bounds(Rational(-1), Rational(1)), DomainError);
    CHECK(pow(CertReal::from_integer(2), 10).contains(Rational(1024)));
    CHECK(pow(CertReal::from_integer(4), Rational(1, 2)).contains(Rational(2)));
}

TEST_CASE("certified reals: refinement stays inside the coarse enclosure") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> op(0, 7), val(-50, 50);
    for (int seq = 0; seq < 1000; ++seq) {
        CertReal lo = CertReal::from_rational(Rational(val(rng), 7), 128);
        CertReal hi = CertReal::from_rational(Rational(val(rng), 7), 256);
        hi = CertReal::from_rational(Rational(1, 1), 256) * lo.with_precision(256);
        // Replay the same operations at both precisions.
        std::vector<std::pair<int, Rational>> ops;
        for (int k = 0; k < 8; ++k) ops.emplace_back(op(rng), Rational(val(rng), 3 + (rng() % 5)));
        bool ok = true;
        for (auto& [o, q] : ops) {
            auto apply = [&](const CertReal& x, int prec) -> CertReal {
                CertReal c = CertReal::from_rational(q, prec);
                switch (o) {
                    case 0: return x + c;
                    case 1: return x - c;
                    case 2: return x * c;
                    case 3: return c.contains_zero() ? x : x / c;
                    case 4: return exp(x / CertReal::from_integer(20, prec));
                    case 5: return log(abs(x) + CertReal::from_integer(1, prec));
                    case 6: return sqrt(sqr(x) + CertReal::from_integer(1, prec));
                    default: return pow(x, 2);
                }
            };
            lo = apply(lo, 128);
            hi = apply(hi, 256);
            if (!lo.contains(hi)) ok = false;
        }
        CHECK(ok);
    }
}

TEST_CASE("exact symbolic numbers") {
    LogLinear l2 = LogLinear::log_of(Rational(4));
    CHECK(l2 == Rational(2) * LogLinear::log_of(Rational(2)));
    CHECK(l2.to_string() == "2log(2)");
    CHECK((LogLinear(Rational(1, 2)) - LogLinear::log_of(Rational(3))).to_string() == "(1/2-log(3))");
    auto e = ExpMonomial::exp_of(l2);
    REQUIRE(e.as_rational());
    CHECK(*e.as_rational() == 4);
    CHECK(compare(ExpMonomial::from_rational(2), ExpMonomial::from_rational(8).pow(Rational(1, 3))) ==
          Ordering::Equal);
    CHECK(compare(ExpMonomial::from_rational(3), ExpMonomial::from_rational(8).sqrt()) == Ordering::Greater);
    CHECK(compare(ExpMonomial::exp_of(Rational(1)), ExpMonomial::from_rational(3)) == Ordering::Less);
    CHECK(compare(ExpMonomial::pi_power(1), ExpMonomial::from_rational(3)) == Ordering::Greater);
    CHECK(ExpMonomial::exp_of(Rational(1, 2)).evaluate().contains(
        CertReal::from_bounds(Rational(16487, 10000), Rational(16488, 10000))) == false);
    CHECK(ExpMonomial::exp_of(Rational(1, 2)).evaluate().mid_double() == doctest::Approx(1.6487212707));
}

TEST_CASE("hermite normal form") {
    IntMatrix id = IntMatrix::identity(2);
    CHECK(hnf(id).h == id);
    IntMatrix a{{2, 1}, {0, 1}};
    CHECK(hnf(a).h == a);
    IntMatrix b{{4, 2}, {2, 2}};
    auto r = hnf(b);
    CHECK(r.h(0, 0) * r.h(1, 1) == 4);
    CHECK(r.h(1, 0) == 0);
    CHECK(b * r.transform == r.h);
    CHECK_THROWS_AS(hnf(IntMatrix{{1, 2}, {2, 4}}), DomainError);
}

TEST_CASE("hermite normal form: determinant and span") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 4;
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 41) - 20;
        Integer d = determinant(m);
        if (d == 0) {
            CHECK_THROWS_AS(hnf(m), DomainError);
            continue;
        }
        auto r = hnf(m);
        Integer diag = 1;
        for (std::size_t i = 0; i < n; ++i) {
            diag *= r.h(i, i);
            for (std::size_t j = i + 1; j < n; ++j) {
                CHECK(r.h(i, j) >= 0);
                CHECK(r.h(i, j) < r.h(i, i));
            }
            for (std::size_t j = 0; j < i; ++j) CHECK(r.h(i, j) == 0);
        }
        CHECK(diag == abs(d));
        CHECK(m * r.transform == r.h);
        for (std::size_t j = 0; j < n; ++j) CHECK(lattice_coordinates(r.h, m.column(j)).has_value());
    }
}

TEST_CASE("discriminants and real root counts") {
    CHECK(discriminant(q_poly({1, 0, 1})) == -4);
    CHECK(discriminant(q_poly({-2, 0, 1})) == 8);
    CHECK(discriminant(q_poly({5, 0, 1})) == -20);
    CHECK(discriminant(q_poly({-2, 0, 0, 1})) == -108);
    CHECK(sturm_real_root_count(q_poly({-2, 0, 0, 1})) == 1);
    CHECK(sturm_real_root_count(q_poly({0, -1, 0, 1})) == 3);
}
