#include "gfw/theorems/theorems.hpp"

#include <algorithm>

#include "gfw/error.hpp"

namespace gfw {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

ExpMonomial ball_volume(int n) {
    if (n == 1) return ExpMonomial::from_rational(Rational(2));
    if (n == 2) return ExpMonomial::pi_power(Rational(1));
    throw DomainError("ball_volume: only n = 1 and n = 2 are supported");
}

namespace {

Integer factorial(long n) {
    Integer r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational two_pow(long e) { return gfw::pow(Rational(2), e); }

}  // namespace

ConstantsBundle constants(int s1, int s2) {
    if (s1 < 0 || s2 < 0 || s2 % 2 != 0) throw DomainError("constants: need S1 >= 0 and even S2 >= 0");
    const long s = s1 + s2, r1 = s1, r2 = s2 / 2;
    ConstantsBundle c;
    c.c_theorem = ExpMonomial::from_rational(Rational(gfw::pow(Integer(6), static_cast<unsigned long>(s)) * factorial(s)) *
                                             two_pow(s2 - s1)) *
                  ExpMonomial::pi_power(Rational(-s2));
    ExpMonomial denom = ball_volume(1).pow(Rational(r1)) *
                        (ball_volume(2) * ExpMonomial::from_rational(Rational(2))).pow(Rational(r2));
    c.c_remark = ExpMonomial::from_rational(Rational(factorial(r1 + 2 * r2) * gfw::pow(Integer(6), static_cast<unsigned long>(r1 + 2 * r2))) *
                                            two_pow(2 * r2)) /
                 denom;
    c.b = ExpMonomial::from_rational(two_pow(s1)) *
          (ExpMonomial::from_rational(Rational(2)) * ExpMonomial::pi_power(Rational(1))).pow(Rational(r2));
    return c;
}

std::pair<ExpMonomial, ExpMonomial> constant_C(int s1, int s2) {
    auto c = constants(s1, s2);
    return {c.c_theorem, c.c_remark};
}

ExpMonomial constant_B(int s1, int s2) { return constants(s1, s2).b; }

// ------------------------------------------------------------------- chi

CertReal chi(const Divisor& d, const CanonicalChoice& choice, int prec) {
    if (!d.field().is_number_field()) throw DomainError("chi: characteristic 0 only");
    CertReal half = CertReal::from_rational(Rational(1, 2), prec);
    return degree_value(d).log(prec) - half * degree_value(canonical_divisor(d.field(), choice)).log(prec);
}

namespace {

CertReal determinant(std::vector<std::vector<CertReal>> m, int prec) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    CertReal acc(prec);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<CertReal>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<CertReal> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(std::move(row));
        }
        CertReal term = m[0][j] * determinant(std::move(minor), prec);
        acc = j % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

CertReal chi_from_covolume(const Divisor& d, int prec) {
    const GlobalField& K = d.field();
    if (!K.is_number_field()) throw DomainError("chi: characteristic 0 only");
    const std::size_t n = static_cast<std::size_t>(K.degree());
    FractionalIdeal I = divisor_ideal(d);
    std::vector<std::vector<CertReal>> m;
    CertReal scale(prec);
    for (const auto& P : archimedean_places(K)) {
        std::vector<CertReal> re, im;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> v;
            for (std::size_t i = 0; i < n; ++i) v.push_back(make_rational(I.basis(i, j), I.den));
            CertComplex z = embed(P, PolyQ(RationalField{}, v), prec);
            re.push_back(z.re);
            im.push_back(z.im);
        }
        m.push_back(re);
        if (P.kind == PlaceKind::Complex) m.push_back(im);
        scale += CertReal::from_rational(Rational(P.dimension()), prec) * d.arch_coeff(P).evaluate(P, prec);
    }
    return scale - gfw::log(abs(determinant(m, prec)));
}

// ---------------------------------------------------------------- i(D)

namespace {

/// Exact value with a CertReal fallback.
struct Num {
    std::optional<ExpMonomial> exact;
    CertReal value;
};

// Rational values get a point enclosure.
Num settle(Num n) {
    if (n.exact)
        if (auto q = n.exact->as_rational()) n.value = CertReal::from_rational(*q, n.value.precision());
    return n;
}

Num num_of(const ExpMonomial& e, int prec) { return settle({e, e.evaluate(prec)}); }

std::string show(const Num& n) {
    if (n.exact) {
        if (auto q = n.exact->as_rational()) return gfw::to_string(*q);
        return n.exact->to_string();
    }
    return n.value.midpoint().to_string(12);
}

Ordering compare_num(const Num& a, const Num& b, int prec) {
    if (a.exact && b.exact) return compare(*a.exact, *b.exact, prec, 16 * prec);
    return cmp(a.value, b.value);
}

Num mul(const Num& a, const Num& b) {
    Num r{std::nullopt, a.value * b.value};
    if (a.exact && b.exact) r.exact = *a.exact * *b.exact;
    return settle(r);
}

Num div(const Num& a, const Num& b) {
    Num r{std::nullopt, a.value / b.value};
    if (a.exact && b.exact) r.exact = *a.exact / *b.exact;
    return settle(r);
}

Num degree_num(const Divisor& d, int prec) {
    DegreeValue v = degree_value(d);
    Num r{std::nullopt, v.evaluate(prec)};
    if (v.is_exact()) r.exact = v.exact;
    return settle(r);
}

Num sqrt_num(const Num& a) {
    Num r{std::nullopt, sqrt(a.value)};
    if (a.exact) r.exact = a.exact->sqrt();
    return settle(r);
}

Num integer_num(const Integer& h, int prec) { return num_of(ExpMonomial::from_rational(Rational(h)), prec); }

CertReal hull_of(const Num& a, const Num& b) { return hull(a.value, b.value); }

CertReal min_of(const CertReal& a, const CertReal& b) {
    Ordering o = cmp(a, b);
    if (o == Ordering::Less || o == Ordering::Equal) return a;
    if (o == Ordering::Greater) return b;
    return hull(a, b);
}

std::string describe(const CanonicalChoice& c, const GlobalField& K) {
    std::string p0 = c.p0 ? c.p0->to_string() : (K.is_number_field() ? "2" : "t");
    std::string s = "p0=" + p0;
    if (K.is_number_field()) s += ";pinf=" + std::to_string(c.pinf.value_or(0) + 1);
    return s;
}

struct IParts {
    Num lo, hi;  // i over the h0 range
    Integer count, count_max;
};

IParts i_parts(const Divisor& d, const Divisor& omega, const MultipleSet* h_d, const MultipleSet* h_dual, int prec) {
    const GlobalField& K = d.field();
    if (!K.is_number_field()) {
        return {integer_num(h_dual->h0, prec), integer_num(h_dual->h0_max, prec), h_dual->h0, h_dual->h0_max};
    }
    auto [s1, s2] = s_counts(K);
    // e^{-chi} = sqrt(deg omega') / deg D.
    Num e_minus_chi = div(sqrt_num(degree_num(omega, prec)), degree_num(d, prec));
    Num denom = num_of(ExpMonomial::from_rational(two_pow(s1)) * ExpMonomial::pi_power(Rational(s2, 2)), prec);
    Num factor = div(e_minus_chi, denom);
    return {mul(integer_num(h_d->h0, prec), factor), mul(integer_num(h_d->h0_max, prec), factor), h_d->h0, h_d->h0_max};
}

}  // namespace

IValue i_function(const Divisor& d, const CanonicalChoice& choice, int prec, const H0Options& opt) {
    Divisor omega = canonical_divisor(d.field(), choice);
    std::optional<MultipleSet> hd, hw;
    if (d.field().is_number_field())
        hd = h0_number_field(d, opt);
    else
        hw = h0_function_field(omega - d, opt);
    IParts ip = i_parts(d, omega, hd ? &*hd : nullptr, hw ? &*hw : nullptr, prec);
    IValue out{hull_of(ip.lo, ip.hi), std::nullopt, ip.count, ip.count_max};
    if (ip.count == ip.count_max) out.exact = ip.lo.exact;
    return out;
}

// ----------------------------------------------------------- verification

namespace {

Verdict range_verdict(const Num& lo, const Num& hi, const Num& lower_bound, const Num& upper_bound, int prec) {
    Ordering a = compare_num(lo, lower_bound, prec), b = compare_num(hi, upper_bound, prec);
    bool lo_ok = a == Ordering::Greater || a == Ordering::Equal;
    bool hi_ok = b == Ordering::Less || b == Ordering::Equal;
    if (lo_ok && hi_ok) return Verdict::Holds;
    Ordering c = compare_num(hi, lower_bound, prec), e = compare_num(lo, upper_bound, prec);
    if (c == Ordering::Less || e == Ordering::Greater) return Verdict::Fails;
    return Verdict::Indeterminate;
}

void fill_h0(VerificationReport& r, const MultipleSet& hd, const MultipleSet& hw) {
    r.h0 = hd.h0;
    r.h0_dual = hw.h0;
    if (hd.h0 != hd.h0_max) r.h0_max = hd.h0_max;
    if (hw.h0 != hw.h0_max) r.h0_dual_max = hw.h0_max;
}

}  // namespace

VerificationReport verify_rr_sandwich(const Divisor& d, const CanonicalChoice& choice, int prec, const H0Options& opt) {
    const GlobalField& K = d.field();
    VerificationReport r;
    r.statement = "rr1";
    r.field = K.to_string();
    r.divisor = d.to_string();
    r.choices = describe(choice, K);

    Divisor omega = canonical_divisor(K, choice);
    MultipleSet hd = compute_h0(d, opt), hw = compute_h0(omega - d, opt);
    fill_h0(r, hd, hw);
    Num deg = degree_num(d, prec);
    r.deg = deg.value;
    Num base = div(sqrt_num(degree_num(omega, prec)), deg);
    Num lo = mul(div(integer_num(hd.h0, prec), integer_num(hw.h0_max, prec)), base);
    Num hi = mul(div(integer_num(hd.h0_max, prec), integer_num(hw.h0, prec)), base);
    r.ratio = hull_of(lo, hi);

    auto [s1, s2] = s_counts(K);
    ConstantsBundle cb = constants(s1, s2);
    r.c_theorem = cb.c_theorem.evaluate(prec);
    r.c_remark = cb.c_remark.evaluate(prec);
    r.b = cb.b.evaluate(prec);
    Num cr = num_of(cb.c_remark, prec), ct = num_of(cb.c_theorem, prec);
    Num cr_inv = num_of(cb.c_remark.inverse(), prec), ct_inv = num_of(cb.c_theorem.inverse(), prec);
    r.verdict = range_verdict(lo, hi, cr_inv, cr, prec);
    r.verdict_theorem = range_verdict(lo, hi, ct_inv, ct, prec);
    r.margin = min_of(cr.value - hi.value, lo.value - cr_inv.value);
    if (lo.exact && hi.exact && *lo.exact == *hi.exact) {
        if (*lo.exact == cb.c_remark || *lo.exact == cb.c_remark.inverse()) r.margin = CertReal(prec);
    }
    if (r.h0_max || r.h0_dual_max) r.note = "h0 boundary undecided; ratio is the hull over the h0 range";
    return r;
}

VerificationReport verify_rr_point(const Divisor& d, const Rational& eps, const CanonicalChoice& choice, int prec,
                                   const H0Options& opt) {
    const GlobalField& K = d.field();
    VerificationReport r;
    r.statement = "rr2";
    r.field = K.to_string();
    r.divisor = d.to_string();
    r.choices = describe(choice, K) + ";eps=" + gfw::to_string(eps);

    Divisor omega = canonical_divisor(K, choice);
    MultipleSet hd = compute_h0(d, opt), hw = compute_h0(omega - d, opt);
    fill_h0(r, hd, hw);
    Num deg = degree_num(d, prec);
    r.deg = deg.value;
    IParts ip = i_parts(d, omega, &hd, &hw, prec);
    r.i_value = hull_of(ip.lo, ip.hi);

    auto [s1, s2] = s_counts(K);
    ConstantsBundle cb = constants(s1, s2);
    r.c_theorem = cb.c_theorem.evaluate(prec);
    r.c_remark = cb.c_remark.evaluate(prec);
    r.b = cb.b.evaluate(prec);

    // (h0 / i) sqrt(deg omega') / deg D, compared with B.
    Num base = div(sqrt_num(degree_num(omega, prec)), deg);
    Num lhs = mul(div(integer_num(hd.h0, prec), ip.lo), base);
    r.ratio = lhs.value;
    if (hd.h0 == hd.h0_max && hw.h0 == hw.h0_max) {
        Ordering o = compare_num(lhs, num_of(cb.b, prec), prec);
        if (o != Ordering::Equal) {
            r.note = "identity: lhs/B = " + show(div(lhs, num_of(cb.b, prec)));
        }
    }

    Num one_plus = num_of(ExpMonomial::from_rational(1 + eps), prec);
    Num one_minus = num_of(ExpMonomial::from_rational(1 - eps), prec);
    if (eps >= 1 || eps <= 0) throw DomainError("verify_rr: eps must lie in (0, 1)");
    // Strict: |i - 1| < eps.
    Ordering a = compare_num(ip.lo, one_minus, prec), b = compare_num(ip.hi, one_plus, prec);
    if (a == Ordering::Greater && b == Ordering::Less) {
        r.verdict = Verdict::Holds;
    } else {
        Ordering c = compare_num(ip.hi, one_minus, prec), e = compare_num(ip.lo, one_plus, prec);
        bool out = c == Ordering::Less || c == Ordering::Equal || e == Ordering::Greater || e == Ordering::Equal;
        r.verdict = out ? Verdict::Fails : Verdict::Indeterminate;
    }
    CertReal eps_r = CertReal::from_rational(eps, prec);
    CertReal one = CertReal::from_rational(Rational(1), prec);
    r.margin = min_of(eps_r - (ip.hi.value - one), eps_r - (one - ip.lo.value));
    return r;
}

AsymptoticResult summarize_asymptotic(std::vector<VerificationReport> points) {
    std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return cmp(*a.deg, *b.deg) == Ordering::Less;
    });
    AsymptoticResult out;
    std::size_t tail = points.size();
    while (tail > 0 && points[tail - 1].verdict == Verdict::Holds) --tail;
    if (tail < points.size()) {
        out.verdict = Verdict::Holds;
        out.threshold = points[tail].deg;
    } else if (!points.empty()) {
        out.verdict = points.back().verdict;
    }
    out.points = std::move(points);
    return out;
}

AsymptoticResult verify_rr_asymptotic(const std::vector<Divisor>& sweep, const Rational& eps,
                                      const CanonicalChoice& choice, int prec, const H0Options& opt) {
    std::vector<VerificationReport> pts;
    for (const auto& d : sweep) pts.push_back(verify_rr_point(d, eps, choice, prec, opt));
    return summarize_asymptotic(std::move(pts));
}

VerificationReport verify_rh(const Extension& ext, const CanonicalChoice& choice_top,
                             const CanonicalChoice& choice_bottom, int prec) {
    const GlobalField& L = ext.top();
    const GlobalField& K = ext.bottom();
    VerificationReport r;
    r.statement = "rh";
    r.field = L.to_string() + "/" + K.to_string();
    r.choices = "top:" + describe(choice_top, L) + ";bottom:" + describe(choice_bottom, K);

    Divisor wl = canonical_divisor(L, choice_top), wk = canonical_divisor(K, choice_bottom);
    Divisor R = ramification_divisor(ext);
    r.divisor = R.to_string();
    Num lhs = degree_num(wl, prec);
    Num dk = degree_num(wk, prec), dr = degree_num(R, prec);
    Num rhs{std::nullopt, gfw::pow(dk.value, static_cast<long>(ext.degree())) * dr.value};
    if (dk.exact && dr.exact) rhs.exact = dk.exact->pow(Rational(ext.degree())) * *dr.exact;
    rhs = settle(rhs);
    r.deg = lhs.value;
    r.ratio = div(lhs, rhs).value;
    Ordering o = compare_num(lhs, rhs, prec);
    if (lhs.exact && rhs.exact) {
        r.verdict = o == Ordering::Equal ? Verdict::Holds : Verdict::Fails;
        if (o == Ordering::Equal) r.margin = CertReal(prec);
        else r.margin = lhs.value - rhs.value;
    } else {
        CertReal diff = lhs.value - rhs.value;
        r.margin = diff;
        r.verdict = diff.contains_zero() ? Verdict::Holds : Verdict::Fails;
        r.note = "enclosure check only";
    }
    r.note += (r.note.empty() ? "" : "; ") + std::string("deg w_L = ") + show(lhs) + ", deg w_K = " + show(dk) +
              ", deg R = " + show(dr);
    return r;
}

}  // namespace gfw
