#include "gfw/exactnum/complex_roots.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "gfw/error.hpp"

namespace gfw {

CertComplex RootEnclosure::box() const {
    return {CertReal::ball(center_re, radius), CertReal::ball(center_im, radius)};
}

CertComplex evaluate(const PolyQ& f, const CertComplex& z) {
    const int prec = std::max(z.re.precision(), z.im.precision());
    CertComplex acc{CertReal(prec), CertReal(prec)};
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * z;
        acc.re += CertReal::from_rational(f.coeff(i), prec);
    }
    return acc;
}

CertReal evaluate(const PolyQ& f, const CertReal& x) {
    CertReal acc(x.precision());
    for (int i = f.degree(); i >= 0; --i) acc = acc * x + CertReal::from_rational(f.coeff(i), x.precision());
    return acc;
}

namespace {

using cld = std::complex<long double>;

std::vector<cld> aberth(const PolyQ& f) {
    const int n = f.degree();
    std::vector<long double> a(n + 1);
    const Rational lead = f.lead();
    for (int i = 0; i <= n; ++i) a[i] = static_cast<long double>(Rational(f.coeff(i) / lead).get_d());
    long double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::fabs(a[i]));
    // Fujiwara-style radius for the start circle.
    long double radius = 0;
    for (int i = 0; i < n; ++i)
        radius = std::max(radius, std::pow(std::fabs(a[i]), 1.0L / static_cast<long double>(n - i)));
    radius = std::max(radius, 1e-3L);
    std::vector<cld> z(n);
    for (int k = 0; k < n; ++k) {
        long double ang = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
        z[k] = std::polar(radius, ang);
    }
    auto eval = [&](cld x, cld& d) {
        cld p = 1;
        d = 0;
        for (int i = n - 1; i >= 0; --i) {
            d = d * x + p;
            p = p * x + a[i];
        }
        return p;
    };
    for (int iter = 0; iter < 800; ++iter) {
        long double worst = 0;
        for (int k = 0; k < n; ++k) {
            cld d;
            cld p = eval(z[k], d);
            if (p == cld(0)) continue;
            cld ratio = p / d;
            cld sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0L / (z[k] - z[j]);
            cld w = ratio / (1.0L - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
        }
        if (worst < 1e-18L) break;
    }
    return z;
}

struct Approx {
    Mpfr re, im;
    bool real;
};

Mpfr to_mpfr(long double v, int prec) {
    Mpfr m(prec);
    mpfr_set_ld(m.get(), v, MPFR_RNDN);
    return m;
}

CertReal point(const Mpfr& v) { return CertReal::from_bounds(v, v); }

void newton_polish(const PolyQ& f, const PolyQ& df, Approx& z, int prec) {
    for (int iter = 0; iter < 200; ++iter) {
        if (z.real) {
            CertReal x = point(z.re).with_precision(prec);
            CertReal d = evaluate(df, x);
            if (d.contains_zero()) return;
            CertReal step = evaluate(f, x) / d;
            Mpfr s = step.midpoint();
            Mpfr nx(prec);
            mpfr_sub(nx.get(), x.midpoint().get(), s.get(), MPFR_RNDN);
            z.re = nx;
            long scale = mpfr_zero_p(nx.get()) ? 0 : mpfr_get_exp(nx.get());
            if (mpfr_zero_p(s.get()) || mpfr_get_exp(s.get()) < scale - prec + 4) return;
        } else {
            CertComplex w{point(z.re).with_precision(prec), point(z.im).with_precision(prec)};
            CertComplex d = evaluate(df, w);
            if (d.abs2().contains_zero()) return;
            CertComplex step = evaluate(f, w) / d;
            Mpfr sr = step.re.midpoint(), si = step.im.midpoint();
            Mpfr nr(prec), ni(prec);
            mpfr_sub(nr.get(), w.re.midpoint().get(), sr.get(), MPFR_RNDN);
            mpfr_sub(ni.get(), w.im.midpoint().get(), si.get(), MPFR_RNDN);
            z.re = nr;
            z.im = ni;
            long scale = std::max(mpfr_zero_p(nr.get()) ? LONG_MIN / 2 : mpfr_get_exp(nr.get()),
                                  mpfr_zero_p(ni.get()) ? LONG_MIN / 2 : mpfr_get_exp(ni.get()));
            bool small_r = mpfr_zero_p(sr.get()) || mpfr_get_exp(sr.get()) < scale - prec + 4;
            bool small_i = mpfr_zero_p(si.get()) || mpfr_get_exp(si.get()) < scale - prec + 4;
            if (small_r && small_i) return;
        }
    }
}

/// Upper bound on n |f(z)/f'(z)|, or nullopt when f'(z) cannot be
/// separated from zero.
std::optional<Mpfr> newton_radius(const PolyQ& f, const PolyQ& df, const Approx& z, int prec) {
    const int n = f.degree();
    CertReal num(prec), den(prec);
    if (z.real) {
        CertReal x = point(z.re).with_precision(prec);
        num = abs(evaluate(f, x));
        den = abs(evaluate(df, x));
    } else {
        CertComplex w{point(z.re).with_precision(prec), point(z.im).with_precision(prec)};
        num = evaluate(f, w).abs();
        den = evaluate(df, w).abs();
    }
    if (den.contains_zero()) return std::nullopt;
    CertReal r = CertReal::from_integer(n, prec) * num / den;
    Mpfr out(prec);
    mpfr_set(out.get(), r.upper().get(), MPFR_RNDU);
    // A zero radius is legitimate (exact rational root); keep it.
    return out;
}

struct Disc {
    CertReal cr, ci;
    Mpfr r;
};

bool disjoint(const Disc& a, const Disc& b) {
    CertReal dr = a.cr - b.cr, di = a.ci - b.ci;
    CertReal dist2 = sqr(dr) + sqr(di);
    CertReal sum = point(a.r) + point(b.r);
    return cmp(sqr(sum), dist2) == Ordering::Less;
}

}  // namespace

RootSet complex_roots(const PolyQ& f, int precision) {
    if (f.is_zero()) throw DomainError("complex_roots: zero polynomial");
    const PolyQ df = f.derivative();
    if (gcd(f, df).degree() > 0) throw DomainError("complex_roots: polynomial is not squarefree");
    RootSet out;
    out.precision = precision;
    const int n = f.degree();
    if (n <= 0) return out;
    const int real_count = sturm_real_root_count(f);
    if ((n - real_count) % 2 != 0) throw DomainError("complex_roots: inconsistent real root count");

    std::vector<cld> z0 = aberth(f);
    std::sort(z0.begin(), z0.end(), [](cld a, cld b) { return std::fabs(a.imag()) < std::fabs(b.imag()); });
    std::vector<Approx> approx;
    int wp = precision + 64;
    for (int k = 0; k < real_count; ++k) approx.push_back({to_mpfr(z0[k].real(), wp), Mpfr(wp), true});
    std::vector<cld> rest(z0.begin() + real_count, z0.end());
    std::sort(rest.begin(), rest.end(), [](cld a, cld b) { return a.imag() > b.imag(); });
    for (int k = 0; k < (n - real_count) / 2; ++k)
        approx.push_back({to_mpfr(rest[k].real(), wp), to_mpfr(std::fabs(rest[k].imag()), wp), false});

    for (int attempt = 0; attempt < 6; ++attempt, wp *= 2) {
        std::vector<Disc> discs;
        bool ok = true;
        std::vector<Mpfr> radii;
        for (auto& a : approx) {
            newton_polish(f, df, a, wp);
            if (!a.real && mpfr_sgn(a.im.get()) < 0) mpfr_neg(a.im.get(), a.im.get(), MPFR_RNDN);
            auto r = newton_radius(f, df, a, wp);
            if (!r) {
                ok = false;
                break;
            }
            radii.push_back(*r);
            discs.push_back({point(a.re), point(a.im), *r});
            if (!a.real) {
                Mpfr negim(wp);
                mpfr_neg(negim.get(), a.im.get(), MPFR_RNDN);
                discs.push_back({point(a.re), point(negim), *r});
            }
        }
        for (std::size_t i = 0; ok && i < discs.size(); ++i)
            for (std::size_t j = i + 1; ok && j < discs.size(); ++j) ok = disjoint(discs[i], discs[j]);
        if (!ok) continue;

        for (std::size_t k = 0; k < approx.size(); ++k) {
            RootEnclosure e{approx[k].real, approx[k].re, approx[k].im, radii[k]};
            if (e.real) mpfr_set_zero(e.center_im.get(), 1);
            (e.real ? out.real_roots : out.pairs).push_back(std::move(e));
        }
        std::sort(out.real_roots.begin(), out.real_roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
            return mpfr_cmp(a.center_re.get(), b.center_re.get()) < 0;
        });
        std::sort(out.pairs.begin(), out.pairs.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
            int c = mpfr_cmp(a.center_re.get(), b.center_re.get());
            if (c != 0) return c < 0;
            return mpfr_cmp(a.center_im.get(), b.center_im.get()) < 0;
        });
        return out;
    }
    throw DomainError("complex_roots: could not isolate the roots of " + f.to_string());
}

}  // namespace gfw
