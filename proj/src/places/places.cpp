#include "gfw/places/places.hpp"

#include <algorithm>
#include <set>

#include "gfw/error.hpp"
#include "gfw/exactnum/poly_factor.hpp"

namespace gfw {

namespace {

int kind_rank(const Place& P) {
    if (P.kind == PlaceKind::Real) return 0;
    if (P.kind == PlaceKind::Complex) return 1;
    return 2;
}

PolyFp one_poly(const PrimeField& k) { return PolyFp::constant(k, 1); }

void require_function_field(const GlobalField& K, const char* what) {
    if (K.is_number_field()) throw DomainError(std::string(what) + ": not a function field");
}

/// Places of the model w^2 = F over the zero of pi.
std::vector<Place> quadratic_places(const GlobalField& K, const PolyFp& F, const PolyFp& pi, bool at_infinity) {
    Place proto(K);
    proto.at_infinity = at_infinity;
    if (!at_infinity) proto.base = pi;
    proto.base_degree = pi.degree();
    PolyFp r = F % pi;
    std::vector<Place> out;
    if (r.is_zero()) {
        proto.e = 2;
        out.push_back(proto);
    } else if (auto s = sqrt_mod(r, pi)) {
        proto.siblings = 2;
        Place a = proto, b = proto;
        a.local_factor = *s;
        b.index = 1;
        b.local_factor = (-*s) % pi;
        out = {a, b};
    } else {
        proto.f = 2;
        out.push_back(proto);
    }
    return out;
}

PolyFp infinity_model(const GlobalField& K, int& m) {
    const PolyFp& f = K.curve();
    m = (f.degree() + 1) / 2;
    return f.reversed(2 * m);
}

}  // namespace

Integer Place::norm() const {
    if (is_archimedean()) throw DomainError("norm: archimedean place has no residue field");
    if (field.is_number_field()) return gfw::pow(prime, static_cast<unsigned long>(f));
    return gfw::pow(Integer(static_cast<unsigned long>(field.characteristic())),
                    static_cast<unsigned long>(f * base_degree));
}

LogLinear Place::log_norm() const {
    if (kind == PlaceKind::Real) return Rational(1);
    if (kind == PlaceKind::Complex) return Rational(2);
    return LogLinear::log_of(Rational(norm()));
}

std::string Place::label() const {
    std::string suffix = siblings > 1 ? "," + std::to_string(index + 1) : "";
    if (is_archimedean()) return "inf" + std::to_string(index + 1);
    if (field.is_number_field()) return "(" + gfw::to_string(prime) + suffix + ")";
    if (at_infinity) return siblings > 1 ? "inf" + std::to_string(index + 1) : "inf";
    return "(" + base.to_string("t") + suffix + ")";
}

std::string Place::describe() const {
    if (kind == PlaceKind::Real) return label() + " real";
    if (kind == PlaceKind::Complex) return label() + " complex";
    std::string s = label() + " e=" + std::to_string(e) + " f=" + std::to_string(f) + " N=" + gfw::to_string(norm());
    if (field.is_number_field()) s += " g=" + local_factor.to_string("x");
    return s;
}

bool operator==(const Place& a, const Place& b) {
    return a.kind == b.kind && a.index == b.index && a.prime == b.prime && a.at_infinity == b.at_infinity &&
           a.base == b.base && a.field == b.field;
}

bool operator<(const Place& a, const Place& b) {
    if (kind_rank(a) != kind_rank(b)) return kind_rank(a) < kind_rank(b);
    if (a.is_archimedean()) return a.index < b.index;
    if (a.field.is_number_field()) {
        if (a.prime != b.prime) return a.prime < b.prime;
        return a.index < b.index;
    }
    if (a.at_infinity != b.at_infinity) return b.at_infinity;
    if (!(a.base == b.base)) return canonical_less(a.base, b.base);
    return a.index < b.index;
}

GlobalField base_field(const GlobalField& K) {
    if (K.is_number_field()) return GlobalField::parse("nf:x");
    return GlobalField::rational_function_field(K.characteristic());
}

std::vector<Place> places_above(const GlobalField& K, const Integer& p) {
    if (!K.is_number_field()) throw DomainError("places_above: an integer prime needs a number field");
    if (p < 2 || !is_prime(p)) throw DomainError("places_above: " + gfw::to_string(p) + " is not prime");
    if (!p.fits_ulong_p() || p.get_ui() >= (1ul << 62))
        throw UnsupportedError("places_above: prime too large for the residue field arithmetic");
    PrimeField k(p.get_ui());
    auto fs = poly_factor_mod_p(reduce_mod(K.minpoly(), k));
    std::vector<Place> out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        Place P(K);
        P.prime = p;
        P.index = static_cast<int>(i);
        P.siblings = static_cast<int>(fs.size());
        P.local_factor = fs[i].factor;
        P.e = fs[i].multiplicity;
        P.f = fs[i].factor.degree();
        out.push_back(std::move(P));
    }
    return out;
}

std::vector<Place> places_above(const GlobalField& K, const PolyFp& pi) {
    require_function_field(K, "places_above");
    if (!(pi.field() == K.constant_field())) throw DomainError("places_above: base over the wrong field");
    if (!pi.is_monic() || pi.degree() < 1 || !is_irreducible(pi))
        throw DomainError("places_above: " + pi.to_string("t") + " is not monic irreducible");
    if (K.kind() == FieldKind::RationalFF) {
        Place P(K);
        P.base = pi;
        P.base_degree = pi.degree();
        return {P};
    }
    return quadratic_places(K, K.curve(), pi, false);
}

std::vector<Place> places_at_infinity(const GlobalField& K) {
    require_function_field(K, "places_at_infinity");
    PolyFp s = PolyFp::x(K.constant_field());
    if (K.kind() == FieldKind::RationalFF) {
        Place P(K);
        P.at_infinity = true;
        return {P};
    }
    int m;
    return quadratic_places(K, infinity_model(K, m), s, true);
}

std::vector<Place> archimedean_places(const GlobalField& K) {
    std::vector<Place> out;
    if (!K.is_number_field()) return out;
    const RootSet& rs = K.roots();
    int idx = 0;
    for (std::size_t i = 0; i < rs.real_roots.size(); ++i) {
        Place P(K);
        P.kind = PlaceKind::Real;
        P.index = idx++;
        out.push_back(std::move(P));
    }
    for (std::size_t i = 0; i < rs.pairs.size(); ++i) {
        Place P(K);
        P.kind = PlaceKind::Complex;
        P.index = idx++;
        out.push_back(std::move(P));
    }
    for (auto& P : out) P.siblings = static_cast<int>(out.size());
    return out;
}

std::pair<int, int> s_counts(const GlobalField& K) {
    if (!K.is_number_field()) return {0, 0};
    const RootSet& rs = K.roots();
    return {static_cast<int>(rs.real_roots.size()), 2 * static_cast<int>(rs.pairs.size())};
}

CertReal norm_N(const Place& P, int prec) {
    if (P.kind == PlaceKind::Real) return CertReal::euler_e(prec);
    if (P.kind == PlaceKind::Complex) return sqr(CertReal::euler_e(prec));
    return CertReal::from_integer(P.norm(), prec);
}

// ------------------------------------------------------------ valuations

namespace {

int nf_integral_valuation(const Place& P, const std::vector<Integer>& coords) {
    const GlobalField& K = P.field;
    std::vector<Rational> c(coords.begin(), coords.end());
    PolyQ beta(RationalField{}, c);
    Integer n = resultant(K.minpoly(), beta).get_num();
    if (n == 0) throw DomainError("valuation of zero");
    int bound = valuation(n, P.prime) / P.f;
    int k = 0;
    while (k < bound) {
        IntMatrix h = K.prime_power(P.prime, P.local_factor, k + 1);
        if (!lattice_coordinates(h, coords)) break;
        ++k;
    }
    return k;
}

}  // namespace

PolyForm poly_form(const FieldElement& a) {
    const PrimeField& k = a.field().constant_field();
    PolyFp D = a.a().den;
    if (!a.b().is_zero()) {
        D = D / gcd(D, a.b().den) * a.b().den;
    }
    PolyForm out{a.a().num * (D / a.a().den), a.b().is_zero() ? PolyFp(k) : a.b().num * (D / a.b().den), D};
    return out;
}

LocalModel local_model(const Place& P) {
    require_function_field(P.field, "local_model");
    const PrimeField& k = P.field.constant_field();
    LocalModel lm{LocalType::Rational, PolyFp(k), P.at_infinity ? PolyFp::x(k) : P.base, std::nullopt,
                  P.at_infinity, 0, P.e};
    if (P.field.kind() == FieldKind::RationalFF) return lm;
    lm.F = P.at_infinity ? infinity_model(P.field, lm.m) : P.field.curve();
    if (P.e == 2)
        lm.type = LocalType::Ramified;
    else if (P.f == 2)
        lm.type = LocalType::Inert;
    else {
        lm.type = LocalType::Split;
        lm.root = P.local_factor;
    }
    return lm;
}

PolyFp hensel_sqrt(const PolyFp& F, const PolyFp& pi, const PolyFp& s, int k) {
    PolyFp mod = poly_pow(pi, static_cast<unsigned>(std::max(k, 1)));
    PolyFp Y = s % mod;
    const PrimeField& fld = F.field();
    for (int prec = 1; prec < k; prec *= 2) {
        PolyFp err = (Y * Y - F) % mod;
        PolyFp inv = inv_mod(Y.scaled(fld.from_int(2)), mod);
        Y = (Y - err * inv) % mod;
    }
    return Y;
}

int local_valuation(const LocalModel& lm, const PolyFp& A, const PolyFp& B) {
    if (A.is_zero() && B.is_zero()) throw DomainError("valuation of zero");
    constexpr int kInf = 1 << 29;
    auto v = [&](const PolyFp& a) { return a.is_zero() ? kInf : poly_valuation(a, lm.pi); };
    switch (lm.type) {
        case LocalType::Rational: return v(A);
        case LocalType::Ramified: {
            int va = v(A), vb = v(B);
            return std::min(va == kInf ? kInf : 2 * va, vb == kInf ? kInf : 2 * vb + 1);
        }
        case LocalType::Inert: return std::min(v(A), v(B));
        case LocalType::Split: break;
    }
    int k0 = std::min(v(A), v(B));
    PolyFp pk = poly_pow(lm.pi, static_cast<unsigned>(k0));
    PolyFp a = A / pk, b = B / pk;
    PolyFp n = a * a - b * b * lm.F;
    int m = v(n) + 1;
    PolyFp Y = hensel_sqrt(lm.F, lm.pi, *lm.root, m);
    PolyFp mod = poly_pow(lm.pi, static_cast<unsigned>(m));
    PolyFp r = (a + b * Y) % mod;
    return k0 + (r.is_zero() ? m : poly_valuation(r, lm.pi));
}

std::pair<PolyFp, PolyFp> to_infinity_model(const LocalModel& lm, const PolyFp& A, const PolyFp& B, int n) {
    PolyFp a = A.is_zero() ? A : A.reversed(n);
    PolyFp b = B.is_zero() ? B : B.reversed(n - lm.m);
    return {a, b};
}

int valuation(const Place& P, const FieldElement& a) {
    if (!(P.field == a.field())) throw DomainError("valuation: place and element belong to different fields");
    if (P.is_archimedean()) throw DomainError("valuation: archimedean place");
    if (a.is_zero()) throw DomainError("valuation of zero");
    if (P.field.is_number_field()) {
        IntegralForm fm = integral_form(a);
        return nf_integral_valuation(P, fm.coords) - P.e * valuation(fm.denominator, P.prime);
    }
    PolyForm pf = poly_form(a);
    LocalModel lm = local_model(P);
    if (!P.at_infinity) return local_valuation(lm, pf.A, pf.B) - lm.e * poly_valuation(pf.D, lm.pi);
    int n = std::max(pf.A.degree(), pf.B.is_zero() ? -1 : pf.B.degree() + lm.m);
    auto [Ah, Bh] = to_infinity_model(lm, pf.A, pf.B, n);
    return local_valuation(lm, Ah, Bh) - lm.e * n + lm.e * pf.D.degree();
}

CertComplex embed(const Place& P, const PolyQ& a, int prec) {
    if (!P.is_archimedean()) throw DomainError("embed: finite place");
    const RootSet& rs = P.field.roots(prec);
    const std::size_t nr = rs.real_roots.size();
    auto idx = static_cast<std::size_t>(P.index);
    if (P.kind == PlaceKind::Real) {
        CertReal x = rs.real_roots[idx].box().re.with_precision(prec);
        return CertComplex::from_real(evaluate(a, x));
    }
    CertComplex z = rs.pairs[idx - nr].box();
    z = {z.re.with_precision(prec), z.im.with_precision(prec)};
    return evaluate(a, z);
}

CertComplex embed(const Place& P, const FieldElement& a, int prec) {
    if (!(P.field == a.field())) throw DomainError("embed: place and element belong to different fields");
    return embed(P, a.nf_poly(), prec);
}

CertReal normalized_valuation(const Place& P, const FieldElement& a, int prec) {
    if (a.is_zero()) return CertReal(prec);
    if (P.kind == PlaceKind::Real) return abs(embed(P, a, prec).re);
    if (P.kind == PlaceKind::Complex) return embed(P, a, prec).abs2();
    int v = valuation(P, a);
    return CertReal::from_rational(gfw::pow(Rational(P.norm()), -v), prec);
}

std::vector<std::pair<Place, int>> finite_divisor(const FieldElement& a) {
    if (a.is_zero()) throw DomainError("divisor of zero");
    const GlobalField& K = a.field();
    std::vector<std::pair<Place, int>> out;
    auto consider = [&](const std::vector<Place>& ps) {
        for (const auto& P : ps) {
            int v = valuation(P, a);
            if (v != 0) out.emplace_back(P, v);
        }
    };
    if (K.is_number_field()) {
        IntegralForm fm = integral_form(a);
        std::vector<Rational> c(fm.coords.begin(), fm.coords.end());
        Integer n = resultant(K.minpoly(), PolyQ(RationalField{}, c)).get_num();
        std::set<Integer> primes;
        for (auto& [p, e] : factor_integer(n)) primes.insert(p);
        if (fm.denominator != 1)
            for (auto& [p, e] : factor_integer(fm.denominator)) primes.insert(p);
        for (const auto& p : primes) consider(places_above(K, p));
    } else {
        PolyForm pf = poly_form(a);
        PolyFp n = K.kind() == FieldKind::RationalFF ? pf.A : pf.A * pf.A - pf.B * pf.B * K.curve();
        std::vector<PolyFp> bases;
        for (auto& fct : poly_factor_mod_p(n)) bases.push_back(fct.factor);
        if (pf.D.degree() > 0)
            for (auto& fct : poly_factor_mod_p(pf.D)) bases.push_back(fct.factor);
        std::sort(bases.begin(), bases.end(), [](const PolyFp& x, const PolyFp& z) { return canonical_less(x, z); });
        bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
        for (const auto& b : bases) consider(places_above(K, b));
        consider(places_at_infinity(K));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& z) { return x.first < z.first; });
    return out;
}

CertReal product_formula_defect(const FieldElement& a, int prec) {
    if (a.is_zero()) throw DomainError("product formula: element must be nonzero");
    Rational finite = 1;
    for (const auto& [P, v] : finite_divisor(a)) finite *= gfw::pow(Rational(P.norm()), -v);
    CertReal acc = CertReal::from_rational(finite, prec);
    for (const auto& P : archimedean_places(a.field())) acc *= normalized_valuation(P, a, prec);
    return acc;
}

// ------------------------------------------------------------ extensions

Extension::Extension(GlobalField top, GlobalField bottom) : top_(std::move(top)), bottom_(std::move(bottom)) {
    trivial_ = top_ == bottom_;
    if (trivial_) return;
    bool ok = false;
    if (top_.is_number_field() && bottom_.is_number_field())
        ok = bottom_.degree() == 1;
    else if (!top_.is_number_field() && !bottom_.is_number_field())
        ok = bottom_.kind() == FieldKind::RationalFF && top_.characteristic() == bottom_.characteristic();
    if (!ok)
        throw UnsupportedError("unsupported extension " + top_.to_string() + " over " + bottom_.to_string() +
                               "; supported: a field over Q or F_p(t), or over itself");
}

int ramification_index(const Place& Q, const Extension& ext) {
    if (!(Q.field == ext.top())) throw DomainError("ramification_index: place is not on the top field");
    if (ext.trivial()) return 1;
    if (Q.kind == PlaceKind::Complex) return 2;
    if (Q.kind == PlaceKind::Real) return 1;
    return Q.e;
}

LogLinear different_exponent(const Place& Q, const Extension& ext) {
    int e = ramification_index(Q, ext);
    if (ext.trivial() || e == 1) return Rational(0);
    if (Q.kind == PlaceKind::Complex) return -LogLinear::log_of(Rational(2));  // -log log N(Q), log N(Q) = 2
    if (Q.field.is_number_field())
        return Rational(valuation(Q, FieldElement::from_poly(Q.field, Q.field.minpoly().derivative())));
    const std::uint64_t p = Q.field.characteristic();
    if (static_cast<std::uint64_t>(e) % p == 0)
        throw UnsupportedError("different_exponent: wild ramification (p divides e) is not supported");
    return Rational(e - 1);
}

}  // namespace gfw
