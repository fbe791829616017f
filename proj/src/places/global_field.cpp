#include "gfw/places/global_field.hpp"

#include <cctype>
#include <map>
#include <mutex>

#include "gfw/error.hpp"
#include "gfw/exactnum/poly_factor.hpp"
#include "gfw/places/expr.hpp"

namespace gfw {

struct GlobalField::Impl {
    FieldKind kind;
    PolyQ minpoly;
    Integer disc;
    PrimeField k{2};
    PolyFp curve{PrimeField(2)};
    int genus = 0;
    std::string literal;

    mutable std::mutex mu;
    mutable std::map<int, RootSet> roots;
    mutable std::map<std::tuple<Integer, std::vector<std::uint64_t>, int>, IntMatrix> powers;
};

namespace {

/// Monic integer factor candidates from conjugation-closed sets of roots.
bool has_proper_factor(const PolyQ& f) {
    const int n = f.degree();
    for (int prec = 128; prec <= 2048; prec *= 2) {
        RootSet rs = complex_roots(f, prec);
        const int nr = static_cast<int>(rs.real_roots.size());
        const int np = static_cast<int>(rs.pairs.size());
        if (nr + np > 20) throw UnsupportedError("irreducibility test: degree too large");
        bool ambiguous = false;
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << (nr + np)); ++mask) {
            int size = 0;
            for (int i = 0; i < nr + np; ++i)
                if (mask >> i & 1) size += i < nr ? 1 : 2;
            if (size > n / 2) continue;
            // prod (x - r) over the chosen roots, coefficients low to high.
            std::vector<CertComplex> c{CertComplex::from_real(CertReal::from_integer(1, prec))};
            auto mul_linear = [&](const CertComplex& r) {
                std::vector<CertComplex> out(c.size() + 1,
                                             CertComplex::from_real(CertReal::from_integer(0, prec)));
                for (std::size_t j = 0; j < c.size(); ++j) {
                    out[j + 1] = out[j + 1] + c[j];
                    out[j] = out[j] - c[j] * r;
                }
                c = std::move(out);
            };
            for (int i = 0; i < nr + np; ++i) {
                if (!(mask >> i & 1)) continue;
                if (i < nr) {
                    mul_linear(rs.real_roots[i].box());
                } else {
                    mul_linear(rs.pairs[i - nr].box());
                    mul_linear(rs.pairs[i - nr].conj_box());
                }
            }
            std::vector<Rational> coeffs;
            bool integral = true;
            for (auto& z : c) {
                Mpfr mid = z.re.midpoint();
                Integer rounded;
                mpfr_get_z(rounded.get_mpz_t(), mid.get(), MPFR_RNDN);
                if (!z.re.contains(Rational(rounded))) {
                    integral = false;
                    break;
                }
                if (z.re.contains(Rational(rounded + 1)) || z.re.contains(Rational(rounded - 1)))
                    ambiguous = true;
                coeffs.emplace_back(rounded);
            }
            if (!integral) continue;
            PolyQ g(RationalField{}, coeffs);
            if ((f % g).is_zero()) return true;
        }
        if (!ambiguous) return false;
    }
    throw UnsupportedError("irreducibility test did not converge for " + f.to_string());
}

/// Dedekind's criterion: Z[theta] is p-maximal.
bool p_maximal(const PolyQ& f, const Integer& p) {
    PrimeField k(p.get_ui());
    PolyFp fb = reduce_mod(f, k);
    auto fs = poly_factor_mod_p(fb);
    PolyQ g = PolyQ::constant(RationalField{}, 1), h = g;
    for (auto& [gi, ei] : fs) {
        PolyQ li = lift(gi);
        g *= li;
        for (int j = 1; j < ei; ++j) h *= li;
    }
    PolyQ big_f = g * h - f;
    std::vector<Rational> c;
    for (auto& x : big_f.coeffs()) c.push_back(x / Rational(p));
    PolyFp fbar = reduce_mod(PolyQ(RationalField{}, c), k);
    for (auto& [gi, ei] : fs)
        if (ei >= 2 && (fbar % gi).is_zero()) return false;
    return true;
}

PolyQ reduce_nf(const PolyQ& a, const PolyQ& f) { return a % f; }

struct PolyQAlgebra {
    using value = PolyQ;
    std::string var;
    value number(const Rational& q, std::size_t) const { return PolyQ::constant(RationalField{}, q); }
    value variable(std::string_view name, std::size_t at) const {
        if (name != var && !(var == "x" && name == "theta"))
            throw ParseError("unknown variable '" + std::string(name) + "'", at);
        return PolyQ::x(RationalField{});
    }
    value add(const value& a, const value& b) const { return a + b; }
    value sub(const value& a, const value& b) const { return a - b; }
    value mul(const value& a, const value& b) const { return a * b; }
    value div(const value& a, const value& b, std::size_t at) const {
        if (b.degree() != 0) throw ParseError("division by a non-constant polynomial", at);
        return a.scaled(1 / b.coeff(0));
    }
    value pow(const value& a, long e, std::size_t at) const {
        if (e < 0) throw ParseError("negative exponent in a polynomial", at);
        return poly_pow(a, static_cast<unsigned>(e));
    }
};

struct PolyFpAlgebra {
    using value = PolyFp;
    PrimeField k;
    value number(const Rational& q, std::size_t at) const {
        if (Integer(q.get_den()) % Integer(static_cast<unsigned long>(k.characteristic())) == 0)
            throw ParseError("coefficient has a denominator divisible by p", at);
        return PolyFp::constant(k, k.from_rational(q));
    }
    value variable(std::string_view name, std::size_t at) const {
        if (name != "t") throw ParseError("unknown variable '" + std::string(name) + "'", at);
        return PolyFp::x(k);
    }
    value add(const value& a, const value& b) const { return a + b; }
    value sub(const value& a, const value& b) const { return a - b; }
    value mul(const value& a, const value& b) const { return a * b; }
    value div(const value& a, const value& b, std::size_t at) const {
        if (b.degree() != 0) throw ParseError("division by a non-constant polynomial", at);
        return a.scaled(k.inv(b.coeff(0)));
    }
    value pow(const value& a, long e, std::size_t at) const {
        if (e < 0) throw ParseError("negative exponent in a polynomial", at);
        return poly_pow(a, static_cast<unsigned>(e));
    }
};

struct ElementAlgebra {
    using value = FieldElement;
    GlobalField field;
    value number(const Rational& q, std::size_t at) const {
        if (!field.is_number_field() &&
            Integer(q.get_den()) % Integer(static_cast<unsigned long>(field.characteristic())) == 0)
            throw ParseError("coefficient has a denominator divisible by p", at);
        return FieldElement::from_rational(field, q);
    }
    value variable(std::string_view name, std::size_t at) const {
        if (field.is_number_field() && (name == "x" || name == "theta")) return FieldElement::generator(field);
        if (!field.is_number_field() && name == "t") return FieldElement::generator(field);
        if (field.kind() == FieldKind::QuadraticFF && name == "y") return FieldElement::y(field);
        throw ParseError("unknown variable '" + std::string(name) + "'", at);
    }
    value add(const value& a, const value& b) const { return a + b; }
    value sub(const value& a, const value& b) const { return a - b; }
    value mul(const value& a, const value& b) const { return a * b; }
    value div(const value& a, const value& b, std::size_t at) const {
        if (b.is_zero()) throw ParseError("division by zero", at);
        return a / b;
    }
    value pow(const value& a, long e, std::size_t at) const {
        if (e < 0 && a.is_zero()) throw ParseError("negative power of zero", at);
        return a.pow(e);
    }
};

std::uint64_t parse_prime(std::string_view s, std::size_t offset) {
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 0) throw ParseError("expected a prime", offset);
    if (i > 18) throw ParseError("prime too large", offset);
    std::uint64_t p = std::stoull(std::string(s.substr(0, i)));
    if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime", offset);
    if (i != s.size() && s[i] != ':') throw ParseError("unexpected character after the prime", offset + i);
    return p;
}

template <class Alg>
auto parse_with_offset(const Alg& alg, std::string_view text, std::size_t offset) {
    try {
        return detail::parse_expression(alg, text);
    } catch (const ParseError& e) {
        std::string msg = e.what();
        msg = msg.substr(0, msg.rfind(" at position"));
        throw ParseError(msg, e.position() + offset);
    }
}

}  // namespace

GlobalField GlobalField::number_field(const PolyQ& f) {
    if (f.degree() < 1) throw DomainError("number field: minimal polynomial must have positive degree");
    if (!f.is_monic() || !has_integer_coeffs(f))
        throw DomainError("number field: minimal polynomial must be monic with integer coefficients");
    if (gcd(f, f.derivative()).degree() > 0 || has_proper_factor(f))
        throw DomainError("number field: " + f.to_string() + " is reducible over Q");
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::NumberField;
    impl->minpoly = f;
    impl->disc = gfw::discriminant(f).get_num();
    impl->literal = "nf:" + f.to_string("x");
    for (auto& [p, e] : factor_integer(impl->disc)) {
        if (e < 2) continue;
        if (!p.fits_ulong_p() || !p_maximal(f, p))
            throw UnsupportedError("number field: Z[theta] is not the maximal order at p = " + gfw::to_string(p) +
                                   " (Dedekind's criterion fails); only monogenic fields are supported");
    }
    return GlobalField(impl);
}

GlobalField GlobalField::rational_function_field(std::uint64_t p) {
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::RationalFF;
    impl->k = PrimeField(p);
    impl->curve = PolyFp(impl->k);
    impl->literal = "ff:" + std::to_string(p);
    return GlobalField(impl);
}

GlobalField GlobalField::quadratic_function_field(std::uint64_t p, const PolyFp& f) {
    if (p == 2)
        throw UnsupportedError("quadratic function field: characteristic 2 gives wild ramification, not supported");
    PrimeField k(p);
    if (!(f.field() == k)) throw DomainError("quadratic function field: curve polynomial over the wrong field");
    if (f.degree() < 1 || f.degree() > 3)
        throw DomainError("quadratic function field: need 1 <= deg f <= 3, got degree " + std::to_string(f.degree()));
    if (gcd(f, f.derivative()).degree() > 0)
        throw DomainError("quadratic function field: " + f.to_string("t") + " is not squarefree");
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::QuadraticFF;
    impl->k = k;
    impl->curve = f;
    impl->genus = (f.degree() - 1) / 2;
    impl->literal = "ff:" + std::to_string(p) + ":y^2=" + f.to_string("t");
    return GlobalField(impl);
}

GlobalField GlobalField::parse(std::string_view lit) {
    if (lit.substr(0, 3) == "nf:") {
        PolyQ f = parse_with_offset(PolyQAlgebra{"x"}, lit.substr(3), 3);
        return number_field(f);
    }
    if (lit.substr(0, 3) == "ff:") {
        std::string_view rest = lit.substr(3);
        std::uint64_t p = parse_prime(rest, 3);
        std::size_t colon = rest.find(':');
        if (colon == std::string_view::npos) return rational_function_field(p);
        std::string_view model = rest.substr(colon + 1);
        std::size_t offset = 3 + colon + 1;
        std::string compact;
        std::size_t eq = model.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'y^2=<poly in t>'", offset);
        for (char c : model.substr(0, eq))
            if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
        if (compact != "y^2") throw ParseError("expected 'y^2=' on the left", offset);
        PolyFp f = parse_with_offset(PolyFpAlgebra{PrimeField(p)}, model.substr(eq + 1), offset + eq + 1);
        return quadratic_function_field(p, f);
    }
    throw ParseError("field literal must start with 'nf:' or 'ff:'", 0);
}

FieldKind GlobalField::kind() const noexcept { return impl_->kind; }
std::uint64_t GlobalField::characteristic() const noexcept {
    return impl_->kind == FieldKind::NumberField ? 0 : impl_->k.characteristic();
}
int GlobalField::degree() const noexcept {
    switch (impl_->kind) {
        case FieldKind::NumberField: return impl_->minpoly.degree();
        case FieldKind::RationalFF: return 1;
        default: return 2;
    }
}

const PolyQ& GlobalField::minpoly() const {
    if (!is_number_field()) throw DomainError("minpoly: not a number field");
    return impl_->minpoly;
}
const Integer& GlobalField::discriminant() const {
    if (!is_number_field()) throw DomainError("discriminant: not a number field");
    return impl_->disc;
}
const PrimeField& GlobalField::constant_field() const {
    if (is_number_field()) throw DomainError("constant field: not a function field");
    return impl_->k;
}
const PolyFp& GlobalField::curve() const {
    if (kind() != FieldKind::QuadraticFF) throw DomainError("curve: not a quadratic function field");
    return impl_->curve;
}
int GlobalField::genus() const {
    if (is_number_field()) throw DomainError("genus: not a function field");
    return impl_->genus;
}

const RootSet& GlobalField::roots(int precision) const {
    const PolyQ& f = minpoly();
    std::lock_guard lock(impl_->mu);
    auto it = impl_->roots.lower_bound(precision);
    if (it != impl_->roots.end()) return it->second;
    return impl_->roots.emplace(precision, complex_roots(f, precision)).first->second;
}

namespace {

PolyQ column_poly(const IntMatrix& m, std::size_t j) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < m.rows(); ++i) c.emplace_back(m(i, j));
    return PolyQ(RationalField{}, c);
}

void put_column(IntMatrix& gens, std::size_t j, const PolyQ& a) {
    for (std::size_t i = 0; i < gens.rows(); ++i) gens(i, j) = a.coeff(static_cast<int>(i)).get_num();
}

}  // namespace

IntMatrix GlobalField::prime_power(const Integer& p, const PolyFp& g, int k) const {
    const PolyQ& f = minpoly();
    const std::size_t n = static_cast<std::size_t>(f.degree());
    if (k < 0) throw DomainError("prime_power: negative exponent");
    if (k == 0) return IntMatrix::identity(n);
    auto key = std::make_tuple(p, g.coeffs(), k);
    {
        std::lock_guard lock(impl_->mu);
        auto it = impl_->powers.find(key);
        if (it != impl_->powers.end()) return it->second;
    }
    IntMatrix prev = prime_power(p, g, k - 1);
    PolyQ gl = reduce_nf(lift(g), f);
    IntMatrix gens(n, 2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        PolyQ b = column_poly(prev, j);
        put_column(gens, j, b.scaled(Rational(p)));
        put_column(gens, n + j, reduce_nf(b * gl, f));
    }
    IntMatrix h = lattice_basis(gens);
    std::lock_guard lock(impl_->mu);
    impl_->powers.emplace(key, h);
    return h;
}

std::string GlobalField::to_string() const { return impl_->literal; }

bool operator==(const GlobalField& a, const GlobalField& b) {
    return a.impl_ == b.impl_ || a.impl_->literal == b.impl_->literal;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(PolyFp n, PolyFp d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) {
        den = PolyFp::constant(den.field(), 1);
        return;
    }
    PolyFp g = gcd(num, den);
    num = num / g;
    den = den / g;
    auto li = den.field().inv(den.lead());
    num = num.scaled(li);
    den = den.scaled(li);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("division by zero in F_p(t)");
    return {a.num * b.den, a.den * b.num};
}

std::string RatFunc::to_string(const std::string& var) const {
    std::string n = num.to_string(var);
    if (den.is_one()) return n;
    return "(" + n + ")/(" + den.to_string(var) + ")";
}

// ----------------------------------------------------------- FieldElement

namespace {

const PrimeField& ff_or_dummy(const GlobalField& field) {
    static const PrimeField dummy(2);
    return field.is_number_field() ? dummy : field.constant_field();
}

void same_field(const FieldElement& x, const FieldElement& z) {
    if (!(x.field() == z.field())) throw DomainError("mixing elements of different fields");
}

}  // namespace

FieldElement::FieldElement(GlobalField field)
    : field_(std::move(field)), a_(ff_or_dummy(field_)), b_(ff_or_dummy(field_)) {}

FieldElement FieldElement::from_rational(const GlobalField& field, const Rational& q) {
    FieldElement out(field);
    if (field.is_number_field()) {
        out.nf_ = PolyQ::constant(RationalField{}, q);
    } else {
        const PrimeField& k = field.constant_field();
        out.a_ = RatFunc(PolyFp::constant(k, k.from_rational(q)));
    }
    return out;
}

FieldElement FieldElement::from_poly(const GlobalField& field, const PolyQ& a) {
    FieldElement out(field);
    std::vector<Rational> c = a.coeffs();
    for (auto& x : c) x.canonicalize();
    out.nf_ = reduce_nf(PolyQ(RationalField{}, c), field.minpoly());
    return out;
}

FieldElement FieldElement::from_parts(const GlobalField& field, RatFunc a, RatFunc b) {
    if (field.is_number_field()) throw DomainError("from_parts: not a function field");
    if (field.kind() == FieldKind::RationalFF && !b.is_zero())
        throw DomainError("from_parts: F_p(t) has no y component");
    FieldElement out(field);
    out.a_ = std::move(a);
    out.b_ = std::move(b);
    return out;
}

FieldElement FieldElement::generator(const GlobalField& field) {
    if (field.is_number_field()) return from_poly(field, PolyQ::x(RationalField{}));
    return from_parts(field, RatFunc(PolyFp::x(field.constant_field())), RatFunc(field.constant_field()));
}

FieldElement FieldElement::y(const GlobalField& field) {
    const PrimeField& k = field.constant_field();
    return from_parts(field, RatFunc(k), RatFunc(PolyFp::constant(k, 1)));
}

FieldElement FieldElement::parse(const GlobalField& field, std::string_view text) {
    return detail::parse_expression(ElementAlgebra{field}, text);
}

bool FieldElement::is_zero() const {
    return field_.is_number_field() ? nf_.is_zero() : (a_.is_zero() && b_.is_zero());
}

bool FieldElement::is_one() const {
    return field_.is_number_field() ? nf_.is_one() : (b_.is_zero() && a_.den.is_one() && a_.num.is_one());
}

Rational FieldElement::norm() const {
    const PolyQ& f = field_.minpoly();
    if (nf_.is_zero()) return 0;
    return resultant(f, nf_);
}

RatFunc FieldElement::ff_norm() const {
    if (field_.kind() == FieldKind::RationalFF) return a_;
    RatFunc f(field_.curve());
    return a_ * a_ - b_ * b_ * f;
}

FieldElement FieldElement::operator-() const {
    FieldElement out = *this;
    out.nf_ = -nf_;
    out.a_ = -a_;
    out.b_ = -b_;
    return out;
}

FieldElement operator+(const FieldElement& x, const FieldElement& z) {
    same_field(x, z);
    FieldElement out = x;
    if (x.field_.is_number_field()) {
        out.nf_ = x.nf_ + z.nf_;
    } else {
        out.a_ = x.a_ + z.a_;
        out.b_ = x.b_ + z.b_;
    }
    return out;
}

FieldElement operator-(const FieldElement& x, const FieldElement& z) { return x + (-z); }

FieldElement operator*(const FieldElement& x, const FieldElement& z) {
    same_field(x, z);
    FieldElement out = x;
    if (x.field_.is_number_field()) {
        out.nf_ = reduce_nf(x.nf_ * z.nf_, x.field_.minpoly());
    } else if (x.field_.kind() == FieldKind::RationalFF) {
        out.a_ = x.a_ * z.a_;
    } else {
        RatFunc f(x.field_.curve());
        out.a_ = x.a_ * z.a_ + x.b_ * z.b_ * f;
        out.b_ = x.a_ * z.b_ + x.b_ * z.a_;
    }
    return out;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    FieldElement out = *this;
    if (field_.is_number_field()) {
        const PolyQ& f = field_.minpoly();
        if (f.degree() == 1) {
            out.nf_ = PolyQ::constant(RationalField{}, 1 / nf_.coeff(0));
        } else {
            auto [g, s, t] = ext_gcd(nf_, f);
            out.nf_ = reduce_nf(s, f);
        }
    } else if (field_.kind() == FieldKind::RationalFF) {
        out.a_ = RatFunc(a_.den, a_.num);
    } else {
        RatFunc n = ff_norm();
        out.a_ = a_ / n;
        out.b_ = -b_ / n;
    }
    return out;
}

FieldElement operator/(const FieldElement& x, const FieldElement& z) {
    same_field(x, z);
    if (z.is_zero()) throw DomainError("division by zero");
    return x * z.inverse();
}

FieldElement FieldElement::pow(long e) const {
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    FieldElement r = from_rational(field_, 1);
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

bool operator==(const FieldElement& x, const FieldElement& z) {
    if (!(x.field_ == z.field_)) return false;
    if (x.field_.is_number_field()) return x.nf_ == z.nf_;
    return x.a_ == z.a_ && x.b_ == z.b_;
}

std::string FieldElement::to_string() const {
    if (field_.is_number_field()) return nf_.to_string("x");
    auto wrap = [](const RatFunc& r) {
        std::string s = r.to_string("t");
        bool simple = s.find_first_of("+-", 1) == std::string::npos && s.find('/') == std::string::npos;
        return simple ? s : "(" + s + ")";
    };
    if (b_.is_zero()) return a_.to_string("t");
    std::string out;
    if (!a_.is_zero()) out = a_.to_string("t") + "+";
    std::string bs = wrap(b_);
    return out + (bs == "1" ? "y" : bs + "*y");
}

IntegralForm integral_form(const FieldElement& a) {
    const GlobalField& K = a.field();
    const int n = K.degree();
    IntegralForm out;
    out.denominator = common_denominator(a.nf_poly());
    for (int i = 0; i < n; ++i) out.coords.push_back(Rational(a.nf_poly().coeff(i) * out.denominator).get_num());
    return out;
}

}  // namespace gfw
