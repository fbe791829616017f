#include "gfw/divisors/divisor.hpp"

#include <cctype>

#include "gfw/error.hpp"
#include "gfw/exactnum/poly_factor.hpp"
#include "gfw/places/expr.hpp"

namespace gfw {

// --------------------------------------------------------------- ArchCoeff

ArchCoeff ArchCoeff::operator-() const { return Rational(-1) * *this; }

ArchCoeff operator+(const ArchCoeff& a, const ArchCoeff& b) {
    ArchCoeff out = a;
    out.lin += b.lin;
    for (const auto& [c, beta] : b.logs) {
        auto it = std::find_if(out.logs.begin(), out.logs.end(), [&](const auto& t) { return t.second == beta; });
        if (it == out.logs.end()) {
            out.logs.emplace_back(c, beta);
        } else {
            it->first += c;
            if (it->first == 0) out.logs.erase(it);
        }
    }
    return out;
}

ArchCoeff operator*(const Rational& s, const ArchCoeff& a) {
    if (s == 0) return {};
    ArchCoeff out;
    out.lin = s * a.lin;
    for (const auto& [c, beta] : a.logs) out.logs.emplace_back(s * c, beta);
    return out;
}

bool operator==(const ArchCoeff& a, const ArchCoeff& b) {
    if (!(a.lin == b.lin) || a.logs.size() != b.logs.size()) return false;
    for (const auto& t : a.logs)
        if (std::find(b.logs.begin(), b.logs.end(), t) == b.logs.end()) return false;
    return true;
}

CertReal ArchCoeff::evaluate(const Place& P, int prec) const {
    CertReal acc = lin.evaluate(prec);
    for (const auto& [c, beta] : logs)
        acc += CertReal::from_rational(c, prec) * gfw::log(embed(P, beta, prec).abs());
    return acc;
}

std::string ArchCoeff::to_string() const {
    if (logs.empty()) return lin.to_string();
    std::string body;
    if (!lin.is_zero()) {
        body = lin.to_string();
        if (body.front() == '(') body = body.substr(1, body.size() - 2);
    }
    for (const auto& [c, beta] : logs) {
        std::string atom = "logabs(" + beta.to_string() + ")";
        std::string term = c == 1 ? atom : (c == -1 ? "-" + atom : gfw::to_string(c) + "*" + atom);
        if (!body.empty() && term.front() != '-') body += "+";
        body += term;
    }
    return "(" + body + ")";
}

// ----------------------------------------------------------------- Divisor

void Divisor::check_place(const Place& P) const {
    if (!(P.field == field_)) throw DomainError("divisor: place belongs to a different field");
}

Integer Divisor::finite_coeff(const Place& P) const {
    auto it = finite_.find(P);
    return it == finite_.end() ? Integer(0) : it->second;
}

ArchCoeff Divisor::arch_coeff(const Place& P) const {
    auto it = arch_.find(P);
    return it == arch_.end() ? ArchCoeff() : it->second;
}

void Divisor::add_finite(const Place& P, const Integer& c) {
    check_place(P);
    if (P.is_archimedean()) throw DomainError("divisor: integer coefficient for an archimedean place");
    if (c == 0) return;
    auto [it, inserted] = finite_.try_emplace(P, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) finite_.erase(it);
    }
}

void Divisor::add_arch(const Place& P, const ArchCoeff& c) {
    check_place(P);
    if (!P.is_archimedean()) throw DomainError("divisor: real coefficient for a finite place");
    if (c.is_zero()) return;
    auto [it, inserted] = arch_.try_emplace(P, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) arch_.erase(it);
    }
}

void Divisor::add(const Place& P, const Rational& c) {
    if (P.is_archimedean()) return add_arch(P, c);
    if (c.get_den() != 1) throw DomainError("divisor: coefficient at a finite place must be an integer");
    add_finite(P, c.get_num());
}

Divisor Divisor::operator-() const { return -1 * *this; }

Divisor operator+(const Divisor& a, const Divisor& b) {
    if (!(a.field_ == b.field_)) throw DomainError("divisor: adding divisors on different fields");
    Divisor out = a;
    for (const auto& [P, c] : b.finite_) out.add_finite(P, c);
    for (const auto& [P, c] : b.arch_) out.add_arch(P, c);
    return out;
}

Divisor operator*(long k, const Divisor& d) {
    Divisor out(d.field_);
    for (const auto& [P, c] : d.finite_) out.add_finite(P, c * k);
    for (const auto& [P, c] : d.arch_) out.add_arch(P, Rational(k) * c);
    return out;
}

bool operator==(const Divisor& a, const Divisor& b) {
    return a.field_ == b.field_ && a.finite_ == b.finite_ && a.arch_ == b.arch_;
}

std::string Divisor::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto append = [&](const std::string& coeff, const std::string& label) {
        std::string term = coeff + "*" + label;
        if (!out.empty() && term.front() != '-') out += "+";
        out += term;
    };
    for (const auto& [P, c] : arch_) append(c.to_string(), P.label());
    for (const auto& [P, c] : finite_) append(gfw::to_string(c), P.label());
    return out;
}

// ----------------------------------------------------------------- parsing

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct CoeffAlgebra {
    using value = ArchCoeff;
    GlobalField field;

    static bool rational(const value& v) { return v.logs.empty() && v.lin.is_rational(); }

    value number(const Rational& q, std::size_t) const { return q; }
    value variable(std::string_view name, std::size_t at) const {
        throw ParseError("unknown name '" + std::string(name) + "' in a coefficient", at);
    }
    value call(std::string_view name, std::string_view inner, std::size_t at) const {
        if (name == "log") {
            value arg = detail::parse_expression(*this, inner);
            if (!rational(arg) || arg.lin.constant_part() <= 0)
                throw ParseError("log() needs a positive rational argument", at);
            return LogLinear::log_of(arg.lin.constant_part());
        }
        if (name == "logabs") {
            if (!field.is_number_field()) throw ParseError("logabs() needs a number field", at);
            FieldElement beta = FieldElement::parse(field, inner);
            if (beta.is_zero()) throw ParseError("logabs(0)", at);
            if (beta.nf_poly().degree() <= 0) return LogLinear::log_of(abs(beta.nf_poly().coeff(0)));
            value v;
            v.logs.emplace_back(Rational(1), beta);
            return v;
        }
        throw ParseError("unknown function '" + std::string(name) + "'", at);
    }
    value add(const value& a, const value& b) const { return a + b; }
    value sub(const value& a, const value& b) const { return a - b; }
    value mul(const value& a, const value& b) const {
        if (rational(a)) return a.lin.constant_part() * b;
        if (rational(b)) return b.lin.constant_part() * a;
        throw ParseError("product of two logarithmic terms", 0);
    }
    value div(const value& a, const value& b, std::size_t at) const {
        if (!rational(b) || b.lin.constant_part() == 0) throw ParseError("division by a non-rational or zero", at);
        return Rational(1 / b.lin.constant_part()) * a;
    }
    value pow(const value& a, long e, std::size_t at) const {
        if (!rational(a)) throw ParseError("power of a logarithmic term", at);
        if (a.lin.constant_part() == 0 && e < 0) throw ParseError("negative power of zero", at);
        return gfw::pow(a.lin.constant_part(), e);
    }
};

struct Term {
    int sign;
    std::string_view text;
    std::size_t offset;
};

std::vector<Term> split_terms(std::string_view s) {
    std::vector<Term> out;
    int depth = 0, sign = 1;
    std::size_t start = 0;
    bool seen = false;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        char c = i < s.size() ? s[i] : '+';
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw ParseError("unbalanced ')'", i);
        bool exponent_sign = c == '-' && i >= 2 && (s[i - 1] == 'e' || s[i - 1] == 'E') &&
                             std::isdigit(static_cast<unsigned char>(s[i - 2]));
        bool caret = c == '-' && i >= 1 && s[i - 1] == '^';
        if (depth == 0 && (c == '+' || c == '-') && !exponent_sign && !caret) {
            std::string_view t = trim(s.substr(start, i - start));
            if (!t.empty()) {
                out.push_back({sign, t, start});
                seen = true;
            } else if (i < s.size() && seen) {
                throw ParseError("empty term", i);
            }
            sign = c == '-' ? -1 : 1;
            start = i + 1;
        }
    }
    if (depth != 0) throw ParseError("unbalanced '('", s.size());
    return out;
}

}  // namespace

Place parse_place(const GlobalField& K, std::string_view label) {
    label = trim(label);
    if (label.substr(0, 3) == "inf") {
        std::vector<Place> ps = K.is_number_field() ? archimedean_places(K) : places_at_infinity(K);
        std::string_view rest = label.substr(3);
        if (rest.empty()) {
            if (ps.size() != 1) throw ParseError("'inf' is ambiguous here; use inf1.." + std::to_string(ps.size()), 0);
            return ps[0];
        }
        for (char c : rest)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad place index", 3);
        std::size_t idx = std::stoul(std::string(rest));
        if (idx < 1 || idx > ps.size())
            throw ParseError("place index out of range (1.." + std::to_string(ps.size()) + ")", 3);
        return ps[idx - 1];
    }
    if (label.size() < 2 || label.front() != '(' || label.back() != ')')
        throw ParseError("expected a place such as (2), (t,1) or inf1", 0);
    std::string_view inner = label.substr(1, label.size() - 2);
    std::size_t comma = inner.rfind(',');
    std::size_t idx = 0;
    if (comma != std::string_view::npos) {
        std::string_view is = trim(inner.substr(comma + 1));
        if (is.empty() || !std::all_of(is.begin(), is.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("bad place index", comma + 2);
        idx = std::stoul(std::string(is));
        inner = inner.substr(0, comma);
    }
    BasePlace b = BasePlace::parse(K, inner);
    std::vector<Place> ps = places_over(K, b);
    if (comma == std::string_view::npos) {
        if (ps.size() != 1)
            throw ParseError("place over " + b.to_string() + " is ambiguous; add an index 1.." + std::to_string(ps.size()), 0);
        return ps[0];
    }
    if (idx < 1 || idx > ps.size())
        throw ParseError("place index out of range (1.." + std::to_string(ps.size()) + ")", comma + 2);
    return ps[idx - 1];
}

Divisor Divisor::parse(const GlobalField& K, std::string_view text) {
    Divisor d(K);
    if (trim(text) == "0") return d;
    auto terms = split_terms(text);
    if (terms.empty()) throw ParseError("empty divisor", 0);
    for (const auto& t : terms) {
        // The place is whatever follows the last top-level '*'.
        int depth = 0;
        std::size_t star = std::string_view::npos;
        for (std::size_t i = 0; i < t.text.size(); ++i) {
            if (t.text[i] == '(') ++depth;
            if (t.text[i] == ')') --depth;
            if (depth == 0 && t.text[i] == '*') star = i;
        }
        std::string_view coeff_text = star == std::string_view::npos ? "1" : t.text.substr(0, star);
        std::string_view place_text = star == std::string_view::npos ? t.text : t.text.substr(star + 1);
        Place P(K);
        try {
            P = parse_place(K, place_text);
        } catch (const ParseError& e) {
            std::size_t off = t.offset + (star == std::string_view::npos ? 0 : star + 1);
            std::string msg = e.what();
            throw ParseError(msg.substr(0, msg.rfind(" at position")), off + e.position());
        }
        ArchCoeff c;
        try {
            c = detail::parse_expression(CoeffAlgebra{K}, coeff_text);
        } catch (const ParseError& e) {
            std::string msg = e.what();
            throw ParseError(msg.substr(0, msg.rfind(" at position")), t.offset + e.position());
        }
        c = Rational(t.sign) * c;
        if (P.is_archimedean()) {
            d.add_arch(P, c);
        } else {
            if (!CoeffAlgebra::rational(c) || c.lin.constant_part().get_den() != 1)
                throw ParseError("coefficient at a finite place must be an integer", t.offset);
            d.add_finite(P, c.lin.constant_part().get_num());
        }
    }
    return d;
}

// ------------------------------------------------------------------ degree

CertReal DegreeValue::evaluate(int prec) const {
    CertReal acc = exact.evaluate(prec);
    for (const auto& f : deferred) acc *= gfw::pow(embed(f.place, f.beta, prec).abs(), f.exponent);
    return acc;
}

CertReal DegreeValue::log(int prec) const {
    auto l = exact.log();
    if (!l) throw DomainError("degree has a pi factor");
    CertReal acc = l->evaluate(prec);
    for (const auto& f : deferred)
        acc += CertReal::from_rational(f.exponent, prec) * gfw::log(embed(f.place, f.beta, prec).abs());
    return acc;
}

DegreeValue degree_value(const Divisor& d) {
    DegreeValue out;
    for (const auto& [P, c] : d.finite()) out.exact = out.exact * ExpMonomial::from_rational(Rational(P.norm())).pow(Rational(c));
    std::vector<DegreeValue::Factor> pending;
    for (const auto& [P, c] : d.arch()) {
        out.exact = out.exact * ExpMonomial::exp_of(Rational(P.dimension()) * c.lin);
        for (const auto& [k, beta] : c.logs) pending.push_back({P, beta, Rational(P.dimension()) * k});
    }
    // prod over all archimedean P of |sigma_P(beta)|^{dim_P k} = |N(beta)|^k.
    const std::size_t n_arch = d.field().is_number_field() ? archimedean_places(d.field()).size() : 0;
    while (!pending.empty()) {
        FieldElement beta = pending.front().beta;
        std::vector<DegreeValue::Factor> same, rest;
        for (auto& f : pending) (f.beta == beta ? same : rest).push_back(f);
        bool uniform = same.size() == n_arch;
        for (auto& f : same)
            if (f.exponent / f.place.dimension() != same.front().exponent / same.front().place.dimension())
                uniform = false;
        if (uniform) {
            Rational k = same.front().exponent / same.front().place.dimension();
            out.exact = out.exact * ExpMonomial::from_rational(abs(beta.norm())).pow(k);
        } else {
            out.deferred.insert(out.deferred.end(), same.begin(), same.end());
        }
        pending = std::move(rest);
    }
    return out;
}

CertReal degree(const Divisor& d, int prec) { return degree_value(d).evaluate(prec); }

std::optional<bool> divisor_leq(const Divisor& a, const Divisor& b, int prec) {
    Divisor diff = b - a;
    for (const auto& [P, c] : diff.finite())
        if (c < 0) return false;
    bool unknown = false;
    for (const auto& [P, c] : diff.arch()) {
        if (c.is_exact()) {
            Ordering o = compare(ExpMonomial::exp_of(c.lin), ExpMonomial(), prec);
            if (o == Ordering::Less) return false;
            if (o == Ordering::Indeterminate) unknown = true;
        } else {
            CertReal v = c.evaluate(P, prec);
            if (v.is_negative()) return false;
            if (!v.is_positive()) unknown = true;
        }
    }
    if (unknown) return std::nullopt;
    return true;
}

// -------------------------------------------------------- special divisors

Divisor principal_divisor(const FieldElement& a) {
    if (a.is_zero()) throw DomainError("principal divisor of zero");
    const GlobalField& K = a.field();
    Divisor d(K);
    for (const auto& [P, v] : finite_divisor(a)) d.add_finite(P, -v);
    if (!K.is_number_field()) return d;
    auto arch = archimedean_places(K);
    for (const auto& P : arch) {
        ArchCoeff c;
        if (a.nf_poly().degree() <= 0) {
            c = LogLinear::log_of(abs(a.nf_poly().coeff(0)));
        } else if (arch.size() == 1) {
            c = Rational(1, P.dimension()) * LogLinear::log_of(abs(a.norm()));
        } else {
            c.logs.emplace_back(Rational(1), a);
        }
        d.add_arch(P, c);
    }
    return d;
}

Divisor ramification_divisor(const Extension& ext) {
    const GlobalField& L = ext.top();
    Divisor d(L);
    if (ext.trivial()) return d;
    std::vector<Place> candidates;
    if (L.is_number_field()) {
        for (const auto& [P, v] : finite_divisor(FieldElement::from_poly(L, L.minpoly().derivative())))
            candidates.push_back(P);
        for (const auto& P : archimedean_places(L)) candidates.push_back(P);
    } else if (L.kind() == FieldKind::QuadraticFF) {
        for (const auto& fct : poly_factor_mod_p(L.curve()))
            for (const auto& P : places_above(L, fct.factor)) candidates.push_back(P);
        for (const auto& P : places_at_infinity(L)) candidates.push_back(P);
    }
    for (const auto& Q : candidates) {
        LogLinear r = different_exponent(Q, ext);
        if (r.is_zero()) continue;
        if (Q.is_archimedean())
            d.add_arch(Q, r);
        else
            d.add_finite(Q, r.constant_part().get_num());
    }
    return d;
}

BasePlace BasePlace::parse(const GlobalField& K, std::string_view text) {
    text = trim(text);
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = trim(text.substr(1, text.size() - 2));
    BasePlace b;
    if (K.is_number_field()) {
        if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("expected a rational prime", 0);
        Integer p{std::string(text)};
        if (!is_prime(p)) throw ParseError(std::string(text) + " is not prime", 0);
        b.prime = p;
        return b;
    }
    if (text == "inf") {
        b.infinity = true;
        return b;
    }
    FieldElement e = FieldElement::parse(base_field(K), text);
    if (!e.a().den.is_one()) throw ParseError("expected a polynomial in t", 0);
    const PolyFp& pi = e.a().num;
    if (pi.degree() < 1 || !pi.is_monic() || !is_irreducible(pi))
        throw ParseError(pi.to_string("t") + " is not a monic irreducible polynomial", 0);
    b.poly = pi;
    return b;
}

std::string BasePlace::to_string() const {
    if (prime) return gfw::to_string(*prime);
    if (poly) return poly->to_string("t");
    return "inf";
}

std::vector<Place> places_over(const GlobalField& K, const BasePlace& b) {
    if (K.is_number_field()) {
        if (!b.prime) throw DomainError("base place of a number field must be a prime");
        return places_above(K, *b.prime);
    }
    if (b.infinity) return places_at_infinity(K);
    if (!b.poly) throw DomainError("base place of a function field must be a polynomial or inf");
    return places_above(K, *b.poly);
}

Divisor canonical_divisor(const GlobalField& K, const CanonicalChoice& choice) {
    GlobalField K0 = base_field(K);
    Divisor omega = ramification_divisor(Extension(K, K0));
    BasePlace p0;
    if (choice.p0) {
        p0 = *choice.p0;
    } else if (K.is_number_field()) {
        p0.prime = Integer(2);
    } else {
        p0.poly = PolyFp::x(K.constant_field());
    }
    if (!K.is_number_field() && p0.poly && p0.poly->degree() != 1)
        throw DomainError("canonical divisor: P0 must have N(P0) = q, i.e. degree one");
    LogLinear a_inf;
    for (const auto& P : places_over(K, p0)) {
        omega.add_finite(P, -2 * P.e);
        if (K.is_number_field()) a_inf += Rational(2 * P.e) * P.log_norm();
    }
    if (K.is_number_field()) {
        auto arch = archimedean_places(K);
        int idx = choice.pinf.value_or(0);
        if (idx < 0 || idx >= static_cast<int>(arch.size())) throw DomainError("canonical divisor: Pinf index out of range");
        const Place& Pinf = arch[static_cast<std::size_t>(idx)];
        omega.add_arch(Pinf, Rational(1, Pinf.dimension()) * a_inf);
    }
    return omega;
}

}  // namespace gfw
