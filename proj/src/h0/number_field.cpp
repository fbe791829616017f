#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

#include "gfw/error.hpp"
#include "gfw/h0/h0.hpp"

namespace gfw {

namespace detail {

namespace {

/// e^{2c} at P, i.e. the bound on |sigma_P(a)|^2.
CertReal bound_squared(const Place& P, const ArchCoeff& c, int prec) {
    CertReal r = ExpMonomial::exp_of(Rational(2) * c.lin).evaluate(prec);
    for (const auto& [k, beta] : c.logs) r *= gfw::pow(embed(P, beta, prec).abs2(), k);
    return r;
}

/// Decides |sigma_P(a)|^2 == e^{2c} algebraically when that is possible.
std::optional<bool> boundary_equal(const Place& P, const ArchCoeff& c, const FieldElement& a) {
    // e^{rational} times an algebraic number is transcendental.
    if (c.lin.constant_part() != 0) return false;
    Integer k = 1;
    for (const auto& [p, e] : c.lin.log_terms()) k = lcm(k, Integer(e.get_den()));
    for (const auto& [e, beta] : c.logs) k = lcm(k, Integer(e.get_den()));
    if (k > 32) return std::nullopt;
    const long E = 4 * k.get_si();
    Rational s(1);
    for (const auto& [p, e] : c.lin.log_terms()) s *= gfw::pow(Rational(p), Rational(e * E).get_num().get_si());
    const GlobalField& K = a.field();
    if (P.kind == PlaceKind::Real) {
        FieldElement rhs = FieldElement::from_rational(K, s);
        for (const auto& [e, beta] : c.logs) rhs = rhs * beta.pow(Rational(e * E).get_num().get_si());
        return a.pow(E) == rhs;
    }
    if (K.degree() != 2) return std::nullopt;
    // On an imaginary quadratic field |sigma(x)|^2 = N(x).
    Rational rhs = s;
    for (const auto& [e, beta] : c.logs) rhs *= gfw::pow(beta.norm(), Rational(e * E / 2).get_num().get_si());
    return gfw::pow(a.norm(), E / 2) == rhs;
}

}  // namespace

Membership arch_member(const Place& P, const ArchCoeff& c, const FieldElement& a, int prec, int max_prec) {
    if (a.is_zero()) return Membership::In;
    std::optional<bool> equal;
    bool tried = false;
    for (int pr = prec; pr <= max_prec; pr *= 2) {
        Ordering o = cmp(embed(P, a, pr).abs2(), bound_squared(P, c, pr));
        if (o == Ordering::Less || o == Ordering::Equal) return Membership::In;
        if (o == Ordering::Greater) return Membership::Out;
        if (!tried) {
            tried = true;
            equal = boundary_equal(P, c, a);
            if (equal && *equal) return Membership::In;
        }
    }
    return Membership::Unknown;
}

}  // namespace detail

namespace {

using Vec = std::vector<long double>;

/// Coordinates of a(theta) b(theta) mod f, all integral.
std::vector<Integer> mul_mod(const std::vector<Integer>& a, const std::vector<Integer>& b, const std::vector<Integer>& f) {
    const std::size_t n = f.size() - 1;
    std::vector<Integer> prod(2 * n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
    for (std::size_t d = 2 * n - 1; d >= n; --d) {
        if (prod[d] == 0) continue;
        Integer c = prod[d];
        for (std::size_t i = 0; i <= n; ++i) prod[d - n + i] -= c * f[i];
    }
    prod.resize(n);
    return prod;
}

IntMatrix ideal_product(const IntMatrix& A, const IntMatrix& B, const std::vector<Integer>& f) {
    const std::size_t n = A.rows();
    IntMatrix gens(n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gens.set_column(i * n + j, mul_mod(A.column(i), B.column(j), f));
    return lattice_basis(gens);
}

long double dot(const Vec& a, const Vec& b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void gram_schmidt(const std::vector<Vec>& b, std::vector<Vec>& mu, Vec& bstar) {
    const std::size_t n = b.size();
    std::vector<Vec> bs(n);
    mu.assign(n, Vec(n, 0));
    bstar.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bs[i] = b[i];
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = dot(b[i], bs[j]) / bstar[j];
            for (std::size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= mu[i][j] * bs[j][k];
        }
        bstar[i] = dot(bs[i], bs[i]);
    }
}

/// LLL with delta = 0.99 on the vectors b, recording the integer
/// transform in u (b_new[j] = sum_i u[j][i] b_old[i]).
void lll(std::vector<Vec>& b, std::vector<std::vector<long long>>& u) {
    const std::size_t n = b.size();
    u.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    std::vector<Vec> mu;
    Vec bstar;
    gram_schmidt(b, mu, bstar);
    std::size_t k = 1;
    int guard = 0;
    while (k < n && ++guard < 100000) {
        for (std::size_t j = k; j-- > 0;) {
            long double r = std::round(mu[k][j]);
            if (r == 0) continue;
            for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[j][c];
            for (std::size_t c = 0; c < n; ++c) u[k][c] -= static_cast<long long>(r) * u[j][c];
            gram_schmidt(b, mu, bstar);
        }
        if (bstar[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            std::swap(u[k], u[k - 1]);
            gram_schmidt(b, mu, bstar);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

struct ArchData {
    Place place;
    ArchCoeff coeff;
    std::vector<std::complex<long double>> emb;  // sigma_P of each basis column
    long double r2_lo, r2_hi;
};

}  // namespace

FractionalIdeal divisor_ideal(const Divisor& d) {
    const GlobalField& K = d.field();
    if (!K.is_number_field()) throw DomainError("divisor_ideal: not a number field");
    const std::size_t n = static_cast<std::size_t>(K.degree());
    std::vector<Integer> f;
    for (const auto& c : K.minpoly().coeffs()) f.push_back(c.get_num());

    // I_D = (1/den) J with J an integral ideal.
    std::map<Integer, int> primes;
    for (const auto& [P, a] : d.finite()) primes[P.prime] = 0;
    Integer den = 1;
    IntMatrix J = IntMatrix::identity(n);
    for (auto& [p, m] : primes) {
        auto above = places_above(K, p);
        for (const auto& Q : above) {
            Integer a = d.finite_coeff(Q);
            if (a > 0) m = std::max(m, static_cast<int>((a.get_si() + Q.e - 1) / Q.e));
        }
        for (const auto& Q : above) {
            long k = static_cast<long>(Q.e) * m - d.finite_coeff(Q).get_si();
            if (k > 0) J = ideal_product(J, K.prime_power(p, Q.local_factor, static_cast<int>(k)), f);
        }
        den *= gfw::pow(p, static_cast<unsigned long>(m));
    }
    return {J, den};
}

MultipleSet h0_number_field(const Divisor& d, const H0Options& opt) {
    const GlobalField& K = d.field();
    if (!K.is_number_field()) throw DomainError("h0_number_field: not a number field");
    const std::size_t n = static_cast<std::size_t>(K.degree());
    FractionalIdeal ideal = divisor_ideal(d);
    const IntMatrix& J = ideal.basis;
    const Integer& den = ideal.den;

    std::vector<ArchData> arch;
    std::vector<Vec> rows;
    for (const auto& P : archimedean_places(K)) {
        ArchData ad{P, d.arch_coeff(P), {}, 0, 0};
        CertReal r2 = detail::bound_squared(P, ad.coeff, opt.precision);
        ad.r2_lo = r2.lower().to_long_double();
        ad.r2_hi = r2.upper().to_long_double();
        Vec re(n), im(n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> v;
            for (std::size_t i = 0; i < n; ++i) v.push_back(Rational(J(i, j), den));
            CertComplex z = embed(P, PolyQ(RationalField{}, v), opt.precision);
            ad.emb.emplace_back(z.re.midpoint().to_long_double(), z.im.midpoint().to_long_double());
        }
        long double inv_r = 1 / std::sqrt(ad.r2_hi);
        for (std::size_t j = 0; j < n; ++j) {
            re[j] = ad.emb[j].real() * inv_r;
            im[j] = ad.emb[j].imag() * inv_r;
        }
        rows.push_back(re);
        if (P.kind == PlaceKind::Complex) rows.push_back(im);
        arch.push_back(std::move(ad));
    }

    // Columns of the scaled embedding matrix, reduced.
    std::vector<Vec> basis(n, Vec(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) basis[j][i] = rows[i][j];
    std::vector<std::vector<long long>> U;
    lll(basis, U);
    std::vector<Vec> mu;
    Vec bstar;
    gram_schmidt(basis, mu, bstar);

    const long double bound = static_cast<long double>(arch.size()) * (1 + 1e-9L) + 1e-12L;
    const long double eps = LDBL_EPSILON;
    MultipleSet out{d, 0, 0, Certification::Exact, std::nullopt, -1};
    std::vector<std::vector<Integer>> members;
    std::uint64_t nodes = 0;
    std::vector<long long> y(n, 0);

    auto element_of = [&](const std::vector<Integer>& coords) {
        std::vector<Rational> v;
        for (const auto& c : coords) v.push_back(Rational(c, den));
        return FieldElement::from_poly(K, PolyQ(RationalField{}, v));
    };

    auto visit_leaf = [&]() {
        std::vector<long long> x(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * U[j][i];
        bool unknown = false;
        std::optional<FieldElement> elem;
        for (const auto& ad : arch) {
            std::complex<long double> s = 0;
            long double mag = 0;
            for (std::size_t j = 0; j < n; ++j) {
                s += static_cast<long double>(x[j]) * ad.emb[j];
                mag += std::abs(static_cast<long double>(x[j])) * std::abs(ad.emb[j]);
            }
            long double v = std::norm(s);
            long double delta = 16 * static_cast<long double>(n + 2) * eps * mag;
            long double err = 2 * std::sqrt(v) * delta + delta * delta + 4 * eps * v;
            if (v + err < ad.r2_lo * (1 - 4 * eps)) continue;
            if (v - err > ad.r2_hi * (1 + 4 * eps)) return;
            if (!elem) {
                std::vector<Integer> coords(n, Integer(0));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) coords[i] += J(i, j) * Integer(static_cast<long>(x[j]));
                elem = element_of(coords);
            }
            auto m = detail::arch_member(ad.place, ad.coeff, *elem, opt.precision, opt.max_precision);
            if (m == detail::Membership::Out) return;
            if (m == detail::Membership::Unknown) unknown = true;
        }
        if (unknown) {
            out.h0_max += 1;
            return;
        }
        out.h0 += 1;
        out.h0_max += 1;
        if (opt.want_elements && members.size() <= opt.element_limit) {
            std::vector<Integer> coords(n, Integer(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) coords[i] += J(i, j) * Integer(static_cast<long>(x[j]));
            members.push_back(std::move(coords));
        }
    };

    std::function<void(std::size_t, long double)> descend = [&](std::size_t level, long double rem) {
        long double c = 0;
        for (std::size_t j = level + 1; j < n; ++j) c -= mu[j][level] * static_cast<long double>(y[j]);
        long double w = std::sqrt(std::max<long double>(rem, 0) / bstar[level]);
        long long lo = static_cast<long long>(std::ceil(c - w - 1e-9L));
        long long hi = static_cast<long long>(std::floor(c + w + 1e-9L));
        for (long long v = lo; v <= hi; ++v) {
            if (++nodes > opt.max_nodes) throw TooLargeError("h0: enumeration exceeds the node budget");
            long double dv = static_cast<long double>(v) - c;
            long double r = rem - dv * dv * bstar[level];
            if (r < -1e-9L * bound) continue;
            y[level] = v;
            if (level == 0)
                visit_leaf();
            else
                descend(level - 1, r);
        }
        y[level] = 0;
    };
    descend(n - 1, bound);

    if (out.h0 != out.h0_max) out.certification = Certification::IntervalBoundary;
    if (opt.want_elements && out.h0 <= opt.element_limit) {
        std::sort(members.begin(), members.end());
        std::vector<FieldElement> elems;
        for (const auto& c : members) elems.push_back(element_of(c));
        out.elements = std::move(elems);
    }
    return out;
}

MultipleSet compute_h0(const Divisor& d, const H0Options& opt) {
    return d.field().is_number_field() ? h0_number_field(d, opt) : h0_function_field(d, opt);
}

}  // namespace gfw
