#include <cmath>
#include <functional>
#include <set>

#include "gfw/error.hpp"
#include "gfw/h0/h0.hpp"
#include "h0_internal.hpp"

namespace gfw {

namespace {

/// N(P)^{c} for an archimedean coefficient c.
CertReal normalized_bound(const Place& P, const ArchCoeff& c, int prec) {
    const Rational dim(P.dimension());
    CertReal r = ExpMonomial::exp_of(dim * c.lin).evaluate(prec);
    for (const auto& [k, beta] : c.logs) r *= gfw::pow(embed(P, beta, prec).abs(), dim * k);
    return r;
}

Integer nf_oracle(const Divisor& d, const OracleLimits& lim) {
    const GlobalField& K = d.field();
    const int n = K.degree();
    if (n > 2) throw TooLargeError("h0_oracle: number fields of degree at most 2 only");
    constexpr int prec = 256;

    // den a lies in Z[theta] for every a in H0(D).
    Integer den = 1;
    std::set<Integer> primes;
    for (const auto& [P, a] : d.finite()) primes.insert(P.prime);
    for (const auto& p : primes) {
        long m = 0;
        for (const auto& Q : places_above(K, p)) {
            long a = d.finite_coeff(Q).get_si();
            if (a > 0) m = std::max(m, (a + Q.e - 1) / Q.e);
        }
        den *= gfw::pow(p, static_cast<unsigned long>(m));
    }
    std::vector<Place> watched;
    for (const auto& [p, e] : factor_integer(den))
        for (const auto& Q : places_above(K, p)) watched.push_back(Q);
    for (const auto& [P, a] : d.finite()) watched.push_back(P);

    // Bounds on |sigma_i(den a)| over all n embeddings.
    auto arch = archimedean_places(K);
    std::vector<CertReal> R;
    for (const auto& P : arch) {
        CertReal b = normalized_bound(P, d.arch_coeff(P), prec);
        CertReal r = P.kind == PlaceKind::Complex ? sqrt(b) : b;
        R.push_back(r * CertReal::from_rational(Rational(den), prec));
        if (P.kind == PlaceKind::Complex) R.push_back(R.back());
    }
    // den a = c0 + c1 theta; solve from two embeddings.
    std::vector<Integer> box(static_cast<std::size_t>(n));
    auto ceil_int = [](const CertReal& x) {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), x.upper().get(), MPFR_RNDU);
        return Integer(z);
    };
    if (n == 1) {
        box[0] = ceil_int(R[0]);
    } else {
        CertComplex t1 = embed(arch[0], FieldElement::generator(K), prec);
        CertComplex t2 = arch.size() == 2 ? embed(arch[1], FieldElement::generator(K), prec) : t1.conj();
        CertReal gap = (t1 - t2).abs();
        CertReal c1 = (R[0] + R[1]) / gap;
        CertReal c0 = R[0] + c1 * t1.abs();
        box[0] = ceil_int(c0);
        box[1] = ceil_int(c1);
    }
    Integer count = 1;
    for (const auto& b : box) count *= 2 * b + 1;
    if (count > Integer(static_cast<unsigned long>(lim.nf_candidates)))
        throw TooLargeError("h0_oracle: coordinate box has " + gfw::to_string(count) + " candidates");

    Integer h = 0;
    std::vector<Integer> c(static_cast<std::size_t>(n));
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == c.size()) {
            std::vector<Rational> v;
            for (const auto& x : c) v.push_back(Rational(x, den));
            FieldElement a = FieldElement::from_poly(K, PolyQ(RationalField{}, v));
            if (a.is_zero()) {
                h += 1;
                return;
            }
            for (const auto& Q : watched)
                if (valuation(Q, a) < -d.finite_coeff(Q)) return;
            for (const auto& P : arch) {
                // phi_P(a) <= N(P)^{a_P}.
                CertReal phi = normalized_valuation(P, a, prec);
                Ordering o = cmp(phi, normalized_bound(P, d.arch_coeff(P), prec));
                if (o == Ordering::Greater) return;
                if (o == Ordering::Indeterminate &&
                    detail::arch_member(P, d.arch_coeff(P), a, 2 * prec, 8192) != detail::Membership::In)
                    return;
            }
            h += 1;
            return;
        }
        for (Integer x = -box[i]; x <= box[i]; ++x) {
            c[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return h;
}

Integer ff_oracle(const Divisor& d, const OracleLimits& lim) {
    const GlobalField& K = d.field();
    const PrimeField& k = K.constant_field();
    detail::FfAnsatz an = detail::ff_ansatz(d);
    if (an.dA > lim.ff_max_degree || an.dB > lim.ff_max_degree)
        throw TooLargeError("h0_oracle: ansatz degree above " + std::to_string(lim.ff_max_degree));
    const std::size_t N = static_cast<std::size_t>(an.dA + 1 + an.dB + 1);
    const double total = std::pow(static_cast<double>(k.characteristic()), static_cast<double>(N));
    if (total > static_cast<double>(lim.ff_candidates))
        throw TooLargeError("h0_oracle: " + std::to_string(static_cast<long long>(total)) + " candidates");

    std::vector<Place> watched = an.constrained;
    for (const auto& [P, a] : d.finite()) watched.push_back(P);
    Integer h = 0;
    std::vector<std::uint64_t> v(N, 0);
    for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(total); ++idx) {
        std::uint64_t rest = idx;
        bool zero = true;
        for (auto& x : v) {
            x = rest % k.characteristic();
            rest /= k.characteristic();
            zero = zero && x == 0;
        }
        if (zero) {
            h += 1;
            continue;
        }
        FieldElement a = detail::ansatz_element(K, an, v);
        bool ok = true;
        for (const auto& Q : watched)
            if (valuation(Q, a) < -d.finite_coeff(Q)) {
                ok = false;
                break;
            }
        if (ok) h += 1;
    }
    return h;
}

}  // namespace

Integer h0_oracle(const Divisor& d, const OracleLimits& lim) {
    return d.field().is_number_field() ? nf_oracle(d, lim) : ff_oracle(d, lim);
}

}  // namespace gfw
