#include <algorithm>
#include <climits>

#include "gfw/error.hpp"
#include "gfw/h0/h0.hpp"
#include "h0_internal.hpp"

namespace gfw {

namespace detail {

namespace {

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

FfAnsatz ff_ansatz(const Divisor& d) {
    const GlobalField& K = d.field();
    const PrimeField& k = K.constant_field();
    FfAnsatz an{PolyFp::constant(k, 1), {}, -1, -1};

    // M clears every pole at a finite place: a M is integral over F_p[t].
    std::vector<std::pair<PolyFp, long>> m_of;  // (pi, m_pi)
    auto find = [&](const PolyFp& pi) -> long& {
        for (auto& [q, m] : m_of)
            if (q == pi) return m;
        m_of.emplace_back(pi, 0);
        return m_of.back().second;
    };
    for (const auto& [P, a] : d.finite()) {
        if (P.at_infinity) continue;
        long& m = find(P.base);
        if (a > 0) m = std::max(m, (a.get_si() + P.e - 1) / P.e);
    }
    for (const auto& [pi, m] : m_of) an.M = an.M * poly_pow(pi, static_cast<unsigned>(m));
    const long degM = an.M.degree();

    auto infs = places_at_infinity(K);
    if (K.kind() == FieldKind::RationalFF) {
        an.dA = d.finite_coeff(infs[0]).get_si() + degM;
    } else {
        const long df = K.curve().degree();
        if (df % 2 == 1) {
            // One ramified place: v(t) = -2, v(y) = -deg f, no cancellation.
            long c = d.finite_coeff(infs[0]).get_si() + 2 * degM;
            an.dA = floor_div(c, 2);
            an.dB = floor_div(c - df, 2);
        } else {
            // deg f = 2: A = ((A + By) + (A - By)) / 2 bounds both parts.
            long c = LONG_MIN;
            for (const auto& P : infs) c = std::max(c, d.finite_coeff(P).get_si());
            c += degM;
            an.dA = c;
            an.dB = c - 1;
        }
    }
    an.dA = std::max(an.dA, -1L);
    an.dB = std::max(an.dB, -1L);

    // Places whose condition is not implied by integrality of a M.
    for (const auto& [pi, m] : m_of)
        for (const auto& P : places_above(K, pi)) an.constrained.push_back(P);
    for (const auto& P : infs) an.constrained.push_back(P);
    return an;
}

namespace {

/// Coefficients of a mod pi^k, padded to deg pi^k entries.
void push_residue(std::vector<std::uint64_t>& out, const PolyFp& a, const PolyFp& mod) {
    PolyFp r = a % mod;
    for (int i = 0; i < mod.degree(); ++i) out.push_back(r.coeff(i));
}

/// Linear functionals whose common kernel is {v_Q(A + B w) >= k} in the
/// local model.
std::vector<std::uint64_t> local_conditions(const LocalModel& lm, const PolyFp& A, const PolyFp& B, long k) {
    std::vector<std::uint64_t> out;
    if (k <= 0) return out;
    auto pp = [&](long e) { return poly_pow(lm.pi, static_cast<unsigned>(std::max(e, 0L))); };
    switch (lm.type) {
        case LocalType::Rational: push_residue(out, A, pp(k)); break;
        case LocalType::Inert:
            push_residue(out, A, pp(k));
            push_residue(out, B, pp(k));
            break;
        case LocalType::Ramified:
            push_residue(out, A, pp((k + 1) / 2));
            push_residue(out, B, pp(k / 2));
            break;
        case LocalType::Split: {
            PolyFp Y = hensel_sqrt(lm.F, lm.pi, *lm.root, static_cast<int>(k));
            push_residue(out, A + B * Y, pp(k));
            break;
        }
    }
    return out;
}

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<std::uint64_t>>& rows, std::size_t ncols, const PrimeField& k) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        auto inv = k.inv(rows[r][c]);
        for (auto& x : rows[r]) x = k.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            auto f = rows[i][c];
            for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = k.sub(rows[i][j], k.mul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

FieldElement ansatz_element(const GlobalField& K, const FfAnsatz& an, const std::vector<std::uint64_t>& v) {
    const PrimeField& k = K.constant_field();
    std::vector<std::uint64_t> a(v.begin(), v.begin() + (an.dA + 1));
    std::vector<std::uint64_t> b(v.begin() + (an.dA + 1), v.end());
    RatFunc ra(PolyFp(k, a), an.M);
    if (K.kind() == FieldKind::RationalFF) return FieldElement::from_parts(K, ra, RatFunc(k));
    return FieldElement::from_parts(K, ra, RatFunc(PolyFp(k, b), an.M));
}

}  // namespace detail

MultipleSet h0_function_field(const Divisor& d, const H0Options& opt) {
    const GlobalField& K = d.field();
    if (K.is_number_field()) throw DomainError("h0_function_field: not a function field");
    const PrimeField& k = K.constant_field();
    detail::FfAnsatz an = detail::ff_ansatz(d);
    const std::size_t nA = static_cast<std::size_t>(an.dA + 1), nB = static_cast<std::size_t>(an.dB + 1);
    const std::size_t N = nA + nB;
    const long degM = an.M.degree();

    // One column of constraints per unknown coefficient.
    std::vector<std::vector<std::uint64_t>> cols(N);
    for (const auto& P : an.constrained) {
        LocalModel lm = local_model(P);
        long a = d.finite_coeff(P).get_si();
        if (!P.at_infinity) {
            long k_req = static_cast<long>(P.e) * poly_valuation(an.M, P.base) - a;
            for (std::size_t u = 0; u < N; ++u) {
                PolyFp A(k), B(k);
                if (u < nA)
                    A = PolyFp::monomial(k, 1, static_cast<int>(u));
                else
                    B = PolyFp::monomial(k, 1, static_cast<int>(u - nA));
                auto c = detail::local_conditions(lm, A, B, k_req);
                cols[u].insert(cols[u].end(), c.begin(), c.end());
            }
        } else {
            // a M s^n = A' + B' w with s = 1/t; v_P(s) = e.
            long n = std::max(an.dA, an.dB + lm.m);
            if (n < 0) continue;
            long k_req = static_cast<long>(lm.e) * n - a - static_cast<long>(lm.e) * degM;
            for (std::size_t u = 0; u < N; ++u) {
                PolyFp A(k), B(k);
                if (u < nA)
                    A = PolyFp::monomial(k, 1, static_cast<int>(n - static_cast<long>(u)));
                else
                    B = PolyFp::monomial(k, 1, static_cast<int>(n - lm.m - static_cast<long>(u - nA)));
                auto c = detail::local_conditions(lm, A, B, k_req);
                cols[u].insert(cols[u].end(), c.begin(), c.end());
            }
        }
    }
    const std::size_t R = N ? cols[0].size() : 0;
    std::vector<std::vector<std::uint64_t>> rows(R, std::vector<std::uint64_t>(N));
    for (std::size_t u = 0; u < N; ++u)
        for (std::size_t r = 0; r < R; ++r) rows[r][u] = cols[u][r];
    auto pivots = detail::rref(rows, N, k);
    const int dim = static_cast<int>(N - pivots.size());

    MultipleSet out{d, gfw::pow(Integer(static_cast<unsigned long>(k.characteristic())), static_cast<unsigned long>(dim)),
                    0, Certification::Exact, std::nullopt, dim};
    out.h0_max = out.h0;
    if (opt.want_elements && out.h0 <= opt.element_limit) {
        // Kernel basis from the free columns.
        std::vector<std::vector<std::uint64_t>> basis;
        std::vector<bool> is_pivot(N, false);
        for (auto c : pivots) is_pivot[c] = true;
        for (std::size_t fcol = 0; fcol < N; ++fcol) {
            if (is_pivot[fcol]) continue;
            std::vector<std::uint64_t> v(N, 0);
            v[fcol] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(rows[r][fcol]);
            basis.push_back(std::move(v));
        }
        std::vector<std::vector<std::uint64_t>> vecs;
        const std::uint64_t total = out.h0.get_ui();
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::vector<std::uint64_t> v(N, 0);
            std::uint64_t rest = idx;
            for (const auto& b : basis) {
                std::uint64_t c = rest % k.characteristic();
                rest /= k.characteristic();
                for (std::size_t i = 0; i < N; ++i) v[i] = k.add(v[i], k.mul(c, b[i]));
            }
            vecs.push_back(std::move(v));
        }
        std::sort(vecs.begin(), vecs.end());
        std::vector<FieldElement> elems;
        for (const auto& v : vecs) elems.push_back(detail::ansatz_element(K, an, v));
        out.elements = std::move(elems);
    }
    return out;
}

}  // namespace gfw
