#include "gfw/exactnum/matrix.hpp"

#include <utility>

#include "gfw/error.hpp"

namespace gfw {

Rational determinant(RatMatrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

Integer determinant(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw DomainError("determinant of a non-square matrix");
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix m = a;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(RatMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

std::optional<std::vector<Rational>> solve(RatMatrix m, std::vector<Rational> b) {
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            std::swap(b[piv], b[c]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= m(i, i);
    return b;
}

namespace {

void column_axpy(IntMatrix& m, std::size_t dst, const Integer& q, std::size_t src) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

/// Bottom-up column echelon reduction. Returns the index of the last
/// column that ended up zero (or -1 if none).
long reduce(IntMatrix& h, IntMatrix& u) {
    const std::size_t rows = h.rows(), cols = h.cols();
    long pc = static_cast<long>(cols) - 1;
    for (long i = static_cast<long>(rows) - 1; i >= 0 && pc >= 0; --i) {
        for (long j = 0; j < pc; ++j) {
            if (h(i, j) == 0) continue;
            Integer x = h(i, j), y = h(i, pc), g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            Integer yg = y / g, xg = x / g;
            for (IntMatrix* mm : {&h, &u}) {
                IntMatrix& m = *mm;
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    Integer a = m(r, j), b = m(r, pc);
                    m(r, pc) = s * a + t * b;
                    m(r, j) = yg * a - xg * b;
                }
            }
        }
        if (h(i, pc) == 0) continue;
        if (h(i, pc) < 0) {
            for (std::size_t r = 0; r < rows; ++r) h(r, pc) = -h(r, pc);
            for (std::size_t r = 0; r < u.rows(); ++r) u(r, pc) = -u(r, pc);
        }
        for (std::size_t c = pc + 1; c < cols; ++c) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(i, pc).get_mpz_t());
            if (q == 0) continue;
            column_axpy(h, c, q, pc);
            column_axpy(u, c, q, pc);
        }
        --pc;
    }
    return pc;
}

}  // namespace

HnfResult hnf(const IntMatrix& basis) {
    IntMatrix h = basis;
    IntMatrix u = IntMatrix::identity(basis.cols());
    long pc = reduce(h, u);
    if (pc >= 0 || basis.cols() > basis.rows())
        throw DomainError("hnf: basis matrix does not have full column rank");
    return {std::move(h), std::move(u)};
}

IntMatrix lattice_basis(const IntMatrix& generators) {
    IntMatrix h = generators;
    IntMatrix u = IntMatrix::identity(generators.cols());
    long pc = reduce(h, u);
    std::size_t first = static_cast<std::size_t>(pc + 1);
    std::size_t n = h.rows();
    if (h.cols() - first != n) throw DomainError("lattice_basis: generators do not span a full-rank lattice");
    IntMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) out(i, j) = h(i, first + j);
    return out;
}

std::optional<std::vector<Integer>> lattice_coordinates(const IntMatrix& h, const std::vector<Integer>& v) {
    const std::size_t n = h.rows();
    std::vector<Integer> rest = v, c(n);
    for (std::size_t k = n; k-- > 0;) {
        if (!mpz_divisible_p(rest[k].get_mpz_t(), h(k, k).get_mpz_t())) return std::nullopt;
        c[k] = rest[k] / h(k, k);
        for (std::size_t i = 0; i <= k; ++i) rest[i] -= h(i, k) * c[k];
    }
    return c;
}

}  // namespace gfw
