#ifndef GFW_PLACES_GLOBAL_FIELD_HPP
#define GFW_PLACES_GLOBAL_FIELD_HPP

#include <memory>
#include <string>
#include <string_view>

#include "gfw/exactnum/complex_roots.hpp"
#include "gfw/exactnum/matrix.hpp"
#include "gfw/exactnum/poly.hpp"

namespace gfw {

enum class FieldKind { NumberField, RationalFF, QuadraticFF };

/// A global field: Q(theta) with theta a root of a monic integral
/// irreducible f such that Z[theta] is the full ring of integers, the
/// rational function field F_p(t), or F_p(t, y) with y^2 = f(t).
/// Cheap to copy; copies share caches.
class GlobalField {
  public:
    /// Throws DomainError for reducible or non-monic input and
    /// UnsupportedError when Z[theta] is not maximal.
    static GlobalField number_field(const PolyQ& minpoly);
    static GlobalField rational_function_field(std::uint64_t p);
    /// p odd, f squarefree of degree 1..3. p = 2 is rejected because the
    /// model would be wildly ramified.
    static GlobalField quadratic_function_field(std::uint64_t p, const PolyFp& f);
    /// `nf:<poly in x>`, `ff:<p>`, `ff:<p>:y^2=<poly in t>`.
    static GlobalField parse(std::string_view literal);

    FieldKind kind() const noexcept;
    bool is_number_field() const noexcept { return kind() == FieldKind::NumberField; }
    /// 0 for number fields.
    std::uint64_t characteristic() const noexcept;
    /// Degree over the base field Q or F_p(t).
    int degree() const noexcept;

    const PolyQ& minpoly() const;        // number fields
    const Integer& discriminant() const;  // number fields, disc(f)
    const PrimeField& constant_field() const;  // function fields
    const PolyFp& curve() const;          // quadratic function fields
    int genus() const;                    // function fields

    /// Root enclosures of the minimal polynomial at (at least) the given
    /// precision; cached.
    const RootSet& roots(int precision = kDefaultPrecision) const;

    /// HNF basis (coordinates in 1, theta, ..., theta^{n-1}) of P^k for
    /// the prime P = (p, g(theta)), k >= 0; cached.
    IntMatrix prime_power(const Integer& p, const PolyFp& g, int k) const;

    std::string to_string() const;
    friend bool operator==(const GlobalField& a, const GlobalField& b);

    struct Impl;

  private:
    explicit GlobalField(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

/// Quotient of polynomials over F_p, denominator monic, coprime.
struct RatFunc {
    PolyFp num, den;

    explicit RatFunc(const PrimeField& k) : num(k), den(PolyFp::constant(k, 1)) {}
    RatFunc(PolyFp n, PolyFp d);
    explicit RatFunc(PolyFp n) : RatFunc(std::move(n), PolyFp::constant(n.field(), 1)) {}

    bool is_zero() const { return num.is_zero(); }
    RatFunc operator-() const { return {-num, den}; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }
    std::string to_string(const std::string& var = "t") const;
};

/// Exact element of a global field. Number fields: a polynomial in theta
/// of degree < n with rational coefficients. Function fields: a + b*y with
/// a, b in F_p(t) (b = 0 in F_p(t)).
class FieldElement {
  public:
    explicit FieldElement(GlobalField field);  // zero
    static FieldElement from_rational(const GlobalField& field, const Rational& q);
    static FieldElement from_poly(const GlobalField& field, const PolyQ& a);  // number fields
    static FieldElement from_parts(const GlobalField& field, RatFunc a, RatFunc b);
    /// theta (number fields) or t (function fields).
    static FieldElement generator(const GlobalField& field);
    static FieldElement y(const GlobalField& field);
    /// Element grammar: rational coefficients, + - * / ^, parentheses,
    /// variables x or theta (number fields), t and y (function fields).
    static FieldElement parse(const GlobalField& field, std::string_view text);

    const GlobalField& field() const noexcept { return field_; }
    bool is_zero() const;
    bool is_one() const;

    const PolyQ& nf_poly() const { return nf_; }
    const RatFunc& a() const { return a_; }
    const RatFunc& b() const { return b_; }

    /// Norm down to Q (number fields).
    Rational norm() const;
    /// Norm down to F_p(t) (function fields): a^2 - b^2 f.
    RatFunc ff_norm() const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& x, const FieldElement& z);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& z);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& z);
    /// Throws DomainError on division by zero.
    friend FieldElement operator/(const FieldElement& x, const FieldElement& z);
    FieldElement inverse() const;
    FieldElement pow(long e) const;
    friend bool operator==(const FieldElement& x, const FieldElement& z);

    std::string to_string() const;

  private:
    GlobalField field_;
    PolyQ nf_;
    RatFunc a_, b_;
};

/// Coordinates of a number field element: integral numerator in the
/// power basis and a positive common denominator.
struct IntegralForm {
    std::vector<Integer> coords;
    Integer denominator;
};
IntegralForm integral_form(const FieldElement& a);

}  // namespace gfw

#endif
