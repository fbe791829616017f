#ifndef GFW_PLACES_PLACES_HPP
#define GFW_PLACES_PLACES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfw/exactnum/symbolic.hpp"
#include "gfw/places/global_field.hpp"

namespace gfw {

enum class PlaceKind { Real, Complex, Finite };

/// One place of a global field together with its local data.
///
/// Number fields: archimedean places are indexed by root (real roots
/// ascending, then conjugate pairs); a finite place is P = (p, g(theta))
/// with g a monic irreducible factor of f mod p. Function fields: every
/// place is finite and lies over a base place of F_p(t), either a monic
/// irreducible pi(t) or infinity. Above a split base place the two places
/// are told apart by the residue of y (or of the infinity-model variable).
struct Place {
    GlobalField field;
    PlaceKind kind = PlaceKind::Finite;
    int index = 0;     // archimedean: position in archimedean_places; finite: position above its base
    int siblings = 1;  // number of places over the same base
    Integer prime;     // number fields, finite
    PolyFp local_factor{PrimeField(2)};  // number fields: g mod p; split function field places: residue of y
    bool at_infinity = false;            // function fields
    PolyFp base{PrimeField(2)};          // function fields, finite base pi(t)
    int e = 1, f = 1;                    // over the base place
    int base_degree = 1;                 // function fields: deg pi (1 at infinity)

    explicit Place(GlobalField K) : field(std::move(K)) {}

    bool is_archimedean() const noexcept { return kind != PlaceKind::Finite; }
    /// N(P) for finite places (residue field size).
    Integer norm() const;
    /// log N(P): 1 (real), 2 (complex) or log of the residue field size.
    LogLinear log_norm() const;
    /// Real dimension of the completion (archimedean places).
    int dimension() const noexcept { return kind == PlaceKind::Complex ? 2 : 1; }
    /// Label in the divisor grammar: "(2)", "(5,2)", "(t^2+1)", "inf", "inf2".
    std::string label() const;
    std::string describe() const;

    friend bool operator==(const Place& a, const Place& b);
    friend bool operator<(const Place& a, const Place& b);
};

std::vector<Place> places_above(const GlobalField& K, const Integer& p);
/// pi must be monic irreducible over the constant field of K.
std::vector<Place> places_above(const GlobalField& K, const PolyFp& pi);
/// Function fields: the places over the infinite place of F_p(t).
std::vector<Place> places_at_infinity(const GlobalField& K);
std::vector<Place> archimedean_places(const GlobalField& K);

/// (S1, S2): number of real embeddings and of complex embeddings; (0, 0)
/// in positive characteristic.
std::pair<int, int> s_counts(const GlobalField& K);

CertReal norm_N(const Place& P, int prec = kDefaultPrecision);

/// v_P(a) for a finite place and a != 0.
int valuation(const Place& P, const FieldElement& a);
inline int finite_valuation_exponent(const Place& P, const FieldElement& a) { return valuation(P, a); }

/// Image of a under the embedding of an archimedean place (the member
/// with positive imaginary part for complex places).
CertComplex embed(const Place& P, const FieldElement& a, int prec = kDefaultPrecision);
CertComplex embed(const Place& P, const PolyQ& a, int prec = kDefaultPrecision);

/// phi_P(a): N(P)^{-v_P(a)} at finite places, |sigma_P(a)| at real and
/// |sigma_P(a)|^2 at complex places; 0 for a = 0.
CertReal normalized_valuation(const Place& P, const FieldElement& a, int prec = kDefaultPrecision);

/// Finite places (all places in positive characteristic) where v_P(a) is
/// nonzero, with the valuation, in place order.
std::vector<std::pair<Place, int>> finite_divisor(const FieldElement& a);

/// prod_P phi_P(a) over all places; exact in positive characteristic.
CertReal product_formula_defect(const FieldElement& a, int prec = kDefaultPrecision);

/// Local model used for function field valuations: the place lies over
/// the zero of `pi` in the model w^2 = F (w = y at finite base places;
/// w = y s^m, s = 1/t, F = s^{2m} f(1/s) at infinity). F is zero for F_p(t).
enum class LocalType { Rational, Ramified, Split, Inert };
struct LocalModel {
    LocalType type;
    PolyFp F, pi;
    std::optional<PolyFp> root;  // split places: residue of w
    bool at_infinity;
    int m = 0;                   // infinity shift
    int e = 1;
};
LocalModel local_model(const Place& P);
/// Y with Y^2 = F mod pi^k and Y = s mod pi.
PolyFp hensel_sqrt(const PolyFp& F, const PolyFp& pi, const PolyFp& s, int k);
/// v_Q(A + B w) for polynomials A, B in the model variable, not both zero.
int local_valuation(const LocalModel& lm, const PolyFp& A, const PolyFp& B);
/// For a place at infinity: writes A + B y = s^{-n} (A' + B' w) with
/// A' = s^n A(1/s), B' = s^{n-m} B(1/s); n >= max(deg A, deg B + m).
std::pair<PolyFp, PolyFp> to_infinity_model(const LocalModel& lm, const PolyFp& A, const PolyFp& B, int n);

/// Polynomial clearing of a function field element: a = (A + B y) / D.
struct PolyForm {
    PolyFp A, B, D;
};
PolyForm poly_form(const FieldElement& a);

/// Q or F_p(t) for a field.
GlobalField base_field(const GlobalField& K);

/// A supported finite separable extension L/K: a number field over Q, a
/// function field over F_p(t), or a field over itself.
class Extension {
  public:
    Extension(GlobalField top, GlobalField bottom);
    const GlobalField& top() const noexcept { return top_; }
    const GlobalField& bottom() const noexcept { return bottom_; }
    bool trivial() const noexcept { return trivial_; }
    int degree() const noexcept { return trivial_ ? 1 : top_.degree(); }

  private:
    GlobalField top_, bottom_;
    bool trivial_;
};

int ramification_index(const Place& Q, const Extension& ext);
/// r_Q: exponent of the local different at finite Q; -log log N(Q) at a
/// ramified archimedean Q, else 0.
LogLinear different_exponent(const Place& Q, const Extension& ext);

}  // namespace gfw

#endif
