#ifndef GFW_DIVISORS_DIVISOR_HPP
#define GFW_DIVISORS_DIVISOR_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfw/exactnum/symbolic.hpp"
#include "gfw/places/places.hpp"

namespace gfw {

/// Coefficient at an archimedean place: an exact LogLinear part plus
/// deferred terms c * log|sigma_P(beta)| for elements beta whose
/// embedding is not rational (the place is the one carrying the
/// coefficient).
struct ArchCoeff {
    LogLinear lin;
    std::vector<std::pair<Rational, FieldElement>> logs;

    ArchCoeff() = default;
    ArchCoeff(LogLinear l) : lin(std::move(l)) {}  // NOLINT(implicit)
    ArchCoeff(const Rational& q) : lin(q) {}       // NOLINT(implicit)

    bool is_zero() const { return lin.is_zero() && logs.empty(); }
    bool is_exact() const { return logs.empty(); }
    ArchCoeff operator-() const;
    friend ArchCoeff operator+(const ArchCoeff& a, const ArchCoeff& b);
    friend ArchCoeff operator-(const ArchCoeff& a, const ArchCoeff& b) { return a + (-b); }
    friend ArchCoeff operator*(const Rational& s, const ArchCoeff& a);
    friend bool operator==(const ArchCoeff& a, const ArchCoeff& b);
    CertReal evaluate(const Place& P, int prec = kDefaultPrecision) const;
    std::string to_string() const;
};

/// A divisor sum a_P * P: integer coefficients at finite places, real
/// (exact symbolic) coefficients at archimedean places.
class Divisor {
  public:
    explicit Divisor(GlobalField field) : field_(std::move(field)) {}

    /// Divisor literal: terms `<coeff>*(<base>[,<index>])`, `<coeff>*inf[N]`
    /// joined by + or -, or "0". Coefficients at archimedean places may use
    /// log(<n>) and logabs(<element>) atoms.
    static Divisor parse(const GlobalField& field, std::string_view text);

    const GlobalField& field() const noexcept { return field_; }
    const std::map<Place, Integer>& finite() const noexcept { return finite_; }
    const std::map<Place, ArchCoeff>& arch() const noexcept { return arch_; }
    bool is_zero() const { return finite_.empty() && arch_.empty(); }

    Integer finite_coeff(const Place& P) const;
    ArchCoeff arch_coeff(const Place& P) const;
    void add_finite(const Place& P, const Integer& c);
    void add_arch(const Place& P, const ArchCoeff& c);
    void add(const Place& P, const Rational& c);  // finite places need an integer

    Divisor operator-() const;
    friend Divisor operator+(const Divisor& a, const Divisor& b);
    friend Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }
    friend Divisor operator*(long k, const Divisor& d);
    friend bool operator==(const Divisor& a, const Divisor& b);

    std::string to_string() const;

  private:
    void check_place(const Place& P) const;
    GlobalField field_;
    std::map<Place, Integer> finite_;
    std::map<Place, ArchCoeff> arch_;
};

inline Divisor negate(const Divisor& d) { return -d; }
inline Divisor add(const Divisor& a, const Divisor& b) { return a + b; }

/// Looks up a place by its divisor-grammar label ("(2)", "(5,2)",
/// "(t^2+1)", "inf", "inf2").
Place parse_place(const GlobalField& field, std::string_view label);

/// deg D = prod N(P)^{a_P}, kept exact where possible: an ExpMonomial
/// times deferred factors |sigma_P(beta)|^k.
struct DegreeValue {
    struct Factor {
        Place place;
        FieldElement beta;
        Rational exponent;
    };
    ExpMonomial exact;
    std::vector<Factor> deferred;

    bool is_exact() const { return deferred.empty(); }
    CertReal evaluate(int prec = kDefaultPrecision) const;
    CertReal log(int prec = kDefaultPrecision) const;
};

DegreeValue degree_value(const Divisor& d);
CertReal degree(const Divisor& d, int prec = kDefaultPrecision);

/// Coefficientwise D1 <= D2; nullopt when a deferred archimedean
/// comparison cannot be separated.
std::optional<bool> divisor_leq(const Divisor& a, const Divisor& b, int prec = kDefaultPrecision);

/// (a): -v_P(a) at finite places, log_{N(P)} phi_P(a) at archimedean
/// places (exact when a is rational or the field has one archimedean
/// place, deferred otherwise).
Divisor principal_divisor(const FieldElement& a);

/// R_{L/K} = sum r_Q Q.
Divisor ramification_divisor(const Extension& ext);

/// Choice of P0 (a finite base place; degree one in positive
/// characteristic) and of the archimedean place Pinf.
struct BasePlace {
    std::optional<Integer> prime;  // number fields
    std::optional<PolyFp> poly;    // function fields, finite
    bool infinity = false;         // function fields

    static BasePlace parse(const GlobalField& K, std::string_view text);
    std::string to_string() const;
};

struct CanonicalChoice {
    std::optional<BasePlace> p0;  // default (2) resp. (t)
    std::optional<int> pinf;      // index into archimedean_places, default 0
};

/// omega' = R_{K/K0} - sum_{P in S0} 2 e_P P + a_inf P_inf (the last term
/// only in characteristic 0) with a_inf = sum 2 e_P log N(P) / dim P_inf.
Divisor canonical_divisor(const GlobalField& K, const CanonicalChoice& choice = {});

/// Places of K over P0.
std::vector<Place> places_over(const GlobalField& K, const BasePlace& b);

}  // namespace gfw

#endif
