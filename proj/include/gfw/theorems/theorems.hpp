#ifndef GFW_THEOREMS_THEOREMS_HPP
#define GFW_THEOREMS_THEOREMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gfw/divisors/divisor.hpp"
#include "gfw/h0/h0.hpp"

namespace gfw {

enum class Verdict { Holds, Fails, Indeterminate };
std::string to_string(Verdict v);

/// Volume of the unit ball in R^n, n in {1, 2}: 2 and pi.
ExpMonomial ball_volume(int n);

struct ConstantsBundle {
    ExpMonomial c_theorem;  // 6^{S1+S2} (S1+S2)! / (2^{S1} (pi/2)^{S2})
    ExpMonomial c_remark;   // (r1+2r2)! 2^{2r2} 6^{r1+2r2} / ((V(B1) 1!)^{r1} (V(B2) 2!)^{r2})
    ExpMonomial b;          // 2^{S1} (2 pi)^{S2/2}
};

/// Throws DomainError for negative counts or odd S2.
ConstantsBundle constants(int s1, int s2);
std::pair<ExpMonomial, ExpMonomial> constant_C(int s1, int s2);
ExpMonomial constant_B(int s1, int s2);

/// chi(D) = log deg D - (1/2) log deg omega' (characteristic 0).
CertReal chi(const Divisor& d, const CanonicalChoice& choice = {}, int prec = kDefaultPrecision);

/// -log of the covolume of the ideal of D in Minkowski space, with the
/// archimedean coefficients applied as scalings; computed from a Gram
/// determinant of the embedded ideal basis.
CertReal chi_from_covolume(const Divisor& d, int prec = kDefaultPrecision);

struct IValue {
    CertReal value;
    std::optional<ExpMonomial> exact;
    /// The count i(D) was built from: h0(D) in characteristic 0,
    /// h0(omega' - D) in characteristic p.
    Integer count, count_max;
};

/// i(D): h0(D) e^{-chi(D)} / (2^{S1} pi^{S2/2}) in characteristic 0,
/// h0(omega' - D) in characteristic p. With an undecided boundary the
/// value is the hull over the h0 range.
IValue i_function(const Divisor& d, const CanonicalChoice& choice = {}, int prec = kDefaultPrecision,
                  const H0Options& opt = {});

struct VerificationReport {
    std::string statement;  // rr1, rr2, rh
    std::string field;
    std::string divisor;
    std::string choices;
    std::optional<CertReal> deg;
    std::optional<Integer> h0, h0_dual;
    std::optional<Integer> h0_max, h0_dual_max;  // set when a boundary stayed undecided
    std::optional<CertReal> ratio;  // rr1: sandwich ratio; rr2: (h0/i) sqrt(deg w)/deg D; rh: lhs/rhs
    std::optional<CertReal> c_theorem, c_remark, b;
    std::optional<CertReal> i_value;
    Verdict verdict = Verdict::Indeterminate;
    std::optional<Verdict> verdict_theorem;  // rr1 against C_theorem
    std::optional<CertReal> margin;
    std::string note;
};

/// 1/C <= (h0(D)/h0(omega'-D)) sqrt(deg omega')/deg D <= C. The verdict is
/// against C_remark, verdict_theorem against C_theorem.
VerificationReport verify_rr_sandwich(const Divisor& d, const CanonicalChoice& choice = {},
                                      int prec = kDefaultPrecision, const H0Options& opt = {});

/// One point of the i(D) -> 1 statement: verdict Holds when |i(D) - 1| < eps.
VerificationReport verify_rr_point(const Divisor& d, const Rational& eps, const CanonicalChoice& choice = {},
                                   int prec = kDefaultPrecision, const H0Options& opt = {});

struct AsymptoticResult {
    std::vector<VerificationReport> points;
    /// First degree from which every point holds.
    std::optional<CertReal> threshold;
    Verdict verdict = Verdict::Indeterminate;
};

/// Summary over a sweep sorted by degree: Holds when a nonempty tail of
/// points holds.
AsymptoticResult summarize_asymptotic(std::vector<VerificationReport> points);
AsymptoticResult verify_rr_asymptotic(const std::vector<Divisor>& sweep, const Rational& eps,
                                      const CanonicalChoice& choice = {}, int prec = kDefaultPrecision,
                                      const H0Options& opt = {});

/// deg omega'_L = (deg omega'_K)^{[L:K]} deg R_{L/K}.
VerificationReport verify_rh(const Extension& ext, const CanonicalChoice& choice_top = {},
                             const CanonicalChoice& choice_bottom = {}, int prec = kDefaultPrecision);

/// Report serialisation.
std::string csv_header();
std::string to_csv_row(const VerificationReport& r);
std::string to_jsonl(const VerificationReport& r);
std::string table_header();
std::string to_table_row(const VerificationReport& r);

}  // namespace gfw

#endif
