#ifndef GFW_H0_H0_HPP
#define GFW_H0_H0_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gfw/divisors/divisor.hpp"

namespace gfw {

enum class Certification { Exact, IntervalBoundary };

/// H0(D) = {a : phi_P(a) <= N(P)^{a_P} for all P}. When some archimedean
/// boundary test stays undecided, h0 counts the certain members and
/// h0_max adds the undecided ones.
struct MultipleSet {
    Divisor divisor;
    Integer h0;
    Integer h0_max;
    Certification certification = Certification::Exact;
    std::optional<std::vector<FieldElement>> elements;
    /// log_p h0 in positive characteristic, -1 otherwise.
    int dimension = -1;
};

struct H0Options {
    bool want_elements = false;
    /// Elements are only materialised when h0 is at most this.
    std::uint64_t element_limit = 100000;
    /// Enumeration nodes before giving up with TooLargeError.
    std::uint64_t max_nodes = 50'000'000;
    int precision = kDefaultPrecision;
    int max_precision = 4096;
};

/// The fractional ideal {a : v_P(a) >= -a_P at all finite P} of a number
/// field divisor as (1/den) times the lattice spanned by the HNF columns
/// (coordinates in 1, theta, ..., theta^{n-1}).
struct FractionalIdeal {
    IntMatrix basis;
    Integer den;
};
FractionalIdeal divisor_ideal(const Divisor& d);

MultipleSet h0_number_field(const Divisor& d, const H0Options& opt = {});
MultipleSet h0_function_field(const Divisor& d, const H0Options& opt = {});
MultipleSet compute_h0(const Divisor& d, const H0Options& opt = {});

struct OracleLimits {
    std::uint64_t nf_candidates = 10'000;
    std::uint64_t ff_candidates = 200'000;
    int ff_max_degree = 6;
};

/// Brute-force count over a coordinate box (number fields of degree <= 2)
/// or over the whole ansatz space (function fields). Throws TooLargeError
/// past the limits.
Integer h0_oracle(const Divisor& d, const OracleLimits& lim = {});

namespace detail {

enum class Membership { In, Out, Unknown };

/// |sigma_P(a)| <= e^{c} for the archimedean coefficient c, escalating
/// precision and deciding exact boundary cases algebraically.
Membership arch_member(const Place& P, const ArchCoeff& c, const FieldElement& a, int prec, int max_prec);

}  // namespace detail

}  // namespace gfw

#endif
