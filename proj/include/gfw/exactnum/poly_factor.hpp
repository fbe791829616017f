#ifndef GFW_EXACTNUM_POLY_FACTOR_HPP
#define GFW_EXACTNUM_POLY_FACTOR_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gfw/exactnum/poly.hpp"

namespace gfw {

struct FpFactor {
    PolyFp factor;  // monic irreducible
    int multiplicity;
};

/// Complete factorization over F_p: squarefree decomposition, distinct
/// degree splitting, then Cantor-Zassenhaus equal degree splitting driven
/// by a fixed-seed generator. Factors are monic and sorted by degree then
/// by coefficients (top down); the unit is dropped.
std::vector<FpFactor> poly_factor_mod_p(const PolyFp& f);

bool is_irreducible(const PolyFp& f);

/// Squarefree decomposition f = lead * prod g_i^i, returned as (g_i, i).
std::vector<FpFactor> squarefree_decomposition(const PolyFp& f);

/// Square root of a in F_p[t]/(pi), pi monic irreducible; nullopt for
/// non-squares. Returns the root r with canonical_less(r, -r) so the
/// answer is deterministic.
std::optional<PolyFp> sqrt_mod(const PolyFp& a, const PolyFp& pi);

/// Monic irreducibles of F_p[t] of the given degree, in canonical order.
std::vector<PolyFp> monic_irreducibles(const PrimeField& k, int degree);

}  // namespace gfw

#endif
