#ifndef GFW_SRC_H0_INTERNAL_HPP
#define GFW_SRC_H0_INTERNAL_HPP

#include <vector>

#include "gfw/h0/h0.hpp"

namespace gfw::detail {

/// Function field ansatz a = (A + B y) / M with deg A <= dA, deg B <= dB;
/// every a in H0(D) has this shape. `constrained` lists the places whose
/// condition is not implied by the shape.
struct FfAnsatz {
    PolyFp M;
    std::vector<Place> constrained;
    long dA, dB;
};

FfAnsatz ff_ansatz(const Divisor& d);

/// Element for a coefficient vector (A's coefficients, then B's).
FieldElement ansatz_element(const GlobalField& K, const FfAnsatz& an, const std::vector<std::uint64_t>& v);

}  // namespace gfw::detail

#endif
