#ifndef GFW_EXACTNUM_COMPLEX_ROOTS_HPP
#define GFW_EXACTNUM_COMPLEX_ROOTS_HPP

#include <vector>

#include "gfw/exactnum/cert_real.hpp"
#include "gfw/exactnum/poly.hpp"

namespace gfw {

/// A disc {z : |z - center| <= radius} certified to contain exactly one
/// root. Real roots have a real center; for a conjugate pair only the
/// member with positive imaginary part is stored.
struct RootEnclosure {
    bool real;
    Mpfr center_re, center_im, radius;

    /// Square box around the disc.
    CertComplex box() const;
    /// Box around the conjugate disc.
    CertComplex conj_box() const { return box().conj(); }
};

struct RootSet {
    std::vector<RootEnclosure> real_roots;  // ascending
    std::vector<RootEnclosure> pairs;       // by real part, then imaginary part
    int precision = kDefaultPrecision;

    std::size_t size() const { return real_roots.size() + 2 * pairs.size(); }
};

/// Isolates the roots of a squarefree rational polynomial. Roots are first
/// approximated (Aberth iteration, then Newton polishing in interval
/// arithmetic); each approximation z gets the disc of radius
/// deg(f) |f(z)/f'(z)|, which always contains a root, and pairwise
/// disjointness of all discs certifies one root per disc. Real roots are
/// re-centred on the real axis so their discs are conjugation invariant.
/// The radii are below about 2^-precision times the root size.
RootSet complex_roots(const PolyQ& f, int precision = kDefaultPrecision);

/// Interval evaluation of f at a complex enclosure.
CertComplex evaluate(const PolyQ& f, const CertComplex& z);
CertReal evaluate(const PolyQ& f, const CertReal& x);

}  // namespace gfw

#endif
