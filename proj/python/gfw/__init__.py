"""Python bindings: global fields, divisors, h0 and the Riemann-Roch checks."""

from ._gfw import (
    Divisor,
    Field,
    canonical_divisor,
    constants,
    h0,
    h0_oracle,
    verify_rh,
    verify_rr1,
    verify_rr2,
)

__all__ = [
    "Divisor",
    "Field",
    "canonical_divisor",
    "constants",
    "h0",
    "h0_oracle",
    "verify_rh",
    "verify_rr1",
    "verify_rr2",
]
