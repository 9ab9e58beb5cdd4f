"""Finite commutative ring dichotomy toolkit.

Exact table arithmetic for finite commutative rings, tagged modules, the
chain-ring classifier, and executable coders/decoders for the module
reductions that witness the wild side of the dichotomy.
"""

from .rings import (
    FiniteRing,
    Ideal,
    GuardError,
    ShapeError,
    check_ring_axioms,
    ideal_generated,
    all_ideals,
    annihilator,
    quotient_ring,
    product_ring,
    spectrum,
    crt_split,
)

__all__ = [
    "FiniteRing",
    "Ideal",
    "GuardError",
    "ShapeError",
    "check_ring_axioms",
    "ideal_generated",
    "all_ideals",
    "annihilator",
    "quotient_ring",
    "product_ring",
    "spectrum",
    "crt_split",
]
