"""Curated catalog of small commutative rings used by tests and demos."""

from __future__ import annotations

from .rings import zmod, poly_quot, product_ring, f2_xy_square_zero


def catalog_rings():
    """Name -> FiniteRing, orders <= 16, mix of chain and non-chain rings."""
    rings = {}
    for n in (2, 4, 6, 8, 12):
        r = zmod(n)
        rings[r.name] = r
    rings["F4"] = poly_quot(2, [1, 1, 1], name="F4")
    rings["F2[x]/(x2)"] = poly_quot(2, [0, 0, 1], name="F2[x]/(x2)")
    rings["F2[x]/(x3)"] = poly_quot(2, [0, 0, 0, 1], name="F2[x]/(x3)")
    rings["F2[x,y]/(x2,xy,y2)"] = f2_xy_square_zero()
    z2z4 = product_ring([zmod(2), zmod(4)])
    z2z4.name = "Z/2xZ/4"
    rings["Z/2xZ/4"] = z2z4
    return rings
