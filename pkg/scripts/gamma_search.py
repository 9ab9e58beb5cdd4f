"""Search for certificate-independent gamma families at several depths
and show the membership test on a coded lattice.

The size-3 search at depth 16 stalls for a counting reason: ten
monomials of degree <= 2 admit 4^10 height-3 coefficient vectors but
only 2^16 residues, so some nonzero polynomial vanishes on every
candidate triple.  Depth 32 clears the obstruction.

Run: python3 scripts/gamma_search.py
"""

from ringdichotomy.radic import (
    FreeTagged,
    IntCatalog,
    code_freelike,
    greedy_gamma_family,
    mkchar_test,
)
from ringdichotomy.rings import ShapeError

CAT = IntCatalog(2)


def main():
    for m in (8, 16, 32):
        for size in (1, 2, 3):
            try:
                gammas, cert = greedy_gamma_family(CAT, size, m=m)
            except ShapeError as exc:
                print(f"m={m:<3} size={size}: {exc}")
                continue
            vals = [g.value(CAT).value for g in gammas]
            pats = [sorted(g.s) for g in gammas]
            print(f"m={m:<3} size={size}: values {vals}  "
                  f"patterns {pats}  "
                  f"({cert.polynomials_checked} polynomials checked)")

    print()
    gammas, cert = greedy_gamma_family(CAT, 2, m=16)
    inst = FreeTagged(2, (((1, 0), (0, 1)), ((1, 1),)))
    rep = code_freelike(inst, gammas, cert, CAT, 16)
    print("membership in the diagonal tag of Z^2:")
    for q in ((1, 1), (2, 2), (1, 0), (3, 5)):
        ans = mkchar_test(rep, 1, q)
        print(f"  {q}: {ans.verdict} (saturation exponent {ans.j})")


if __name__ == "__main__":
    main()
