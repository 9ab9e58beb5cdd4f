"""Classify every catalog ring and contrast the two census sides.

Run: python3 scripts/classify_catalog.py
"""

from ringdichotomy.catalog import catalog_rings
from ringdichotomy.classifier import (
    ArtinianPIR,
    classify_finite,
    count_modules_upto,
    replay_borel_verdict,
)


def main():
    catalog = catalog_rings()
    print(f"{'ring':28}{'size':>5}  verdict")
    for name, ring in catalog.items():
        verdict = classify_finite(ring)
        if isinstance(verdict, ArtinianPIR):
            chains = ", ".join(
                "/".join(str(len(i)) for i in f.chain)
                for f in verdict.factors)
            print(f"{name:28}{ring.size:>5}  PIR  chains {chains}")
        else:
            ok, _ = replay_borel_verdict(ring, verdict)
            w = verdict.witness
            print(f"{name:28}{ring.size:>5}  BorelComplete  "
                  f"witness {w.kind}({w.x},{w.y})  replay={'ok' if ok else 'FAILED'}")

    print()
    print("module classes at order 8 (tame vs wild):")
    for name in ("Z/8", "F2[x,y]/(x2,xy,y2)"):
        census = count_modules_upto(catalog[name], 8)
        print(f"  {name:24}{census[8]}")


if __name__ == "__main__":
    main()
