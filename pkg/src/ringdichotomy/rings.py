"""Finite commutative rings with unit, given by operation tables.

Elements are carrier indices 0..size-1.  Everything is exact and
deterministic; the expensive ops (ideal lattice, spectrum) carry a size
guard because they enumerate aggressively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional


class ShapeError(ValueError):
    """Malformed input tables (wrong shape / index out of range)."""


class GuardError(RuntimeError):
    """A configured size guard refused the computation."""


DEFAULT_MAX_CARRIER = 64


class FiniteRing:
    """Commutative ring with unit on carrier {0, ..., size-1}."""

    def __init__(self, size, add, mul, zero, one, name=None, elem_names=None):
        self.size = size
        self.add_table = [list(row) for row in add]
        self.mul_table = [list(row) for row in mul]
        self.zero = zero
        self.one = one
        self.name = name or f"ring{size}"
        # optional human-readable element names, for witnesses and demos
        self.elem_names = list(elem_names) if elem_names else None
        self._neg = None
        self._add_order = None

    def elements(self):
        return range(self.size)

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        if self._neg is None:
            z = self.zero
            self._neg = [self.add_table[x].index(z) for x in range(self.size)]
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, k):
        r = self.one
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def additive_order(self, a):
        if self._add_order is None:
            self._add_order = [None] * self.size
        if self._add_order[a] is None:
            x, n = a, 1
            while x != self.zero:
                x = self.add(x, a)
                n += 1
            self._add_order[a] = n
        return self._add_order[a]

    def is_unit(self, a):
        one = self.one
        return any(self.mul(a, b) == one for b in self.elements())

    def is_zero_divisor(self, a):
        z = self.zero
        return any(self.mul(a, b) == z for b in self.elements() if b != z)

    def nilpotency_index(self, a):
        """Least k >= 1 with a^k = 0, or 0 if a is not nilpotent."""
        x = a
        for k in range(1, self.size + 1):
            if x == self.zero:
                return k
            x = self.mul(x, a)
        return 0

    def idempotents(self):
        return [e for e in self.elements() if self.mul(e, e) == e]

    def elem_name(self, a):
        if self.elem_names:
            return self.elem_names[a]
        return str(a)

    def __repr__(self):
        return f"FiniteRing({self.name}, size={self.size})"

    def same_tables(self, other):
        return (self.size == other.size and self.zero == other.zero
                and self.one == other.one
                and self.add_table == other.add_table
                and self.mul_table == other.mul_table)

    def to_json(self):
        return {"size": self.size, "add": self.add_table, "mul": self.mul_table,
                "zero": self.zero, "one": self.one}

    @classmethod
    def from_json(cls, obj, name=None):
        for key in ("size", "add", "mul", "zero", "one"):
            if key not in obj:
                raise ShapeError(f"ring object missing {key!r}")
        ring = cls(obj["size"], obj["add"], obj["mul"], obj["zero"], obj["one"],
                   name=name)
        _check_shape(ring)
        return ring


@dataclass(frozen=True)
class Ideal:
    """An ideal as a sorted tuple of carrier indices."""
    ring: FiniteRing = field(compare=False)
    elements: tuple

    def __contains__(self, a):
        return a in set(self.elements)

    def __len__(self):
        return len(self.elements)

    def key(self):
        return (len(self.elements), self.elements)

    def is_proper(self):
        return self.ring.one not in self.elements

    def __repr__(self):
        names = ",".join(self.ring.elem_name(a) for a in self.elements)
        return f"Ideal({{{names}}})"


@dataclass
class AxiomReport:
    ok: bool
    failure: Optional[tuple] = None  # (axiom name, witness tuple)

    def __bool__(self):
        return self.ok


def _check_shape(ring):
    n = ring.size
    if n <= 0:
        raise ShapeError("size must be positive")
    for tbl, label in ((ring.add_table, "add"), (ring.mul_table, "mul")):
        if len(tbl) != n or any(len(row) != n for row in tbl):
            raise ShapeError(f"{label} table is not {n}x{n}")
        for row in tbl:
            for v in row:
                if not isinstance(v, int) or not (0 <= v < n):
                    raise ShapeError(f"{label} entry {v!r} out of range")
    for idx, label in ((ring.zero, "zero"), (ring.one, "one")):
        if not isinstance(idx, int) or not (0 <= idx < n):
            raise ShapeError(f"{label} index out of range")


def check_ring_axioms(ring):
    """Exhaustively verify the commutative-unital-ring axioms.

    Returns an AxiomReport; the first violated axiom comes with a concrete
    witnessing tuple.  Shape problems raise ShapeError instead.
    """
    _check_shape(ring)
    n = ring.size
    els = range(n)
    add, mul, zero, one = ring.add, ring.mul, ring.zero, ring.one
    for a in els:
        if add(zero, a) != a:
            return AxiomReport(False, ("add-identity", (a,)))
        if mul(one, a) != a:
            return AxiomReport(False, ("mul-identity", (a,)))
    for a in els:
        if not any(add(a, b) == zero for b in els):
            return AxiomReport(False, ("add-inverse", (a,)))
    for a, b in itertools.product(els, repeat=2):
        if add(a, b) != add(b, a):
            return AxiomReport(False, ("add-commutative", (a, b)))
        if mul(a, b) != mul(b, a):
            return AxiomReport(False, ("mul-commutative", (a, b)))
    for a, b, c in itertools.product(els, repeat=3):
        if add(add(a, b), c) != add(a, add(b, c)):
            return AxiomReport(False, ("add-associative", (a, b, c)))
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            return AxiomReport(False, ("mul-associative", (a, b, c)))
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            return AxiomReport(False, ("distributive", (a, b, c)))
    if n > 1 and zero == one:
        return AxiomReport(False, ("zero-equals-one", (zero,)))
    return AxiomReport(True)


def ideal_generated(ring, gens):
    """Least ideal containing gens: closure under add and ambient mul."""
    gens = list(gens)
    for g in gens:
        if not (0 <= g < ring.size):
            raise ShapeError(f"generator {g} out of range")
    seen = {ring.zero}
    # multiples first, then additive closure via worklist
    work = [ring.mul(r, g) for g in gens for r in ring.elements()]
    for x in work:
        seen.add(x)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(seen):
                s = ring.add(a, b)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    # additive closure of a set of multiples is already mul-closed, but
    # re-close to be safe for odd inputs
    changed = True
    while changed:
        changed = False
        for a in list(seen):
            for r in ring.elements():
                m = ring.mul(r, a)
                if m not in seen:
                    seen.add(m)
                    changed = True
            for b in list(seen):
                s = ring.add(a, b)
                if s not in seen:
                    seen.add(s)
                    changed = True
    return Ideal(ring, tuple(sorted(seen)))


def all_ideals(ring, max_carrier=DEFAULT_MAX_CARRIER):
    """Every ideal exactly once, sorted by (cardinality, elements).

    Built by closing the principal ideals under pairwise join; every ideal
    of a finite ring is a finite join of principal ones, so this reaches
    the whole lattice.
    """
    if ring.size > max_carrier:
        raise GuardError(
            f"carrier {ring.size} exceeds guard {max_carrier}")
    ideals = {ideal_generated(ring, [a]).elements for a in ring.elements()}
    frontier = set(ideals)
    while frontier:
        nxt = set()
        for a in frontier:
            for b in ideals:
                join = ideal_generated(ring, set(a) | set(b)).elements
                if join not in ideals and join not in nxt:
                    nxt.add(join)
        ideals |= nxt
        frontier = nxt
    out = [Ideal(ring, els) for els in ideals]
    out.sort(key=Ideal.key)
    return out


def annihilator(ring, xs):
    """{a : a x = 0 for all x in xs}; always an ideal."""
    xs = list(xs)
    z = ring.zero
    els = [a for a in ring.elements()
           if all(ring.mul(a, x) == z for x in xs)]
    return Ideal(ring, tuple(els))


def quotient_ring(ring, ideal):
    """Quotient by an ideal: (new ring on cosets, projection list)."""
    iset = set(ideal.elements)
    coset_of = [None] * ring.size
    reps = []
    for a in ring.elements():
        if coset_of[a] is not None:
            continue
        members = sorted(ring.add(a, i) for i in iset)
        idx = len(reps)
        reps.append(members[0])
        for m in members:
            coset_of[m] = idx
    k = len(reps)
    add = [[coset_of[ring.add(reps[i], reps[j])] for j in range(k)]
           for i in range(k)]
    mul = [[coset_of[ring.mul(reps[i], reps[j])] for j in range(k)]
           for i in range(k)]
    q = FiniteRing(k, add, mul, coset_of[ring.zero], coset_of[ring.one],
                   name=f"{ring.name}/I{len(iset)}")
    return q, list(coset_of)


def product_ring(factors):
    """Componentwise product; empty product is the one-element ring."""
    factors = list(factors)
    if not factors:
        return FiniteRing(1, [[0]], [[0]], 0, 0, name="trivial")
    sizes = [r.size for r in factors]
    n = 1
    for s in sizes:
        n *= s

    def unpack(i):
        out = []
        for s in sizes:
            out.append(i % s)
            i //= s
        return out

    def pack(tup):
        i = 0
        for s, v in zip(reversed(sizes), reversed(tup)):
            i = i * s + v
        return i

    tuples = [unpack(i) for i in range(n)]
    add = [[pack([f.add(a, b) for f, a, b in zip(factors, ta, tb)])
            for tb in tuples] for ta in tuples]
    mul = [[pack([f.mul(a, b) for f, a, b in zip(factors, ta, tb)])
            for tb in tuples] for ta in tuples]
    zero = pack([f.zero for f in factors])
    one = pack([f.one for f in factors])
    name = "x".join(f.name for f in factors)
    return FiniteRing(n, add, mul, zero, one, name=name)


@dataclass
class Spectrum:
    maximal_ideals: list
    prime_ideals: list
    nilradical: Ideal
    jacobson_radical: Ideal
    idempotents: list
    jacobson_equals_nilradical: bool


def spectrum(ring, max_carrier=DEFAULT_MAX_CARRIER):
    """Maximal/prime ideals, nilradical, Jacobson radical, idempotents."""
    ideals = all_ideals(ring, max_carrier=max_carrier)
    proper = [i for i in ideals if i.is_proper()]
    maximal = []
    for i in proper:
        iset = set(i.elements)
        if not any(set(i.elements) < set(j.elements) for j in proper
                   if j is not i):
            maximal.append(i)
    primes = []
    for p in proper:
        pset = set(p.elements)
        if all(ring.mul(a, b) not in pset or a in pset or b in pset
               for a, b in itertools.product(ring.elements(), repeat=2)):
            primes.append(p)
    nil = tuple(sorted(a for a in ring.elements()
                       if ring.nilpotency_index(a) > 0))
    jac = set(ring.elements())
    for m in maximal:
        jac &= set(m.elements)
    jac = tuple(sorted(jac))
    return Spectrum(
        maximal_ideals=maximal,
        prime_ideals=primes,
        nilradical=Ideal(ring, nil),
        jacobson_radical=Ideal(ring, jac),
        idempotents=ring.idempotents(),
        jacobson_equals_nilradical=(nil == jac),
    )


@dataclass
class CRTSplit:
    ring: FiniteRing
    idempotents: list          # primitive orthogonal idempotents, sum = 1
    factors: list              # FiniteRing per idempotent (carrier = eR)
    factor_elements: list      # per factor: original indices of its carrier

    def to_factors(self, a):
        """Image of a under the isomorphism onto the product."""
        out = []
        for e, els in zip(self.idempotents, self.factor_elements):
            out.append(els.index(self.ring.mul(e, a)))
        return tuple(out)

    def from_factors(self, tup):
        a = self.ring.zero
        for v, els in zip(tup, self.factor_elements):
            a = self.ring.add(a, els[v])
        return a


def crt_split(ring):
    """Split into local factors along primitive orthogonal idempotents."""
    idem = ring.idempotents()
    idem_set = set(idem)
    primitive = []
    for e in idem:
        if e == ring.zero:
            continue
        below = [f for f in idem
                 if ring.mul(e, f) == f and f not in (ring.zero, e)]
        if not below:
            primitive.append(e)
    # orthogonality and completeness are structural for finite commutative
    # rings; assert rather than trust
    total = ring.zero
    for e in primitive:
        total = ring.add(total, e)
    assert total == ring.one, "primitive idempotents must sum to 1"
    for e, f in itertools.combinations(primitive, 2):
        assert ring.mul(e, f) == ring.zero
    factors = []
    factor_elements = []
    for e in primitive:
        els = sorted({ring.mul(e, a) for a in ring.elements()})
        pos = {a: i for i, a in enumerate(els)}
        k = len(els)
        add = [[pos[ring.add(els[i], els[j])] for j in range(k)]
               for i in range(k)]
        mul = [[pos[ring.mul(els[i], els[j])] for j in range(k)]
               for i in range(k)]
        factors.append(FiniteRing(k, add, mul, pos[ring.zero], pos[e],
                                  name=f"{ring.name}.e{e}"))
        factor_elements.append(els)
    return CRTSplit(ring, primitive, factors, factor_elements)


# ---------------------------------------------------------------------------
# constructors for the catalog


def zmod(n):
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return FiniteRing(n, add, mul, 0, 1 % n, name=f"Z/{n}")


def algebra_from_basis(n, basis_mul, name=None, basis_names=None):
    """Commutative algebra over Z/n on a free basis.

    basis_mul[i][j] is the coefficient vector of (basis_i * basis_j).
    Elements are coefficient tuples, indexed little-endian base n.
    Basis element 0 must be the unit.
    """
    d = len(basis_mul)
    size = n ** d

    def unpack(i):
        out = []
        for _ in range(d):
            out.append(i % n)
            i //= n
        return out

    def pack(vec):
        i = 0
        for v in reversed(vec):
            i = i * n + v % n
        return i

    vecs = [unpack(i) for i in range(size)]
    add = [[pack([(x + y) % n for x, y in zip(va, vb)]) for vb in vecs]
           for va in vecs]
    mul = []
    for va in vecs:
        row = []
        for vb in vecs:
            acc = [0] * d
            for i, ci in enumerate(va):
                if ci == 0:
                    continue
                for j, cj in enumerate(vb):
                    if cj == 0:
                        continue
                    for k, ck in enumerate(basis_mul[i][j]):
                        acc[k] = (acc[k] + ci * cj * ck) % n
            row.append(pack(acc))
        mul.append(row)
    elem_names = None
    if basis_names:
        def vec_name(v):
            terms = []
            for c, b in zip(v, basis_names):
                if c == 0:
                    continue
                if b == "1":
                    terms.append(str(c))
                elif c == 1:
                    terms.append(b)
                else:
                    terms.append(f"{c}{b}")
            return "+".join(terms) if terms else "0"
        elem_names = [vec_name(v) for v in vecs]
    return FiniteRing(size, add, mul, 0, pack([1] + [0] * (d - 1)),
                      name=name or f"alg{n}^{d}", elem_names=elem_names)


def poly_quot(n, modulus, name=None):
    """Z/n[x] modulo a monic polynomial (coefficient list, c[-1] == 1)."""
    if modulus[-1] % n != 1:
        raise ShapeError("modulus must be monic")
    d = len(modulus) - 1
    if d < 1:
        raise ShapeError("modulus must have degree >= 1")

    def reduce_poly(coeffs):
        coeffs = [c % n for c in coeffs]
        while len(coeffs) > d:
            lead = coeffs.pop()
            if lead:
                for i in range(d):
                    coeffs[len(coeffs) - d + i] = (
                        coeffs[len(coeffs) - d + i] - lead * modulus[i]) % n
        coeffs += [0] * (d - len(coeffs))
        return coeffs

    basis_mul = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = [0] * (i + j) + [1]
            row.append(reduce_poly(prod))
        basis_mul.append(row)
    basis_names = ["1", "x"] + [f"x^{k}" for k in range(2, d)]
    return algebra_from_basis(n, basis_mul, name=name or f"Z/{n}[x]/deg{d}",
                              basis_names=basis_names[:d])


def f2_xy_square_zero(name="F2[x,y]/(x2,xy,y2)"):
    """The 8-element local ring with maximal ideal squaring to zero."""
    # basis 1, x, y with all products of x,y equal to 0
    zero = [0, 0, 0]
    basis_mul = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], zero, zero],
        [[0, 0, 1], zero, zero],
    ]
    return algebra_from_basis(2, basis_mul, name=name,
                              basis_names=["1", "x", "y"])


# ---------------------------------------------------------------------------
# brute-force ring isomorphism (test oracle; carriers ~<= 16)


def _ring_profile(ring, a):
    return (ring.additive_order(a),
            ring.is_unit(a),
            ring.mul(a, a) == a,
            ring.nilpotency_index(a),
            len(annihilator(ring, [a])))


def _ring_generators(ring):
    """Greedy generating set under (+, *) starting from 1."""
    def closure(gens):
        seen = {ring.zero, ring.one}
        seen.update(gens)
        changed = True
        while changed:
            changed = False
            cur = list(seen)
            for a in cur:
                for b in cur:
                    for v in (ring.add(a, b), ring.mul(a, b)):
                        if v not in seen:
                            seen.add(v)
                            changed = True
        return seen

    gens = []
    seen = closure(gens)
    while len(seen) < ring.size:
        # prefer high additive order: fewer candidates to try on the other side
        cand = max((a for a in ring.elements() if a not in seen),
                   key=lambda a: (ring.additive_order(a), -a))
        gens.append(cand)
        seen = closure(gens)
    return gens


def ring_isomorphism(a_ring, b_ring):
    """An isomorphism as an index map, or None.  Brute force with pruning."""
    if a_ring.size != b_ring.size:
        return None
    prof_a = sorted(_ring_profile(a_ring, x) for x in a_ring.elements())
    prof_b = sorted(_ring_profile(b_ring, x) for x in b_ring.elements())
    if prof_a != prof_b:
        return None
    gens = _ring_generators(a_ring)

    def extend(mapping):
        """Close mapping under + and *; None on conflict."""
        mapping = dict(mapping)
        work = True
        while work:
            work = False
            items = list(mapping.items())
            for (x1, y1) in items:
                for (x2, y2) in items:
                    for xv, yv in (
                            (a_ring.add(x1, x2), b_ring.add(y1, y2)),
                            (a_ring.mul(x1, x2), b_ring.mul(y1, y2))):
                        if xv in mapping:
                            if mapping[xv] != yv:
                                return None
                        else:
                            mapping[xv] = yv
                            work = True
        if len(set(mapping.values())) != len(mapping):
            return None
        return mapping

    base = {a_ring.zero: b_ring.zero, a_ring.one: b_ring.one}
    base = extend(base)
    if base is None:
        return None

    def search(mapping, i):
        if i == len(gens):
            if len(mapping) == a_ring.size:
                return mapping
            return None
        g = gens[i]
        if g in mapping:
            return search(mapping, i + 1)
        prof = _ring_profile(a_ring, g)
        used = set(mapping.values())
        for img in b_ring.elements():
            if img in used or _ring_profile(b_ring, img) != prof:
                continue
            nxt = extend({**mapping, g: img})
            if nxt is not None:
                res = search(nxt, i + 1)
                if res is not None:
                    return res
        return None

    found = search(base, 0)
    if found is None:
        return None
    return [found[x] for x in a_ring.elements()]
