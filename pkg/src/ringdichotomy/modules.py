"""Finite modules over finite commutative rings, plus tagged variants.

A module is a pair of tables (addition on the carrier, ring action on the
carrier).  A tagged module carries a finite list of distinguished submodules;
positions past the end of the list are implicitly the zero submodule, so two
tag lists that differ only by trailing {0} entries describe the same object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .rings import FiniteRing, GuardError, ShapeError, annihilator

DEFAULT_ISO_GUARD = 10 ** 7
DEFAULT_INDEP_GUARD = 10 ** 6


class Phi0Error(ValueError):
    """The basic shape (submodule tags plus an I-basis) already fails."""


class FiniteModule:
    def __init__(self, ring: FiniteRing, size: int, add, action,
                 zero: int = 0, name: str | None = None):
        self.ring = ring
        self.size = size
        self.add_table = [list(row) for row in add]
        self.act_table = [list(row) for row in action]
        self.zero = zero
        self.name = name
        self._orders: list[int] | None = None

    def elements(self):
        return range(self.size)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def act(self, r: int, a: int) -> int:
        return self.act_table[r][a]

    def neg(self, a: int) -> int:
        return self.act(self.ring.neg(self.ring.one), a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def additive_order(self, a: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.size
        if self._orders[a] == 0:
            n, x = 1, a
            while x != self.zero:
                x = self.add(x, a)
                n += 1
            self._orders[a] = n
        return self._orders[a]

    def __repr__(self):
        label = self.name or f"module({self.size})"
        return f"<{label} over {self.ring.name}>"


def check_module_axioms(mod: FiniteModule):
    """Exhaustive check; returns (ok, failure) with a witness on failure."""
    ring = mod.ring
    n = mod.size
    if len(mod.add_table) != n or any(len(r) != n for r in mod.add_table):
        raise ShapeError("add table is not size x size")
    if len(mod.act_table) != ring.size or \
            any(len(r) != n for r in mod.act_table):
        raise ShapeError("action table is not |R| x size")
    for a in range(n):
        if mod.add(mod.zero, a) != a:
            return False, ("add-identity", (a,))
        if mod.act(ring.one, a) != a:
            return False, ("one-acts-trivially", (a,))
        if mod.act(ring.zero, a) != mod.zero:
            return False, ("zero-kills", (a,))
    for a in range(n):
        for b in range(n):
            if mod.add(a, b) != mod.add(b, a):
                return False, ("add-commutative", (a, b))
            for c in range(n):
                if mod.add(mod.add(a, b), c) != mod.add(a, mod.add(b, c)):
                    return False, ("add-associative", (a, b, c))
    inv = set()
    for a in range(n):
        for b in range(n):
            if mod.add(a, b) == mod.zero:
                inv.add(a)
                break
    if len(inv) != n:
        missing = next(a for a in range(n) if a not in inv)
        return False, ("add-inverse", (missing,))
    for r in ring.elements():
        for s in ring.elements():
            for a in range(n):
                if mod.act(ring.mul(r, s), a) != mod.act(r, mod.act(s, a)):
                    return False, ("action-multiplicative", (r, s, a))
                if mod.act(ring.add(r, s), a) != \
                        mod.add(mod.act(r, a), mod.act(s, a)):
                    return False, ("action-distributes-ring", (r, s, a))
            for a in range(n):
                for b in range(n):
                    if mod.act(r, mod.add(a, b)) != \
                            mod.add(mod.act(r, a), mod.act(r, b)):
                        return False, ("action-distributes-module", (r, a, b))
    return True, None


# ---------------------------------------------------------------------------
# constructors


def ring_as_module(ring: FiniteRing) -> FiniteModule:
    add = [[ring.add(a, b) for b in ring.elements()] for a in ring.elements()]
    act = [[ring.mul(r, a) for a in ring.elements()] for r in ring.elements()]
    return FiniteModule(ring, ring.size, add, act, ring.zero,
                        name=f"{ring.name} as module")


def free_module(ring: FiniteRing, rank: int, max_carrier: int = 4096):
    """Free module R^rank with coordinates packed little-endian base |R|.

    Returns (module, basis) where basis[i] is the i-th unit vector.
    """
    n = ring.size
    size = n ** rank
    if size > max_carrier:
        raise GuardError(f"free module carrier {size} exceeds {max_carrier}")

    def unpack(a):
        out = []
        for _ in range(rank):
            a, c = divmod(a, n)
            out.append(c)
        return out

    def pack(cs):
        a = 0
        for c in reversed(cs):
            a = a * n + c
        return a

    add = [[0] * size for _ in range(size)]
    act = [[0] * size for _ in range(n)]
    vecs = [unpack(a) for a in range(size)]
    for a in range(size):
        for b in range(size):
            add[a][b] = pack([ring.add(x, y)
                              for x, y in zip(vecs[a], vecs[b])])
    for r in range(n):
        for a in range(size):
            act[r][a] = pack([ring.mul(r, x) for x in vecs[a]])
    mod = FiniteModule(ring, size, add, act, 0,
                       name=f"{ring.name}^{rank}")
    basis = [pack([ring.one if i == j else ring.zero for j in range(rank)])
             for i in range(rank)]
    return mod, basis


def product_module(m0: FiniteModule, m1: FiniteModule):
    """Direct sum of two modules over the same ring.

    Returns (module, pair_to_index, index_to_pair).
    """
    if m0.ring is not m1.ring and not m0.ring.same_tables(m1.ring):
        raise ShapeError("product of modules over different rings")
    ring = m0.ring
    size = m0.size * m1.size

    def pack(a, b):
        return a * m1.size + b

    def unpack(c):
        return divmod(c, m1.size)

    add = [[0] * size for _ in range(size)]
    act = [[0] * size for _ in range(ring.size)]
    for a0 in range(m0.size):
        for a1 in range(m1.size):
            i = pack(a0, a1)
            for b0 in range(m0.size):
                for b1 in range(m1.size):
                    add[i][pack(b0, b1)] = pack(m0.add(a0, b0),
                                                m1.add(a1, b1))
            for r in ring.elements():
                act[r][i] = pack(m0.act(r, a0), m1.act(r, a1))
    zero = pack(m0.zero, m1.zero)
    mod = FiniteModule(ring, size, add, act, zero, name="product")
    return mod, pack, unpack


def submodule_generated(mod: FiniteModule, gens) -> tuple:
    seen = {mod.zero}
    frontier = [mod.zero]
    for g in gens:
        if g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        a = frontier.pop()
        for r in mod.ring.elements():
            b = mod.act(r, a)
            if b not in seen:
                seen.add(b)
                frontier.append(b)
        for b in list(seen):
            c = mod.add(a, b)
            if c not in seen:
                seen.add(c)
                frontier.append(c)
    # one more closure sweep in case late arrivals missed pairings
    changed = True
    while changed:
        changed = False
        for a in list(seen):
            for b in list(seen):
                c = mod.add(a, b)
                if c not in seen:
                    seen.add(c)
                    changed = True
    return tuple(sorted(seen))


def quotient_module(mod: FiniteModule, sub):
    """Quotient by a submodule.  Returns (module, proj list)."""
    subset = set(sub)
    coset_of = [None] * mod.size
    reps = []
    for a in range(mod.size):
        if coset_of[a] is not None:
            continue
        members = sorted(mod.add(a, s) for s in subset)
        idx = len(reps)
        reps.append(members[0])
        for m in members:
            coset_of[m] = idx
    size = len(reps)
    add = [[coset_of[mod.add(reps[i], reps[j])] for j in range(size)]
           for i in range(size)]
    act = [[coset_of[mod.act(r, reps[i])] for i in range(size)]
           for r in mod.ring.elements()]
    q = FiniteModule(mod.ring, size, add, act, coset_of[mod.zero],
                     name=f"{mod.name or 'module'}/sub")
    return q, coset_of


# ---------------------------------------------------------------------------
# the small kernels everything downstream leans on


def element_annihilator(mod: FiniteModule, a: int) -> tuple:
    return tuple(r for r in mod.ring.elements()
                 if mod.act(r, a) == mod.zero)


def delta_set(mod: FiniteModule, ideal_elements) -> tuple:
    """Nonzero elements whose annihilator is exactly the given ideal."""
    want = tuple(sorted(ideal_elements))
    return tuple(a for a in mod.elements()
                 if a != mod.zero and element_annihilator(mod, a) == want)


def r_star(mod: FiniteModule, ys) -> tuple:
    """All nonzero multiples ry with y in the given set."""
    out = set()
    for y in ys:
        for r in mod.ring.elements():
            v = mod.act(r, y)
            if v != mod.zero:
                out.add(v)
    return tuple(sorted(out))


def sim_classes(mod: FiniteModule, elems):
    """Group elements by the cyclic submodule they generate (Ru == Rv)."""
    buckets = {}
    for u in elems:
        key = tuple(sorted(mod.act(r, u) for r in mod.ring.elements()))
        buckets.setdefault(key, []).append(u)
    return [tuple(sorted(v)) for _, v in sorted(buckets.items())]


def is_I_independent(mod: FiniteModule, ideal_elements, xs,
                     guard: int = DEFAULT_INDEP_GUARD):
    """Check: a combination sum r_i x_i vanishes iff every r_i lies in I.

    Returns (True, None) or (False, witness) where witness is the offending
    coefficient tuple.  Refuses (GuardError) rather than guessing when the
    coefficient space is too large.
    """
    xs = list(xs)
    ring = mod.ring
    ideal = set(ideal_elements)
    total = ring.size ** len(xs)
    if total > guard:
        raise GuardError(
            f"independence scan needs {total} coefficient tuples "
            f"(> {guard}); refusing rather than answering")
    for coeffs in itertools.product(ring.elements(), repeat=len(xs)):
        acc = mod.zero
        for r, x in zip(coeffs, xs):
            acc = mod.add(acc, mod.act(r, x))
        vanishes = acc == mod.zero
        all_in = all(r in ideal for r in coeffs)
        if vanishes != all_in:
            return False, coeffs
    return True, None


# ---------------------------------------------------------------------------
# tagged modules


@dataclass
class TaggedModule:
    module: FiniteModule
    tags: tuple

    def __post_init__(self):
        zero_tag = (self.module.zero,)
        tags = [tuple(sorted(set(t))) for t in self.tags]
        while tags and tags[-1] == zero_tag:
            tags.pop()
        self.tags = tuple(tags)

    def tag(self, n: int) -> tuple:
        if n < len(self.tags):
            return self.tags[n]
        return (self.module.zero,)

    def tag_union(self):
        out = set()
        for t in self.tags:
            out.update(t)
        out.discard(self.module.zero)
        return out


def padded_tags(a: TaggedModule, b: TaggedModule):
    n = max(len(a.tags), len(b.tags))
    return ([a.tag(i) for i in range(n)], [b.tag(i) for i in range(n)])


def check_phi0(tagged: TaggedModule, xs, ideal_elements,
               guard: int = DEFAULT_INDEP_GUARD) -> None:
    """Tags are submodules, X is an I-basis.  Raises Phi0Error on failure."""
    mod = tagged.module
    for n, t in enumerate(tagged.tags):
        if tuple(sorted(t)) != submodule_generated(mod, t):
            raise Phi0Error(f"tag {n} is not a submodule")
    ok, witness = is_I_independent(mod, ideal_elements, xs, guard)
    if not ok:
        raise Phi0Error(f"generators not I-independent, witness {witness}")
    if submodule_generated(mod, xs) != tuple(sorted(mod.elements())):
        raise Phi0Error("generators do not span the module")


def check_phi1(tagged: TaggedModule, xs, ideal_elements,
               guard: int = DEFAULT_INDEP_GUARD) -> bool:
    """The basis/tag compatibility condition.

    For every a with Ann(a) exactly I: a is a nonzero multiple of a
    generator iff a avoids every tag.  Computed two ways (pointwise
    biconditional, and the set identity R*X == R*(Delta minus tags)) which
    must agree; a mismatch means the implementation is broken, not the input.
    """
    mod = tagged.module
    check_phi0(tagged, xs, ideal_elements, guard)
    delta = delta_set(mod, ideal_elements)
    rx = set(r_star(mod, xs))
    tag_union = tagged.tag_union()
    bicond = all((a in rx) == (a not in tag_union) for a in delta)
    residue = [a for a in delta if a not in tag_union]
    identity = rx == set(r_star(mod, residue))
    if bicond != identity:
        raise RuntimeError(
            "phi1 cross-check diverged; biconditional and set identity "
            "must agree on a module passing phi0")
    return bicond


# ---------------------------------------------------------------------------
# brute-force tagged isomorphism


def _profiles(tagged: TaggedModule, tags):
    mod = tagged.module
    out = []
    for a in mod.elements():
        ann = element_annihilator(mod, a)
        orbit = {mod.act(r, a) for r in mod.ring.elements()}
        out.append((mod.additive_order(a),
                    tuple(a in t for t in tags),
                    len(ann), len(orbit)))
    return out


def _greedy_generators(mod: FiniteModule):
    gens = []
    span = {mod.zero}
    while len(span) < mod.size:
        best = max((a for a in mod.elements() if a not in span),
                   key=mod.additive_order)
        gens.append(best)
        span = set(submodule_generated(mod, gens))
    return gens


def brute_force_isomorphic(a: TaggedModule, b: TaggedModule,
                           guard: int = DEFAULT_ISO_GUARD):
    """Search for a tag-preserving module isomorphism.

    Returns the element map (list) or None.  Tag lists are compared
    indexwise after zero-padding.  Refuses with GuardError when the
    backtracking budget provably exceeds the guard.
    """
    am, bm = a.module, b.module
    if am.size != bm.size:
        return None
    if not am.ring.same_tables(bm.ring):
        return None
    atags, btags = padded_tags(a, b)
    if [len(t) for t in atags] != [len(t) for t in btags]:
        return None
    aprof = _profiles(a, atags)
    bprof = _profiles(b, btags)
    if sorted(aprof) != sorted(bprof):
        return None

    gens = _greedy_generators(am)
    candidates = [[x for x in bm.elements() if bprof[x] == aprof[g]]
                  for g in gens]
    budget = 1
    for c in candidates:
        budget *= max(len(c), 1)
    if budget > guard:
        raise GuardError(
            f"isomorphism search space {budget} exceeds {guard}")

    ring = am.ring

    def close(mapping):
        """Extend a generator assignment to the full hom closure."""
        done = dict(mapping)
        done[am.zero] = bm.zero
        frontier = list(done)
        while frontier:
            x = frontier.pop()
            fx = done[x]
            for r in ring.elements():
                y, fy = am.act(r, x), bm.act(r, fx)
                if y in done:
                    if done[y] != fy:
                        return None
                else:
                    done[y] = fy
                    frontier.append(y)
            for z in list(done):
                y, fy = am.add(x, z), bm.add(fx, done[z])
                if y in done:
                    if done[y] != fy:
                        return None
                else:
                    done[y] = fy
                    frontier.append(y)
        return done

    def search(i, mapping):
        if i == len(gens):
            done = close(mapping)
            if done is None or len(done) != am.size:
                return None
            if len(set(done.values())) != am.size:
                return None
            for x, fx in done.items():
                for t_a, t_b in zip(atags, btags):
                    if (x in t_a) != (fx in t_b):
                        return None
            return [done[x] for x in range(am.size)]
        used = set(mapping.values())
        for img in candidates[i]:
            if img in used:
                continue
            mapping[gens[i]] = img
            partial = close(mapping)
            if partial is not None:
                result = search(i + 1, mapping)
                if result is not None:
                    return result
            del mapping[gens[i]]
        return None

    return search(0, {})
