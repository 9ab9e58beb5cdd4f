"""Truncated inverse-limit arithmetic and the pure-closure coding.

Everything here is depth-parametric: R-hat = lim R/(r^m) is replaced by
R/(r^m) at an explicit depth m, equality means congruence mod (r^m), and
every membership answer carries its (depth, division budget) provenance.

Two catalog pairs (R, r) are supported, both with decidable normal forms
and a Euclidean lift for exact linear solving:

  * R = Z with r a prime p: residues are ints mod p^m,
  * R = Z/p[x] with r = x, p prime: residues are coefficient tuples mod
    x^m.

The gamma family sigma_s (s a finite set of exponents, value
sum_{i in s, i < m} r^i) supplies the almost-independent scalars; bounded
algebraic-independence certificates are produced by exhausting every
nonzero polynomial within a (degree, coefficient height) box.  The coder
turns a finite-rank tagged free module into a generator presentation of
the smallest r-pure submodule containing the standard lattice and the
gamma-scaled tags; tag membership is then re-read off the presentation
alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .rings import GuardError, ShapeError


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


# ---------------------------------------------------------------------------
# catalogs: residues mod r^m plus the Euclidean lift


@dataclass(frozen=True)
class IntCatalog:
    """R = Z, r = p.  Residues mod p^m are canonical ints in [0, p^m)."""

    p: int = 2

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ShapeError(f"{self.p} is not prime")
        # r = p is central, a non-unit and not a zero divisor in Z, and
        # the powers (p^m) intersect in 0: the catalog hypotheses hold

    @property
    def name(self):
        return f"Z(r={self.p})"

    def reduce(self, v, m):
        return v % self.p ** m

    def zero(self, m):
        return 0

    def one(self, m):
        return 1

    def add(self, a, b, m):
        return (a + b) % self.p ** m

    def neg(self, a, m):
        return -a % self.p ** m

    def mul(self, a, b, m):
        return (a * b) % self.p ** m

    def r_power(self, j, m):
        return self.reduce(self.p ** j, m)

    def valuation(self, a, m):
        """Largest j <= m with r^j dividing a; the zero residue gets m."""
        a = self.reduce(a, m)
        if a == 0:
            return m
        j = 0
        while a % self.p == 0:
            a //= self.p
            j += 1
        return j

    def exact_divide(self, a, j, m):
        """a / r^j at depth m - j; a must be divisible by r^j."""
        a = self.reduce(a, m)
        if a % self.p ** j:
            raise ShapeError(f"{a} is not divisible by r^{j}")
        return a // self.p ** j

    def epsilon(self, s, m):
        return self.reduce(sum(self.p ** i for i in s if i < m), m)

    def coefficients(self, height):
        """The height-bounded scalars of R for polynomial enumeration."""
        return range(-height, height + 1)

    def coeff_reduce(self, c, m):
        return self.reduce(c, m)

    # Euclidean lift: plain integers
    def lift_zero(self):
        return 0

    def lift_is_zero(self, a):
        return a == 0

    def lift_sub(self, a, b):
        return a - b

    def lift_mul(self, a, b):
        return a * b

    def lift_divmod(self, a, b):
        return divmod(a, b)

    def lift_size(self, a):
        return abs(a)

    def lift_modulus(self, m):
        return self.p ** m

    def format(self, a, m):
        return str(self.reduce(a, m))


@dataclass(frozen=True)
class PolyCatalog:
    """R = Z/p[x], r = x.  Residues mod x^m are coefficient tuples of
    length m, constant term first."""

    p: int = 2

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ShapeError(f"{self.p} is not prime")

    @property
    def name(self):
        return f"Z/{self.p}[x](r=x)"

    def reduce(self, v, m):
        v = tuple(c % self.p for c in v[:m])
        return v + (0,) * (m - len(v))

    def zero(self, m):
        return (0,) * m

    def one(self, m):
        return self.reduce((1,), m)

    def add(self, a, b, m):
        return tuple((x + y) % self.p for x, y in
                     zip(self.reduce(a, m), self.reduce(b, m)))

    def neg(self, a, m):
        return tuple(-x % self.p for x in self.reduce(a, m))

    def mul(self, a, b, m):
        a, b = self.reduce(a, m), self.reduce(b, m)
        out = [0] * m
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if i + j < m:
                        out[i + j] = (out[i + j] + x * y) % self.p
        return tuple(out)

    def r_power(self, j, m):
        return self.reduce((0,) * j + (1,), m)

    def valuation(self, a, m):
        a = self.reduce(a, m)
        for j, c in enumerate(a):
            if c:
                return j
        return m

    def exact_divide(self, a, j, m):
        a = self.reduce(a, m)
        if any(a[:j]):
            raise ShapeError(f"{a} is not divisible by r^{j}")
        return self.reduce(a[j:], m - j)

    def epsilon(self, s, m):
        out = [0] * m
        for i in s:
            if i < m:
                out[i] = (out[i] + 1) % self.p
        return tuple(out)

    def coefficients(self, height):
        """Scalars of R with degree <= height (all residue coefficients)."""
        for coeffs in itertools.product(range(self.p), repeat=height + 1):
            yield coeffs

    def coeff_reduce(self, c, m):
        return self.reduce(tuple(c), m)

    # Euclidean lift: Z/p[x] as trimmed coefficient tuples
    def lift_zero(self):
        return ()

    def _trim(self, a):
        a = [c % self.p for c in a]
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    def lift_is_zero(self, a):
        return not self._trim(a)

    def lift_sub(self, a, b):
        n = max(len(a), len(b))
        a = tuple(a) + (0,) * (n - len(a))
        b = tuple(b) + (0,) * (n - len(b))
        return self._trim([x - y for x, y in zip(a, b)])

    def lift_mul(self, a, b):
        a, b = self._trim(a), self._trim(b)
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % self.p
        return self._trim(out)

    def lift_divmod(self, a, b):
        a, b = list(self._trim(a)), self._trim(b)
        if not b:
            raise ZeroDivisionError
        inv = pow(b[-1], -1, self.p)
        q = [0] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b) and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            c = a[-1] * inv % self.p
            d = len(a) - len(b)
            q[d] = c
            for i, y in enumerate(b):
                a[d + i] = (a[d + i] - c * y) % self.p
            while a and a[-1] == 0:
                a.pop()
        return self._trim(q), self._trim(a)

    def lift_size(self, a):
        return len(self._trim(a))

    def lift_modulus(self, m):
        return (0,) * m + (1,)

    def format(self, a, m):
        return ",".join(str(c) for c in self.reduce(a, m))


# ---------------------------------------------------------------------------
# truncated elements and arithmetic


@dataclass(frozen=True)
class Truncated:
    cat: object
    m: int
    value: object

    def __post_init__(self):
        if self.m < 1:
            raise ShapeError("depth must be positive")
        object.__setattr__(self, "value",
                           self.cat.reduce(self.value, self.m))


def _match(a: Truncated, b: Truncated):
    if a.cat != b.cat or a.m != b.m:
        raise ShapeError(f"depth/catalog mismatch: ({a.cat.name}, {a.m}) "
                         f"vs ({b.cat.name}, {b.m})")


def truncated_add(a: Truncated, b: Truncated) -> Truncated:
    _match(a, b)
    return Truncated(a.cat, a.m, a.cat.add(a.value, b.value, a.m))


def truncated_sub(a: Truncated, b: Truncated) -> Truncated:
    _match(a, b)
    return Truncated(a.cat, a.m,
                     a.cat.add(a.value, a.cat.neg(b.value, a.m), a.m))


def truncated_mul(a: Truncated, b: Truncated) -> Truncated:
    _match(a, b)
    return Truncated(a.cat, a.m, a.cat.mul(a.value, b.value, a.m))


def project(a: Truncated, k: int) -> Truncated:
    """Reduce to a shallower depth; deeper values project consistently."""
    if not 1 <= k <= a.m:
        raise ShapeError(f"cannot project depth {a.m} to {k}")
    return Truncated(a.cat, k, a.cat.reduce(a.value, k))

def r_divisible(a: Truncated, n: int) -> bool:
    """a in r^n * (depth-m elements), by the depth-n vanishing criterion."""
    if not 0 <= n <= a.m:
        raise ShapeError(f"exponent {n} out of range at depth {a.m}")
    return a.cat.valuation(a.value, a.m) >= n


def r_divide(a: Truncated, n: int) -> Truncated:
    """Exact division by r^n; the result lives at depth m - n."""
    if not r_divisible(a, n):
        raise ShapeError("not divisible")
    if n >= a.m:
        raise ShapeError("division would exhaust the depth")
    return Truncated(a.cat, a.m - n, a.cat.exact_divide(a.value, n, a.m))


# ---------------------------------------------------------------------------
# the gamma family


@dataclass(frozen=True)
class GammaElement:
    """sigma_s at depth m: value sum_{i in s, i < m} r^i mod r^m."""

    s: frozenset
    m: int

    def __post_init__(self):
        object.__setattr__(self, "s", frozenset(self.s))
        if any(i < 0 for i in self.s):
            raise ShapeError("exponents must be nonnegative")

    def value(self, cat) -> Truncated:
        return Truncated(cat, self.m, cat.epsilon(self.s, self.m))

    def truncate(self, k) -> "GammaElement":
        if k > self.m:
            raise ShapeError("cannot deepen a gamma element")
        return GammaElement(self.s, k)

    def key(self):
        return tuple(sorted(self.s))


def default_gamma_family(size: int, m: int):
    """s-patterns with growing gaps: {0}, {0,3}, {0,3,7}, {0,3,7,12}, ..."""
    out = []
    s = []
    step = 3
    nxt = 0
    for _ in range(size):
        s.append(nxt)
        nxt += step
        step += 1
        out.append(GammaElement(frozenset(s), m))
    return out


# ---------------------------------------------------------------------------
# exact span solving through the Euclidean lift


def _lift_solve(cat, columns, target):
    """Does sum_i z_i * col_i = target have a solution over the lift?

    columns and target are tuples of lift elements.  Column gcd
    elimination to echelon form, then forward substitution.
    """
    if not columns:
        return all(cat.lift_is_zero(t) for t in target)
    k = len(target)
    cols = [list(c) for c in columns]
    t = list(target)
    row = 0
    pivots = []
    while row < k and cols:
        live = [c for c in cols if not cat.lift_is_zero(c[row])]
        while len(live) > 1:
            live.sort(key=lambda c: cat.lift_size(c[row]))
            small, big = live[0], live[1]
            q, _ = cat.lift_divmod(big[row], small[row])
            for i in range(k):
                big[i] = cat.lift_sub(big[i], cat.lift_mul(q, small[i]))
            live = [c for c in live if not cat.lift_is_zero(c[row])]
        if live:
            pivot = live[0]
            pivots.append((row, pivot))
            cols = [c for c in cols if c is not pivot]
        row += 1
    for row, pivot in pivots:
        if cat.lift_is_zero(t[row]):
            continue
        q, rem = cat.lift_divmod(t[row], pivot[row])
        if not cat.lift_is_zero(rem):
            return False
        for i in range(k):
            t[i] = cat.lift_sub(t[i], cat.lift_mul(q, pivot[i]))
    return all(cat.lift_is_zero(x) for x in t)


def span_contains(cat, m, generators, vector) -> bool:
    """Is the vector in the R-span of the generators mod r^m?

    Vectors are tuples of residues at depth m; the question is lifted to
    the Euclidean domain with r^m-multiple columns adjoined, so the
    answer is exact.
    """
    if not vector:
        return True
    k = len(vector)
    cols = []
    for g in generators:
        if len(g) != k:
            raise ShapeError("generator rank mismatch")
        cols.append(tuple(cat.reduce(x, m) for x in g))
    modulus = cat.lift_modulus(m)
    zero = cat.lift_zero()
    for i in range(k):
        cols.append(tuple(modulus if j == i else zero for j in range(k)))
    target = tuple(cat.reduce(x, m) for x in vector)
    return _lift_solve(cat, cols, target)


# ---------------------------------------------------------------------------
# bounded independence certificates


@dataclass(frozen=True)
class IndependenceCertificate:
    gamma_keys: tuple  # sorted exponent tuples, one per gamma
    degree: int
    height: int
    depth: int
    polynomials_checked: int


@dataclass(frozen=True)
class IndependenceCounterexample:
    poly: tuple  # ((exponent tuple, coefficient), ...) nonzero entries
    depth: int


def _monomials(n_vars, degree):
    out = []
    for exps in itertools.product(range(degree + 1), repeat=n_vars):
        if sum(exps) <= degree:
            out.append(exps)
    return sorted(out)


def independence_certificate(cat, gammas, degree: int = 2,
                             height: int = 3, m: int = 16,
                             guard: int = 10 ** 7):
    """Exhaust every nonzero polynomial in the (degree, height) box.

    Returns an IndependenceCertificate when no bounded polynomial kills
    the gamma tuple mod r^m, or the violating polynomial.  The
    certificate is an explicitly bounded notion, weaker than full
    algebraic independence.
    """
    gammas = list(gammas)
    if len({g.key() for g in gammas}) != len(gammas):
        raise ShapeError("gamma elements must be distinct")
    for g in gammas:
        if g.m < m:
            raise ShapeError(f"gamma at depth {g.m} is too shallow for "
                             f"depth {m}")
    if not gammas:
        return IndependenceCertificate((), degree, height, m, 0)
    values = [cat.reduce(g.value(cat).value, m) for g in gammas]
    mons = _monomials(len(gammas), degree)
    mon_values = []
    for exps in mons:
        v = cat.one(m)
        for val, e in zip(values, exps):
            for _ in range(e):
                v = cat.mul(v, val, m)
        mon_values.append(v)
    coeffs = [cat.coeff_reduce(c, m) for c in cat.coefficients(height)]
    coeffs = sorted(set(coeffs))
    total = len(coeffs) ** len(mons)
    half = len(mons) // 2
    mitm_cost = len(coeffs) ** max(half, len(mons) - half)
    if mitm_cost > guard:
        raise GuardError(f"certificate search {mitm_cost} exceeds guard")

    def sums(idx):
        """(value sum, coefficient tuple) over all assignments to idx."""
        out = [(cat.zero(m), ())]
        for i in idx:
            nxt = []
            for v, cs in out:
                for c in coeffs:
                    nxt.append((cat.add(v, cat.mul(c, mon_values[i], m),
                                        m), cs + (c,)))
            out = nxt
        return out

    lo, hi = list(range(half)), list(range(half, len(mons)))
    table = {}
    for v, cs in sums(lo):
        nonzero = any(c != cat.zero(m) for c in cs)
        if v not in table or (nonzero and not table[v][1]):
            table[v] = (cs, nonzero)
    checked = 0
    for v, cs in sums(hi):
        checked += len(table)
        want = cat.neg(v, m)
        if want not in table:
            continue
        lo_cs, lo_nonzero = table[want]
        if not lo_nonzero and all(c == cat.zero(m) for c in cs):
            continue
        full = lo_cs + cs
        entries = tuple((mons[i], c) for i, c in enumerate(full)
                        if c != cat.zero(m))
        # replay: the polynomial really vanishes
        acc = cat.zero(m)
        for exps, c in entries:
            acc = cat.add(acc, cat.mul(c, mon_values[mons.index(exps)],
                                       m), m)
        assert acc == cat.zero(m)
        return IndependenceCounterexample(entries, m)
    return IndependenceCertificate(tuple(g.key() for g in gammas),
                                   degree, height, m, total - 1)


def _gamma_candidates(m):
    """Growing-gap exponent patterns, nested prefixes from each start."""
    for start in range(m):
        s, nxt, step = [], start, 3
        while nxt < m:
            s.append(nxt)
            yield GammaElement(frozenset(s), m)
            nxt += step
            step += 1


def greedy_gamma_family(cat, size: int, degree: int = 2, height: int = 3,
                        m: int = 16):
    """Grow a certified family greedily along the gap-pattern stream.

    Candidates whose addition breaks certification are skipped (the
    stream starts at {0}, whose sigma value 1 already lies in R, so
    skipping is the normal case, not the exception).  Returns (gammas,
    certificate); raises when the stream runs out first, which is a real
    obstruction at shallow depth: (height+1)^#monomials coefficient
    boxes pigeonhole into the r^m residues once m is small.
    """
    chosen = []
    cert = independence_certificate(cat, [], degree, height, m)
    for cand in _gamma_candidates(m):
        if len(chosen) == size:
            break
        res = independence_certificate(cat, chosen + [cand], degree,
                                       height, m)
        if isinstance(res, IndependenceCounterexample):
            continue
        chosen.append(cand)
        cert = res
    if len(chosen) < size:
        raise ShapeError(f"greedy search stalled at {len(chosen)} of "
                         f"{size} at depth {m}")
    return chosen, cert


# ---------------------------------------------------------------------------
# pure closure membership


@dataclass(frozen=True)
class MembershipAnswer:
    verdict: object  # True, False, or "unknown"
    j: object        # division exponent for positive answers
    depth: int
    budget: int

    def __bool__(self):
        return self.verdict is True


@dataclass(frozen=True)
class PureSubmoduleRep:
    """Generator presentation of the smallest r-pure submodule containing
    the standard lattice and the gamma-scaled tag generators.

    Elements are kept formal: a vector has one block of rank coordinates
    for its R-part and one block per gamma for its gamma_n-part, so a
    generator tuple has rank * (1 + len(gammas)) residues.  Formality is
    what lets membership distinguish gamma_n * a from the plain lattice;
    collapsing gamma to its depth-m residue would let the standard basis
    absorb everything.  The independence certificate is what entitles
    the formal computation to speak for the evaluated one.
    """

    cat: object
    rank: int
    m: int
    generators: tuple  # formal vectors, rank * (1 + len(gammas)) residues
    gammas: tuple      # GammaElement per tag, aligned with the coder
    budget: int = 4

    def width(self):
        return self.rank * (1 + len(self.gammas))

    def formal(self, vec, slot: int):
        """A rank-length vector placed in one block (0 = the R-part,
        n + 1 = the gamma_n part)."""
        if len(vec) != self.rank:
            raise ShapeError("vector rank mismatch")
        if not 0 <= slot <= len(self.gammas):
            raise ShapeError(f"no block {slot}")
        out = [self.cat.zero(self.m)] * self.width()
        for i, x in enumerate(vec):
            out[slot * self.rank + i] = self.cat.reduce(x, self.m)
        return tuple(out)

    def evaluate(self, formal_vec):
        """Collapse a formal vector to depth-m residues: R-part plus
        sum of gamma_n times the gamma_n part."""
        cat, m = self.cat, self.m
        out = list(formal_vec[:self.rank])
        for n, g in enumerate(self.gammas):
            gval = cat.reduce(g.value(cat).value, m)
            for i in range(self.rank):
                x = formal_vec[(n + 1) * self.rank + i]
                out[i] = cat.add(out[i], cat.mul(gval, x, m), m)
        return tuple(out)


def pure_closure_membership(rep: PureSubmoduleRep, vector,
                            budget=None) -> MembershipAnswer:
    """Does some r^j * vector (j <= budget) fall in the generator span?

    The vector is either formal (full width) or a plain rank-length
    vector, read as an R-part.  Positive answers report the least such
    j.  Negative answers are meaningful only while r^budget stays well
    inside depth m; past that the test degenerates (r^j * anything
    eventually vanishes mod r^m) and the verdict is "unknown" instead.
    """
    cat, m = rep.cat, rep.m
    if budget is None:
        budget = rep.budget
    if len(vector) == rep.rank:
        vector = rep.formal(vector, 0)
    elif len(vector) != rep.width():
        raise ShapeError("vector rank mismatch")
    vec = tuple(cat.reduce(x, m) for x in vector)
    meaningful = m // 2
    for j in range(budget + 1):
        if j > meaningful:
            return MembershipAnswer("unknown", None, m, budget)
        rj = cat.r_power(j, m)
        scaled = tuple(cat.mul(rj, x, m) for x in vec)
        if span_contains(cat, m, rep.generators, scaled):
            return MembershipAnswer(True, j, m, budget)
    if budget > meaningful:
        return MembershipAnswer("unknown", None, m, budget)
    return MembershipAnswer(False, None, m, budget)


# ---------------------------------------------------------------------------
# coding a tagged free module


@dataclass(frozen=True)
class FreeTagged:
    """Finite-rank surrogate of a tagged free module over the catalog
    ring: tag n is the span of its listed generator vectors.

    Tag 0 must span the whole lattice (the normalization the coding
    assumes).
    """

    rank: int
    tags: tuple  # per tag: tuple of integer-like vectors (lift entries)


def code_freelike(bar_m: FreeTagged, gammas, cert, cat,
                  m: int = 16, budget: int = 4) -> PureSubmoduleRep:
    """Generators of the pure closure: standard basis plus gamma_n times
    the tag-n generators.

    Refuses when the gamma family is uncertified for this depth/bounds
    or when tag 0 fails to span the lattice.
    """
    if not isinstance(cert, IndependenceCertificate):
        raise ShapeError("gamma family lacks an independence certificate")
    gammas = list(gammas)
    if len(gammas) < len(bar_m.tags):
        raise ShapeError("need one gamma per tag")
    keys = tuple(g.key() for g in gammas)
    if tuple(cert.gamma_keys[:len(keys)]) != keys or cert.depth < m:
        raise ShapeError("certificate does not cover this gamma family "
                         "at this depth")
    rank = bar_m.rank
    for tag in bar_m.tags:
        for g in tag:
            if len(g) != rank:
                raise ShapeError("tag generator rank mismatch")
    basis = [tuple(cat.one(m) if i == j else cat.zero(m)
                   for j in range(rank)) for i in range(rank)]
    if bar_m.tags:
        tag0 = [tuple(cat.reduce(x, m) for x in g) for g in bar_m.tags[0]]
        for e in basis:
            if not span_contains(cat, m, tag0, e):
                raise ShapeError("tag 0 does not span the lattice")
    rep = PureSubmoduleRep(cat, rank, m, (),
                           tuple(gammas[:len(bar_m.tags)]), budget)
    gens = [rep.formal(e, 0) for e in basis]
    for n, tag in enumerate(bar_m.tags):
        for g in tag:
            gens.append(rep.formal(g, n + 1))
    return PureSubmoduleRep(cat, rank, m, tuple(gens),
                            rep.gammas, budget)


def mkchar_test(rep: PureSubmoduleRep, n: int, vector,
                budget=None) -> MembershipAnswer:
    """Tag membership off the coded module: a in M_n iff gamma_n * a is
    in the closure.

    The vector itself must already be a certified member at the working
    budget.
    """
    if not 0 <= n < len(rep.gammas):
        raise ShapeError(f"no gamma recorded for tag {n}")
    if len(vector) != rep.rank:
        raise ShapeError("vector rank mismatch")
    own = pure_closure_membership(rep, vector, budget)
    if own.verdict is not True:
        raise ShapeError(f"query vector is not a certified member "
                         f"(verdict {own.verdict})")
    return pure_closure_membership(rep, rep.formal(vector, n + 1), budget)


def rerepresent(rep: PureSubmoduleRep, rng) -> PureSubmoduleRep:
    """An equivalent presentation: shuffle generators and add R-multiples
    of one generator to another (span-preserving elementary moves)."""
    cat, m = rep.cat, rep.m
    one, r = cat.one(m), cat.r_power(1, m)
    scales = (one, r, cat.add(one, r, m))
    gens = [list(g) for g in rep.generators]
    for _ in range(3 * len(gens)):
        i, j = rng.randrange(len(gens)), rng.randrange(len(gens))
        if i == j:
            continue
        scale = scales[rng.randrange(len(scales))]
        for k in range(rep.width()):
            gens[i][k] = cat.add(gens[i][k],
                                 cat.mul(scale, gens[j][k], m), m)
    rng.shuffle(gens)
    return PureSubmoduleRep(cat, rep.rank, m,
                            tuple(tuple(g) for g in gens),
                            rep.gammas, rep.budget)


def tfab_presentation(rep: PureSubmoduleRep) -> str:
    """Stable text form: one evaluated generator per line, residues
    space-separated (ints for the Z catalog, comma-joined digits
    otherwise)."""
    lines = [f"rank {rep.rank} depth {rep.m} "
             f"generators {len(rep.generators)}"]
    for g in rep.generators:
        lines.append(" ".join(rep.cat.format(x, rep.m)
                              for x in rep.evaluate(g)))
    return "\n".join(lines) + "\n"
