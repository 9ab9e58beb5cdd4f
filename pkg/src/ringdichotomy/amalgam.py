"""Chains of tagged modules closed under amalgamation, with lifting.

Members of the class handled here are modules V = (R/I)^X over a finite
commutative ring R with a maximal ideal I (so Q = R/I is a field), together
with a finite list of distinguished submodules (tags, matched by key) and an
equivalence relation on the generator set X.  Everything is kept in linear
form: vectors are sparse dicts over Q, tags are reduced spanning bases, and
stages whose carrier is too large to enumerate are never materialized.

Tag keys are stable across a whole chain: ("sum0",) is the zero-coordinate-sum
subspace of a stage grown coordinate by coordinate, and ("line", sig) is the
scalar line through the vector with signature sig.  An embedding must match
tags key by key, which is what makes the bigness certificates replayable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .rings import FiniteRing, GuardError, ShapeError, quotient_ring, \
    ideal_generated, spectrum
from .modules import FiniteModule, TaggedModule

EXPLICIT_CARRIER_GUARD = 4096
SEARCH_NODE_GUARD = 4000
MAX_STAGE_RANK = 4000


class BudgetError(RuntimeError):
    """The requested lift or extension exceeds what the finite chain holds."""


# ---------------------------------------------------------------------------
# sparse vectors and spans over the residue field


def v_add(q: FiniteRing, u: dict, v: dict) -> dict:
    out = dict(u)
    for i, c in v.items():
        s = q.add(out.get(i, q.zero), c)
        if s == q.zero:
            out.pop(i, None)
        else:
            out[i] = s
    return out


def v_scale(q: FiniteRing, c, u: dict) -> dict:
    if c == q.zero:
        return {}
    return {i: q.mul(c, x) for i, x in u.items()}


def _field_inv(q: FiniteRing, a):
    for b in q.elements():
        if q.mul(a, b) == q.one:
            return b
    raise ShapeError(f"{a} has no inverse; residue ring is not a field")


def v_sig(q: FiniteRing, v: dict) -> tuple:
    """Canonical signature of the line through v (leading coeff scaled to 1)."""
    if not v:
        return ()
    lead = min(v)
    w = v_scale(q, _field_inv(q, v[lead]), v)
    return tuple(sorted(w.items()))


class SpanBasis:
    """Reduced spanning set; pivots keyed by leading coordinate."""

    def __init__(self, q: FiniteRing, gens=()):
        self.q = q
        self.pivots: dict = {}
        for g in gens:
            self.add(g)

    def reduce(self, v: dict) -> dict:
        q = self.q
        v = dict(v)
        while v:
            lead = min(v)
            row = self.pivots.get(lead)
            if row is None:
                return v
            v = v_add(q, v, v_scale(q, q.neg(v[lead]), row))
        return v

    def add(self, v: dict) -> bool:
        res = self.reduce(v)
        if not res:
            return False
        lead = min(res)
        self.pivots[lead] = v_scale(self.q, _field_inv(self.q, res[lead]), res)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def basis(self):
        return [dict(v) for _, v in sorted(self.pivots.items())]

    def dim(self):
        return len(self.pivots)

    def copy(self):
        other = SpanBasis(self.q)
        other.pivots = {i: dict(v) for i, v in self.pivots.items()}
        return other


# ---------------------------------------------------------------------------
# the suitable class and its stages


@dataclass
class TaggedClass:
    """All (R/I)^X-shaped tagged modules over a fixed ring and maximal ideal."""

    ring: FiniteRing
    ideal_elements: tuple

    def __post_init__(self):
        self.ideal_elements = tuple(sorted(set(self.ideal_elements)))
        ideal = ideal_generated(self.ring, self.ideal_elements)
        if tuple(ideal.elements) != self.ideal_elements:
            raise ShapeError("ideal elements are not an ideal")
        maximal = {m.elements for m in spectrum(self.ring).maximal_ideals}
        if self.ideal_elements not in maximal:
            raise ShapeError("ideal must be maximal so the quotient is a field")
        self.quot, self.proj = quotient_ring(self.ring, ideal)

    def seed(self):
        return Stage(self, 0, [], [], {}, global_sum0=True, lazy=False)

    def name(self):
        return f"tagged modules over {self.ring.name} mod {self.ideal_elements}"


@dataclass
class Stage:
    cls: TaggedClass
    k: int
    class_of: list          # basis index -> class id
    tag_order: list         # tag keys in fixed order
    tags: dict              # key -> SpanBasis
    global_sum0: bool
    lazy: bool

    @property
    def q(self):
        return self.cls.quot

    def class_count(self) -> int:
        return max(self.class_of, default=-1) + 1

    def classes(self):
        out = [[] for _ in range(self.class_count())]
        for i, c in enumerate(self.class_of):
            out[c].append(i)
        return [tuple(c) for c in out]

    def carrier_size(self) -> int:
        return self.q.size ** self.k

    def carrier(self):
        if self.carrier_size() > EXPLICIT_CARRIER_GUARD:
            raise GuardError(
                f"carrier {self.carrier_size()} too large to enumerate")
        yield from _span_vectors(self.q, list(range(self.k)))

    def covered(self, v: dict) -> bool:
        return any(b.contains(v) for b in self.tags.values())

    def copy(self):
        return Stage(self.cls, self.k, list(self.class_of),
                     list(self.tag_order),
                     {k: b.copy() for k, b in self.tags.items()},
                     self.global_sum0, self.lazy)

    def add_tag(self, key, gens):
        if key not in self.tags:
            self.tags[key] = SpanBasis(self.q)
            self.tag_order.append(key)
        for g in gens:
            self.tags[key].add(g)


def _span_vectors(q: FiniteRing, coords):
    """All vectors supported on the given coordinates, zero included."""
    for coeffs in itertools.product(q.elements(), repeat=len(coords)):
        yield {i: c for i, c in zip(coords, coeffs) if c != q.zero}


def _sum0_gens(q: FiniteRing, k: int):
    return [{0: q.neg(q.one), i: q.one} for i in range(1, k)]


def repair(stage: Stage) -> int:
    """Give every uncovered non-generator-multiple its own line tag.

    Returns the number of tags added.  Marks the stage lazy instead when the
    carrier cannot be enumerated; lines are then implicit.
    """
    if stage.carrier_size() > EXPLICIT_CARRIER_GUARD:
        stage.lazy = True
        return 0
    added = 0
    for v in stage.carrier():
        if len(v) <= 1:        # zero or a multiple of a basis vector
            continue
        if not stage.covered(v):
            stage.add_tag(("line", v_sig(stage.q, v)), [v])
            added += 1
    return added


def grow(stage: Stage, new_classes: int) -> Stage:
    """Extend by fresh generators, each in a brand-new singleton class."""
    out = stage.copy()
    for _ in range(new_classes):
        out.class_of.append(out.class_count())
        out.k += 1
    if out.global_sum0 and out.k >= 2:
        out.add_tag(("sum0",), _sum0_gens(out.q, out.k))
    repair(out)
    return out


def verify_stage(stage: Stage) -> bool:
    """Exhaustive basis/tag compatibility: nonzero v is a generator multiple
    iff it avoids every tag.  Explicit stages only."""
    for v in stage.carrier():
        if not v:
            continue
        if (len(v) == 1) != (not stage.covered(v)):
            return False
    return True


# ---------------------------------------------------------------------------
# embeddings


def _fhat(fmap: dict, v: dict) -> dict:
    return {fmap[i]: c for i, c in v.items()}


def _class_map(b_stage: Stage, fmap: dict, c_stage: Stage):
    """The induced map on classes; None if ill-defined or not injective."""
    out = {}
    for i, j in fmap.items():
        src, dst = b_stage.class_of[i], c_stage.class_of[j]
        if out.setdefault(src, dst) != dst:
            return None
    if len(set(out.values())) != len(out):
        return None
    return out


def is_embedding(b_stage: Stage, support, fmap: dict, c_stage: Stage) -> bool:
    """Check the linear map sending x_i to x_{fmap[i]} (i in support) embeds
    the substructure of b_stage generated by support into c_stage, matching
    tags key by key."""
    support = list(support)
    if len(set(fmap[i] for i in support)) != len(support):
        return False
    if _class_map(b_stage, {i: fmap[i] for i in support}, c_stage) is None:
        return False
    keys = set(b_stage.tag_order) | set(c_stage.tag_order)
    q = b_stage.q
    for v in _span_vectors(q, support):
        if not v:
            continue
        fv = _fhat(fmap, v)
        for key in keys:
            in_b = key in b_stage.tags and b_stage.tags[key].contains(v)
            in_c = key in c_stage.tags and c_stage.tags[key].contains(fv)
            if in_b != in_c:
                return False
    return True


def substructure_is_member(stage: Stage, support) -> bool:
    """Does the span of the chosen generators, with induced tags, again have
    the generator-multiple-iff-untagged property?"""
    for v in _span_vectors(stage.q, list(support)):
        if not v:
            continue
        if (len(v) == 1) != (not stage.covered(v)):
            return False
    return True


def find_embedding(b_stage: Stage, c_stage: Stage, pinned: dict,
                   class_pattern: dict, node_guard: int = SEARCH_NODE_GUARD):
    """Search for a full embedding g of b_stage into c_stage with g extending
    `pinned` and inducing `class_pattern` on classes.  None if not found
    within the node budget."""
    order = sorted(range(b_stage.k), key=lambda i: (i not in pinned, i))
    by_class = {}
    for j in range(c_stage.k):
        by_class.setdefault(c_stage.class_of[j], []).append(j)
    nodes = 0

    def backtrack(pos, gmap):
        nonlocal nodes
        nodes += 1
        if nodes > node_guard:
            return None
        if pos == len(order):
            if is_embedding(b_stage, range(b_stage.k), gmap, c_stage):
                return dict(gmap)
            return None
        i = order[pos]
        if i in pinned:
            cands = [pinned[i]]
        else:
            cands = by_class.get(class_pattern[b_stage.class_of[i]], [])
        used = set(gmap.values())
        for j in cands:
            if j in used:
                continue
            gmap[i] = j
            if _partial_tags_ok(b_stage, gmap, c_stage):
                got = backtrack(pos + 1, gmap)
                if got is not None:
                    return got
            del gmap[i]
        return None

    return backtrack(0, {})


def _partial_tags_ok(b_stage: Stage, gmap: dict, c_stage: Stage) -> bool:
    """Prune: every tag generator fully supported on assigned coordinates
    must land in the same tag."""
    dom = set(gmap)
    for key in b_stage.tag_order:
        target = c_stage.tags.get(key)
        for gen in b_stage.tags[key].basis():
            if set(gen) <= dom:
                if target is None or not target.contains(_fhat(gmap, gen)):
                    return False
    return True


# ---------------------------------------------------------------------------
# amalgamation


def tagged_disjoint_amalgamate(m0: Stage, m1: Stage, shared: int):
    """Amalgamate two stages over their common first `shared` generators.

    Generator relations stay the free ones, tags with equal keys are joined
    as submodule sums, and anything newly uncovered gets a fresh line tag
    (implicitly when the carrier is too large).  Returns (amalgam, remap)
    where remap sends m1 generator indices to amalgam indices.
    """
    if m0.cls is not m1.cls:
        raise ShapeError("amalgamation requires a common class")
    if m0.class_of[:shared] != m1.class_of[:shared]:
        raise ShapeError("shared generators disagree on classes")
    for key in set(m0.tag_order) | set(m1.tag_order):
        for v in _span_vectors(m0.q, range(shared)):
            in0 = key in m0.tags and m0.tags[key].contains(v)
            in1 = key in m1.tags and m1.tags[key].contains(v)
            if in0 != in1:
                raise ShapeError(
                    f"shared substructure has conflicting tag {key}")
    out = m0.copy()
    out.global_sum0 = False
    remap = {i: i for i in range(shared)}
    class_remap = {m1.class_of[i]: m0.class_of[i] for i in range(shared)}
    for i in range(shared, m1.k):
        remap[i] = out.k
        src = m1.class_of[i]
        if src not in class_remap:
            class_remap[src] = out.class_count()
        out.class_of.append(class_remap[src])
        out.k += 1
    for key in m1.tag_order:
        out.add_tag(key, [_fhat(remap, g) for g in m1.tags[key].basis()])
    repair(out)
    return out, remap


@dataclass(frozen=True)
class EqStructure:
    items: tuple
    blocks: tuple

    def block_index(self, x) -> int:
        for n, b in enumerate(self.blocks):
            if x in b:
                return n
        raise KeyError(x)


def amalgamate_equivalence(j_struct: EqStructure, k_struct: EqStructure,
                           shared, ell: dict) -> EqStructure:
    """Join two equivalence structures over a common part along a block
    bijection.  The bijection must be permissible: it has to send the block
    of every shared point to the block of that same point on the other side.
    The result relates x to y across the two sides iff ell maps x's block to
    y's block; this is the unique common refinement-free join."""
    shared = tuple(shared)
    if sorted(ell) != list(range(len(j_struct.blocks))) or \
            sorted(ell.values()) != list(range(len(k_struct.blocks))):
        raise ShapeError("ell is not a bijection between the block sets")
    for x in shared:
        if ell[j_struct.block_index(x)] != k_struct.block_index(x):
            raise ShapeError(
                f"bijection not permissible: shared point {x!r} changes block")
    items = tuple(dict.fromkeys(j_struct.items + k_struct.items))
    blocks = []
    for n, jb in enumerate(j_struct.blocks):
        kb = k_struct.blocks[ell[n]]
        blocks.append(frozenset(jb) | frozenset(kb))
    return EqStructure(items, tuple(blocks))


# ---------------------------------------------------------------------------
# bigness


@dataclass(frozen=True)
class CertEntry:
    support: tuple      # generator indices of the substructure A
    fmap: tuple         # sorted (i, f(i)) pairs, the embedding A -> B
    h: tuple            # class permutation of B being realized
    g: tuple            # sorted (i, g(i)) pairs, the realizing B -> C map
    fresh: bool         # whether a disjoint copy had to be amalgamated


def _enumerate_constraints(b_stage: Stage):
    if b_stage.carrier_size() > EXPLICIT_CARRIER_GUARD:
        raise GuardError("bigness over a non-enumerable stage")
    n_classes = b_stage.class_count()
    for size in range(b_stage.k + 1):
        for support in itertools.combinations(range(b_stage.k), size):
            if not substructure_is_member(b_stage, support):
                continue
            for images in itertools.permutations(range(b_stage.k), size):
                fmap = dict(zip(support, images))
                if not is_embedding(b_stage, support, fmap, b_stage):
                    continue
                cmap = _class_map(b_stage, fmap, b_stage)
                for h in itertools.permutations(range(n_classes)):
                    if all(h[src] == dst for src, dst in cmap.items()):
                        yield support, fmap, h


def stage_automorphisms(b_stage: Stage):
    """All tag- and class-respecting generator permutations (explicit, small)."""
    if b_stage.k > 8:
        raise GuardError("automorphism scan limited to rank <= 8")
    out = []
    for perm in itertools.permutations(range(b_stage.k)):
        fmap = dict(enumerate(perm))
        cmap = _class_map(b_stage, fmap, b_stage)
        if cmap is None or sorted(cmap.values()) != sorted(cmap):
            continue
        if is_embedding(b_stage, range(b_stage.k), fmap, b_stage):
            out.append(fmap)
    return out


def _add_copy(c_stage: Stage, b_stage: Stage, fmap: dict, h: tuple) -> dict:
    gmap = dict(fmap)
    for i in range(b_stage.k):
        if i in gmap:
            continue
        gmap[i] = c_stage.k
        c_stage.class_of.append(h[b_stage.class_of[i]])
        c_stage.k += 1
    c_stage.global_sum0 = False
    for key in b_stage.tag_order:
        c_stage.add_tag(key, [_fhat(gmap, g)
                              for g in b_stage.tags[key].basis()])
    return gmap


def make_big_extension(b_stage: Stage, new_classes: int = 1):
    """Extend a stage so that every (substructure, embedding, class
    permutation) constraint is realized by an embedding of the whole stage,
    then add fresh classes.  Returns (extension, certificate list)."""
    c_stage = b_stage.copy()
    cert = []
    # known embeddings of the stage into the extension so far: each fresh
    # copy, precomposed with every automorphism of the stage
    auts = stage_automorphisms(b_stage)
    known = []

    def register(g):
        for a in auts:
            known.append({i: g[a[i]] for i in range(b_stage.k)})

    register(dict(enumerate(range(b_stage.k))))

    def lookup(fmap, h):
        for g in known:
            if any(g[i] != j for i, j in fmap.items()):
                continue
            if all(c_stage.class_of[g[i]] == h[b_stage.class_of[i]]
                   for i in range(b_stage.k)):
                return g
        return None

    for support, fmap, h in _enumerate_constraints(b_stage):
        g = lookup(fmap, h)
        fresh = g is None
        if fresh:
            if c_stage.k + b_stage.k > MAX_STAGE_RANK:
                raise GuardError(
                    f"extension rank would exceed {MAX_STAGE_RANK}")
            g = _add_copy(c_stage, b_stage, fmap, h)
            if not is_embedding(b_stage, range(b_stage.k), g, c_stage):
                raise RuntimeError(
                    "amalgamated copy failed its own embedding check")
            register(g)
        cert.append(CertEntry(tuple(support), tuple(sorted(fmap.items())),
                              tuple(h), tuple(sorted(g.items())), fresh))
    out = grow(c_stage, new_classes)
    return out, cert


def verify_certificate(b_stage: Stage, c_stage: Stage, cert) -> bool:
    """Replay: every entry's g embeds the stage, extends f, and induces h."""
    for entry in cert:
        fmap, g = dict(entry.fmap), dict(entry.g)
        if any(g.get(i) != j for i, j in fmap.items()):
            return False
        if not is_embedding(b_stage, range(b_stage.k), g, c_stage):
            return False
        for i, j in g.items():
            if c_stage.class_of[j] != entry.h[b_stage.class_of[i]]:
                return False
    return True


# ---------------------------------------------------------------------------
# chains and lifting


@dataclass
class LimitChain:
    cls: TaggedClass
    stages: list
    certs: list = field(default_factory=list)   # certs[i]: step i -> i+1

    def __len__(self):
        return len(self.stages)


def build_chain(cls: TaggedClass, initial_classes: int = 3,
                length: int = 4) -> LimitChain:
    if length < 2:
        raise ShapeError("a chain needs at least a seed and one stage")
    stages = [cls.seed()]
    certs = []
    nxt, cert = make_big_extension(stages[0], new_classes=initial_classes)
    stages.append(nxt)
    certs.append(cert)
    while len(stages) < length:
        nxt, cert = make_big_extension(stages[-1], new_classes=1)
        stages.append(nxt)
        certs.append(cert)
    return LimitChain(cls, stages, certs)


def verify_chain(chain: LimitChain) -> bool:
    for i, cert in enumerate(chain.certs):
        b, c = chain.stages[i], chain.stages[i + 1]
        if c.class_count() <= b.class_count():
            return False
        if not verify_certificate(b, c, cert):
            return False
    return True


def lift_permutation(chain: LimitChain, h, m: int) -> dict:
    """Realize a class permutation as a verified automorphism of stage m.

    h may be given over the classes of stage m or of any later stage, as
    long as it maps stage-m classes among themselves.  The realizing map is
    read off the stage-m bigness certificate; if every certificate entry for
    h moves the stage properly into stage m+1, that is an honest budget
    error, not a failure of h.
    """
    if not 1 <= m < len(chain.stages) - 1:
        raise BudgetError(
            f"stage {m} has no bigness certificate in a chain of length "
            f"{len(chain.stages)}")
    stage = chain.stages[m]
    c = stage.class_count()
    h = tuple(h)
    if len(h) < c:
        raise BudgetError(f"h covers {len(h)} classes, stage {m} has {c}")
    if sorted(h[:c]) != list(range(c)) or \
            any(h[i] != i for i in range(c, len(h))):
        raise BudgetError(
            "h does not map the stage's classes among themselves")
    h = h[:c]
    full = tuple(range(stage.k))
    for entry in chain.certs[m]:
        if entry.support != full or entry.h != h:
            continue
        g = dict(entry.g)
        if any(j >= stage.k for j in g.values()):
            continue
        if not is_embedding(stage, full, g, stage):
            raise RuntimeError("certificate map failed re-verification")
        if any(stage.class_of[g[i]] != h[stage.class_of[i]]
               for i in range(stage.k)):
            raise RuntimeError("certificate map induces the wrong h")
        return g
    raise BudgetError(
        f"no stage-{m} certificate realizes the permutation inside the "
        f"stage; a longer chain (or a symmetric stage) is needed")


# ---------------------------------------------------------------------------
# materialization for the coder


def stage_to_tagged_module(stage: Stage):
    """Tables for an explicit stage.

    Returns (TaggedModule over the class's ring, basis indices, class_of,
    tag keys in tag order).  Carrier index packs coordinates little-endian
    base |Q|.
    """
    q = stage.q
    n = q.size
    size = stage.carrier_size()
    if size > EXPLICIT_CARRIER_GUARD:
        raise GuardError(f"carrier {size} too large to tabulate")

    def pack(v: dict) -> int:
        out = 0
        for i in range(stage.k - 1, -1, -1):
            out = out * n + v.get(i, q.zero)
        return out

    def unpack(a: int) -> dict:
        v = {}
        for i in range(stage.k):
            a, c = divmod(a, n)
            if c != q.zero:
                v[i] = c
        return v

    vecs = [unpack(a) for a in range(size)]
    add = [[pack(v_add(q, u, v)) for v in vecs] for u in vecs]
    ring = stage.cls.ring
    act = [[pack(v_scale(q, stage.cls.proj[r], v)) for v in vecs]
           for r in ring.elements()]
    mod = FiniteModule(ring, size, add, act, 0, name="stage module")
    tags = []
    for key in stage.tag_order:
        span = stage.tags[key]
        members = tuple(sorted(pack(v) for v in vecs
                               if span.contains(v)))
        tags.append(members)
    basis = [pack({i: q.one}) for i in range(stage.k)]
    return TaggedModule(mod, tuple(tags)), basis, list(stage.class_of), \
        list(stage.tag_order)
