"""Coding finite graphs into tagged modules, and decoding them back.

The engine doubles two chain stages into one module M_left x M_right.  The
left generators carry the graph's vertices (one vertex per generator class),
the right generators label unordered pairs of left generators through a fixed
lexicographic injection k0.  Two extra tags make the pairing recoverable from
the abstract tagged module alone:

  RT: all multiples of x + y + k0({x,y})  (x, y distinct left generators)
  RQ: all multiples of the k0-labels of same-class left pairs

A graph is then coded by appending one more tag, the multiples of the
k0-labels of its edges.  Decoding never looks at the construction data; it
reruns the invariant pipeline (sorts, per-sort generator recovery, RT-triples,
pair fibers) on the tag structure and reads the edges off.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .amalgam import Stage, stage_automorphisms, stage_to_tagged_module
from .modules import (
    FiniteModule,
    TaggedModule,
    element_annihilator,
    product_module,
    r_star,
    sim_classes,
)
from .rings import ShapeError


class DecodeError(ValueError):
    """The tag structure does not decode to a graph."""


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    @staticmethod
    def make(n, edges):
        norm = set()
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ShapeError(f"bad edge ({u}, {v}) for {n} vertices")
            norm.add((min(u, v), max(u, v)))
        return Graph(n, frozenset(norm))

    def __iter__(self):
        return iter(sorted(self.edges))


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ShapeError("empty graph file")
    try:
        n = int(lines[0])
        edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise ShapeError(f"unreadable graph file: {exc}") from None
    if any(len(e) != 2 for e in edges):
        raise ShapeError("edge lines must have exactly two vertex numbers")
    return Graph.make(n, edges)


def format_graph(g: Graph) -> str:
    out = [str(g.n)]
    out += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(out) + "\n"


def graphs_isomorphic(a: Graph, b: Graph):
    if a.n != b.n or len(a.edges) != len(b.edges):
        return None
    for perm in itertools.permutations(range(a.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in b.edges
               for u, v in a.edges):
            return list(perm)
    return None


# ---------------------------------------------------------------------------
# the engine


ROLE_SORT0 = "sort0"
ROLE_SORT1 = "sort1"
ROLE_RT = "RT"
ROLE_RQ = "RQ"
ROLE_EDGES = "edges"


@dataclass
class EngineN:
    left: Stage
    right: Stage
    module: FiniteModule
    tags: tuple            # base tags, ordered as in `roles`
    roles: tuple           # role string per base tag
    left_elems: dict       # left carrier index -> engine element
    right_elems: dict
    left_basis: list       # engine elements for the left generators
    right_basis: list
    left_class_of: list
    right_class_of: list
    k0: dict               # frozenset {i, j} of left generator ids -> right
                           # generator id (lex order on pairs)

    def base_tagged(self) -> TaggedModule:
        return TaggedModule(self.module, self.tags)


def build_engine(left: Stage, right: Stage) -> EngineN:
    if left.cls is not right.cls:
        raise ShapeError("engine stages must come from one class")
    pair_count = left.k * (left.k - 1) // 2
    if pair_count > right.class_count():
        raise ShapeError(
            f"right stage has {right.class_count()} classes, need "
            f"{pair_count} to label all left pairs")
    lt, lbasis, lclass, lkeys = stage_to_tagged_module(left)
    rt_, rbasis, rclass, rkeys = stage_to_tagged_module(right)
    lmod, rmod = lt.module, rt_.module
    mod, pack, _ = product_module(lmod, rmod)

    lelems = {a: pack(a, rmod.zero) for a in lmod.elements()}
    relems = {b: pack(lmod.zero, b) for b in rmod.elements()}

    tags = [tuple(sorted(lelems[a] for a in lmod.elements())),
            tuple(sorted(relems[b] for b in rmod.elements()))]
    roles = [ROLE_SORT0, ROLE_SORT1]
    for key, tag in zip(lkeys, lt.tags):
        tags.append(tuple(sorted(lelems[a] for a in tag)))
        roles.append(f"{ROLE_SORT0}-tag:{key!r}")
    for key, tag in zip(rkeys, rt_.tags):
        tags.append(tuple(sorted(relems[b] for b in tag)))
        roles.append(f"{ROLE_SORT1}-tag:{key!r}")

    # pair labels: lex order on left generator pairs, right generators in
    # class order (one generator per class in a grown stage)
    class_rep = {}
    for j, c in enumerate(rclass):
        class_rep.setdefault(c, j)
    k0 = {}
    for rank, (i, j) in enumerate(
            itertools.combinations(range(len(lbasis)), 2)):
        if rank not in class_rep:
            raise ShapeError("right stage classes do not cover all pairs")
        k0[frozenset((i, j))] = class_rep[rank]

    rt_set = {mod.zero}
    for (i, j), z in ((tuple(sorted(p)), z) for p, z in k0.items()):
        t = mod.add(mod.add(lelems[lmod.add(lbasis[i], lbasis[j])],
                            relems[rbasis[z]]), mod.zero)
        for r in mod.ring.elements():
            rt_set.add(mod.act(r, t))
    tags.append(tuple(sorted(rt_set)))
    roles.append(ROLE_RT)

    q_set = {mod.zero}
    for i, j in itertools.combinations(range(len(lbasis)), 2):
        if lclass[i] == lclass[j]:
            z = k0[frozenset((i, j))]
            for r in mod.ring.elements():
                q_set.add(mod.act(r, relems[rbasis[z]]))
    tags.append(tuple(sorted(q_set)))
    roles.append(ROLE_RQ)

    return EngineN(left, right, mod, tuple(tags), tuple(roles),
                   lelems, relems,
                   [lelems[a] for a in lbasis],
                   [relems[b] for b in rbasis],
                   list(lclass), list(rclass), k0)


def code_graph(engine: EngineN, g: Graph):
    """Append the edge tag for a graph on the engine's left classes.

    Returns (TaggedModule, roles) where roles names every tag position.
    """
    n_classes = max(engine.left_class_of, default=-1) + 1
    if g.n > n_classes:
        raise ShapeError(
            f"graph has {g.n} vertices, engine only carries {n_classes}")
    mod = engine.module
    edge_set = {mod.zero}
    for i, j in itertools.combinations(range(len(engine.left_basis)), 2):
        ci, cj = engine.left_class_of[i], engine.left_class_of[j]
        if ci != cj and (min(ci, cj), max(ci, cj)) in g.edges:
            z = engine.k0[frozenset((i, j))]
            for r in mod.ring.elements():
                edge_set.add(mod.act(r, engine.right_basis[z]))
    tags = engine.tags + (tuple(sorted(edge_set)),)
    roles = engine.roles + (ROLE_EDGES,)
    return TaggedModule(mod, tags), roles


# ---------------------------------------------------------------------------
# decoding


def _role_tag(tagged: TaggedModule, roles, role):
    hits = [i for i, r in enumerate(roles) if r == role]
    if len(hits) != 1:
        raise DecodeError(f"expected exactly one {role} tag, got {len(hits)}")
    return set(tagged.tag(hits[0]))


def _sort_tags(tagged: TaggedModule, roles, prefix):
    return [set(tagged.tag(i)) for i, r in enumerate(roles)
            if r.startswith(prefix + "-tag:")]


def _sort_generator_multiples(mod, sort, sort_tags, ideal):
    """R*X for one sort, via the tag-complement identity."""
    want = tuple(sorted(ideal))
    delta = [a for a in sort if a != mod.zero
             and element_annihilator(mod, a) == want]
    tag_union = set().union(*sort_tags) if sort_tags else set()
    residue = [a for a in delta if a not in tag_union]
    return set(r_star(mod, residue))


def _split(mod, w, sort0, sort1):
    parts = [(w0, mod.sub(w, w0)) for w0 in sort0
             if mod.sub(w, w0) in sort1]
    if len(parts) != 1:
        raise DecodeError(
            f"element {w} does not split uniquely across the sorts")
    return parts[0]


@dataclass
class DecodeReport:
    graph: Graph
    vertex_classes: list       # sorted element tuples, one per vertex
    pair_fiber: dict           # right element -> (class id, class id)


def recover_graph(tagged: TaggedModule, ideal_elements,
                  roles) -> DecodeReport:
    mod = tagged.module
    ring = mod.ring
    sort0 = _role_tag(tagged, roles, ROLE_SORT0)
    sort1 = _role_tag(tagged, roles, ROLE_SORT1)
    rt_tag = _role_tag(tagged, roles, ROLE_RT)
    rq_tag = _role_tag(tagged, roles, ROLE_RQ)
    edges_tag = _role_tag(tagged, roles, ROLE_EDGES)

    rx0 = _sort_generator_multiples(
        mod, sort0, _sort_tags(tagged, roles, ROLE_SORT0), ideal_elements)
    rx1 = _sort_generator_multiples(
        mod, sort1, _sort_tags(tagged, roles, ROLE_SORT1), ideal_elements)
    if not rx0 or not rx1:
        raise DecodeError("a sort has no recovered generators")

    # RT actually used: tag members whose second-sort part is a generator
    # multiple
    rt_star = set()
    for w in rt_tag:
        if w == mod.zero:
            continue
        _, w1 = _split(mod, w, sort0, sort1)
        if w1 in rx1:
            rt_star.add(w)

    # triples (a, b, c) with some combination inside RT
    triples = []
    coeffs = list(itertools.product(ring.elements(), repeat=3))
    for a, b in itertools.combinations(sorted(rx0), 2):
        for c in sorted(rx1):
            if any(mod.add(mod.add(mod.act(r, a), mod.act(s, b)),
                           mod.act(t, c)) in rt_star
                   for r, s, t in coeffs):
                triples.append((a, b, c))

    fibers = {}
    for a, b, c in triples:
        fibers.setdefault(c, set()).add((a, b))

    # vertices: cyclic-submodule classes of R*X0, glued along pairs labelled
    # by RQ members
    classes = sim_classes(mod, sorted(rx0))
    class_of = {}
    for idx, cls in enumerate(classes):
        for a in cls:
            class_of[a] = idx
    rq_star = rq_tag & rx1
    parent = list(range(len(classes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in rq_star:
        for a, b in fibers.get(c, ()):
            ra, rb = find(class_of[a]), find(class_of[b])
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(i) for i in range(len(classes))})
    vertex_of = {}
    for a, idx in class_of.items():
        vertex_of[a] = roots.index(find(idx))
    n_vertices = len(roots)

    # every labelled pair must name a single vertex pair
    pair_fiber = {}
    for c, pairs in fibers.items():
        named = {(min(vertex_of[a], vertex_of[b]),
                  max(vertex_of[a], vertex_of[b])) for a, b in pairs}
        named -= {(u, u) for u in range(n_vertices)}
        if len(named) > 1:
            raise DecodeError(
                f"pair label {c} is ambiguous across vertex pairs {named}")
        if named:
            pair_fiber[c] = next(iter(named))

    edge_star = edges_tag & rx1
    edges = set()
    for c in edge_star:
        if c not in pair_fiber:
            raise DecodeError(
                f"edge tag member {c} does not label any vertex pair")
        edges.add(pair_fiber[c])
    graph = Graph.make(n_vertices, edges)
    vertex_classes = [tuple(sorted(a for a, v in vertex_of.items()
                                   if v == u)) for u in range(n_vertices)]
    return DecodeReport(graph, vertex_classes, pair_fiber)


# ---------------------------------------------------------------------------
# lifting graph isomorphisms


def lift_graph_iso(engine: EngineN, g1: Graph, g2: Graph, h) -> list:
    """Turn a vertex bijection h: g1 -> g2 into a verified module map.

    The map permutes the engine carrier, fixes every base tag setwise, and
    sends the edge tag of g1 onto the edge tag of g2.  Both stages must be
    symmetric enough to realize the induced generator and pair permutations;
    otherwise this raises DecodeError.
    """
    if g1.n != g2.n or len(h) != g1.n:
        raise ShapeError("h must be a vertex bijection between equal sizes")
    if any((min(h[u], h[v]), max(h[u], h[v])) not in g2.edges
           for u, v in g1.edges) or len(g1.edges) != len(g2.edges):
        raise ShapeError("h is not a graph isomorphism")

    left, right = engine.left, engine.right
    sigma0 = next(
        (a for a in stage_automorphisms(left)
         if all(left.class_of[a[i]] ==
                (h[left.class_of[i]] if left.class_of[i] < g1.n
                 else left.class_of[i])
                for i in range(left.k))), None)
    if sigma0 is None:
        raise DecodeError("left stage cannot realize the vertex permutation")
    # induced pair permutation, transported through k0
    h1 = {}
    for pair, z in engine.k0.items():
        i, j = sorted(pair)
        z2 = engine.k0[frozenset((sigma0[i], sigma0[j]))]
        h1[right.class_of[z]] = right.class_of[z2]
    sigma1 = next(
        (a for a in stage_automorphisms(right)
         if all(right.class_of[a[j]] ==
                h1.get(right.class_of[j], right.class_of[j])
                for j in range(right.k))), None)
    if sigma1 is None:
        raise DecodeError("right stage cannot realize the pair permutation")

    lt, lbasis, _, _ = stage_to_tagged_module(left)
    rt_, rbasis, _, _ = stage_to_tagged_module(right)
    lmap = _linear_extension(lt.module, lbasis, sigma0)
    rmap = _linear_extension(rt_.module, rbasis, sigma1)
    mod = engine.module
    sigma = [0] * mod.size
    for a, ea in engine.left_elems.items():
        for b, eb in engine.right_elems.items():
            sigma[mod.add(ea, eb)] = mod.add(engine.left_elems[lmap[a]],
                                             engine.right_elems[rmap[b]])

    coded1, roles = code_graph(engine, g1)
    coded2, _ = code_graph(engine, g2)
    for t1, t2 in zip(coded1.tags, coded2.tags):
        if sorted(sigma[w] for w in t1) != list(t2):
            raise RuntimeError("lifted map failed tag verification")
    for x in mod.elements():
        for y in mod.elements():
            if sigma[mod.add(x, y)] != mod.add(sigma[x], sigma[y]):
                raise RuntimeError("lifted map is not additive")
        for r in mod.ring.elements():
            if sigma[mod.act(r, x)] != mod.act(r, sigma[x]):
                raise RuntimeError("lifted map is not linear")
    return sigma


def _linear_extension(mod, basis, perm):
    """Carrier map induced by permuting basis generators (field quotients:
    every element is a 0/1-ish combination reachable by closure)."""
    out = {mod.zero: mod.zero}
    frontier = [mod.zero]
    while frontier:
        x = frontier.pop()
        for i, bvec in enumerate(basis):
            y = mod.add(x, bvec)
            if y not in out:
                out[y] = mod.add(out[x], basis[perm[i]])
                frontier.append(y)
    if len(out) != mod.size:
        raise RuntimeError("basis does not reach the whole carrier")
    return out
