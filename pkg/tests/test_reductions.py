import itertools

import pytest

from ringdichotomy.modules import (
    TaggedModule,
    brute_force_isomorphic,
    free_module,
    ring_as_module,
)
from ringdichotomy.reductions import (
    DecodeError,
    FreeLikeTagged,
    block_graph,
    doubled_annihilator_ideal,
    endo_from_poly_module,
    endo_isomorphic,
    endo_pullback,
    endo_structure,
    endo_to_four_submodules,
    four_submodules_decode,
    freelike_normalize,
    freelike_recover,
    poly_module_from_endo,
    pullback_module,
    submodule_as_module,
    theoremB_claim2,
    theoremB_claim3,
    theoremB_code,
    theoremB_decode,
    twist_summand,
    verify_free_summand,
)
from ringdichotomy.rings import (
    GuardError,
    ShapeError,
    f2_xy_square_zero,
    ideal_generated,
    poly_quot,
    quotient_ring,
    zmod,
)

Z4 = zmod(4)
F2 = zmod(2)
I2 = ideal_generated(Z4, [2])


def all_endomorphisms(mod):
    """Oracle: filter every self-map for additivity and linearity."""
    out = []
    for T in itertools.product(range(mod.size), repeat=mod.size):
        if T[mod.zero] != mod.zero:
            continue
        if any(T[mod.add(a, b)] != mod.add(T[a], T[b])
               for a in mod.elements() for b in mod.elements()):
            continue
        if any(T[mod.act(r, a)] != mod.act(r, T[a])
               for r in mod.ring.elements() for a in mod.elements()):
            continue
        out.append(T)
    return out


# ---------------------------------------------------------------------------
# pullback


def test_pullback_z4_through_2():
    q, _ = quotient_ring(Z4, I2)
    m = ring_as_module(q)
    pb = pullback_module(Z4, I2, m)
    assert pb.ring is Z4
    # 2 and 0 act identically, 1 and 3 act identically
    assert pb.act_table[2] == pb.act_table[0]
    assert pb.act_table[3] == pb.act_table[1]


def test_pullback_zero_ideal_is_identity():
    zero_ideal = ideal_generated(Z4, [])
    q, proj = quotient_ring(Z4, zero_ideal)
    m = ring_as_module(q)
    pb = pullback_module(Z4, zero_ideal, m)
    # relabelled action agrees with the original through proj
    for r in Z4.elements():
        assert pb.act_table[r] == m.act_table[proj[r]]


def test_pullback_rejects_wrong_base():
    m = ring_as_module(Z4)
    with pytest.raises(ShapeError):
        pullback_module(Z4, I2, m)


# ---------------------------------------------------------------------------
# endo structures and four submodules


def test_endo_structure_rejects_bad_maps():
    m = ring_as_module(Z4)
    with pytest.raises(ShapeError, match="additive"):
        endo_structure(m, [0, 1, 1, 3])
    with pytest.raises(ShapeError):
        endo_structure(m, [0, 1])


def test_four_submodules_degenerate_tags():
    m = ring_as_module(Z4)
    ident = endo_structure(m, [0, 1, 2, 3])
    zero = endo_structure(m, [0, 0, 0, 0])
    wi = endo_to_four_submodules(ident)
    wz = endo_to_four_submodules(zero)
    assert wi.tag(3) == wi.tag(2)  # graph of id is the diagonal
    assert wz.tag(3) == wz.tag(0)  # graph of 0 is the first factor


def test_four_submodules_swap_decodes_exactly():
    v2, basis = free_module(F2, 2)
    swap = [((a & 1) << 1) | ((a >> 1) & 1) for a in range(4)]
    s = endo_structure(v2, swap)
    back = four_submodules_decode(endo_to_four_submodules(s))
    # decode relabels V through the sorted first-factor carrier, which is
    # order preserving here
    assert back.T == tuple(swap)


@pytest.mark.parametrize("mod", [ring_as_module(F2),
                                 free_module(F2, 2)[0],
                                 ring_as_module(Z4)],
                         ids=["F2", "F2^2", "Z4"])
def test_four_submodules_identity_all_endos(mod):
    for T in all_endomorphisms(mod):
        s = endo_structure(mod, T)
        back = four_submodules_decode(endo_to_four_submodules(s))
        assert back.module.size == mod.size
        assert endo_isomorphic(s, back) is not None


def test_four_submodules_decode_errors():
    m = ring_as_module(F2)
    s = endo_structure(m, [0, 1])
    w = endo_to_four_submodules(s)
    # U3 misses part of U0's projection
    broken = TaggedModule(w.module, w.tags[:3] + ((w.module.zero,),))
    with pytest.raises(DecodeError, match="misses"):
        four_submodules_decode(broken)
    # U2 equal to U0 is not complementary
    broken = TaggedModule(w.module, w.tags[:2] + (w.tags[0], w.tags[3]))
    with pytest.raises(DecodeError):
        four_submodules_decode(broken)
    # missing tags pad to {0}, which cannot be a graph over U0
    with pytest.raises(DecodeError, match="U2"):
        four_submodules_decode(TaggedModule(w.module, w.tags[:2]))


def test_submodule_as_module_rejects_non_submodule():
    m = ring_as_module(Z4)
    with pytest.raises(ShapeError):
        submodule_as_module(m, (0, 1))
    with pytest.raises(ShapeError, match="zero"):
        submodule_as_module(m, (1, 2))


# ---------------------------------------------------------------------------
# polynomial-quotient modules


def test_poly_module_to_endo_shift():
    pr = poly_quot(2, [0, 0, 1])  # nilpotent generator, square zero
    m = ring_as_module(pr)
    e = endo_from_poly_module(m, F2, 2)
    assert e.module.ring is F2
    # T is the nilpotent shift: 1 -> x -> 0
    assert e.T[1] == 2 and e.T[2] == 0 and e.T[3] == 2
    assert all(e.T[e.T[a]] == 0 for a in m.elements())


def test_poly_module_x_reduces_to_constant():
    # modulus x: the generator is 0, so T = 0
    pr = poly_quot(2, [0, 1])
    m = ring_as_module(pr)
    e = endo_from_poly_module(m, F2, pr.zero)
    assert e.T == (0, 0)
    # modulus x + 1: the generator is 1, so T = id
    pr1 = poly_quot(2, [1, 1])
    m1 = ring_as_module(pr1)
    e1 = endo_from_poly_module(m1, F2, pr1.one)
    assert e1.T == (0, 1)


def test_poly_endo_action_commutes():
    pr = poly_quot(4, [0, 0, 1])  # Z/4 base, x^2 = 0
    m = ring_as_module(pr)
    e = endo_from_poly_module(m, Z4, 4)
    for r in Z4.elements():
        for a in m.elements():
            assert e.T[e.module.act(r, a)] == e.module.act(r, e.T[a])


def test_endo_back_to_poly_module():
    pr = poly_quot(2, [0, 0, 1])
    m = ring_as_module(pr)
    e = endo_from_poly_module(m, F2, 2)
    back = poly_module_from_endo(e, pr, 2)
    assert back.act_table == m.act_table


def test_poly_module_rejects_relation_breaker():
    # identity does not square to zero, so it cannot define x with x^2 = 0
    pr = poly_quot(2, [0, 0, 1])
    v2, _ = free_module(F2, 2)
    e = endo_structure(v2, [0, 1, 2, 3])
    with pytest.raises(ShapeError):
        poly_module_from_endo(e, pr, 2)


def test_poly_module_rejects_bad_embedding():
    pr = poly_quot(2, [0, 0, 1])
    m = ring_as_module(pr)
    with pytest.raises(ShapeError):
        endo_from_poly_module(m, F2, 2, embed=[0, 2])


# ---------------------------------------------------------------------------
# free-like normalization


def z4_tagged_examples():
    z4m = ring_as_module(Z4)
    q, _ = quotient_ring(Z4, I2)
    f2_over_z4 = pullback_module(Z4, I2, ring_as_module(q))
    return [
        TaggedModule(z4m, ((0, 2),)),
        TaggedModule(z4m, ()),
        TaggedModule(z4m, ((0,),)),
        TaggedModule(z4m, ((0, 2), (0, 1, 2, 3))),
        TaggedModule(f2_over_z4, ((0, 1),)),
    ]


@pytest.mark.parametrize("tagged", z4_tagged_examples(),
                         ids=["two", "none", "zero", "pair", "flat"])
def test_freelike_round_trip(tagged):
    fl = freelike_normalize(tagged)
    assert freelike_recover(fl) == tagged


def test_freelike_shape():
    tagged = TaggedModule(ring_as_module(Z4), ((0, 2),))
    fl = freelike_normalize(tagged)
    assert fl.e_rank == 1
    # block 0 lifts the kernel {0}, block 1 the tag {0, 2}; two copies each
    assert [len(b) for b in fl.d_blocks] == [2, 4]
    graph = block_graph(fl, 1)
    assert sorted(graph.values()) == [0, 0, 2, 2]


def test_freelike_zero_tag_block():
    # over a free carrier the kernel block lifts {0}, so its attachment
    # map is constantly zero and V_0 coincides with the block span
    tagged = TaggedModule(ring_as_module(Z4), ())
    fl = freelike_normalize(tagged)
    graph = block_graph(fl, 0)
    assert set(graph.values()) == {0}
    for vec in fl.v_basis[0]:
        assert all(lab[0] == "d" for lab in vec)


def test_freelike_summand_splits():
    tagged = TaggedModule(ring_as_module(Z4), ((0, 2), (0, 1, 2, 3)))
    fl = freelike_normalize(tagged)
    assert verify_free_summand(fl, "U*")
    for n in range(fl.block_count()):
        assert verify_free_summand(fl, "U", n)
        split = verify_free_summand(fl, "V", n)
        assert len(split["basis"]) == len(fl.d_blocks[n])
    with pytest.raises(ShapeError):
        verify_free_summand(fl, "W")


def test_freelike_tamper_detection():
    tagged = TaggedModule(ring_as_module(Z4), ((0, 2),))
    fl = freelike_normalize(tagged)
    # a pure carrier vector in the span makes the graph multivalued
    bad = fl.v_basis[1] + ({("e", 0): 1},)
    tampered = FreeLikeTagged(fl.ring, fl.e_rank, fl.d_blocks,
                              fl.v_basis[:1] + (bad,), fl.handles)
    with pytest.raises(DecodeError, match="function"):
        freelike_recover(tampered)
    # dropping a basis vector leaves a generator unattached
    short = fl.v_basis[1][:-1]
    tampered = FreeLikeTagged(fl.ring, fl.e_rank, fl.d_blocks,
                              fl.v_basis[:1] + (short,), fl.handles)
    with pytest.raises(DecodeError, match="total"):
        freelike_recover(tampered)


def test_twist_summand_z4_rank2():
    m, basis = free_module(Z4, 2)
    part0 = sorted({m.act(r, basis[0]) for r in Z4.elements()})
    part1 = sorted({m.act(r, basis[1]) for r in Z4.elements()})
    h = {m.act(r, basis[0]): m.act(r, basis[1]) for r in Z4.elements()}
    n_set = twist_summand(m, part0, part1, h)
    assert m.sub(basis[0], basis[1]) in n_set
    assert len(n_set) == 4
    # non-additive h is refused
    bad = dict(h)
    a, b = part0[1], part0[2]
    bad[m.add(a, b)] = m.add(bad[m.add(a, b)], basis[1])
    with pytest.raises(ShapeError):
        twist_summand(m, part0, part1, bad)


# ---------------------------------------------------------------------------
# the doubled-annihilator coder


R8 = f2_xy_square_zero()
X, Y = 2, 4


def s_ring():
    ideal = doubled_annihilator_ideal(R8, X, Y)
    return ideal, quotient_ring(R8, ideal)[0]


def test_preconditions():
    ideal, s = s_ring()
    assert sorted(ideal.elements) == [0, 2, 4, 6]
    assert s.size == 2
    with pytest.raises(ShapeError, match=r"\(1\)"):
        doubled_annihilator_ideal(Z4, 2, 2)
    with pytest.raises(ShapeError, match=r"\(2\)"):
        doubled_annihilator_ideal(F2, 1, 0)


def test_code_claims_and_roundtrip_dim1():
    ideal, s = s_ring()
    vs = ring_as_module(s)
    for T in ([0, 1], [0, 0]):
        e = endo_structure(vs, T)
        out = theoremB_code(R8, X, Y, e)
        assert out.module.size == 8
        assert theoremB_claim2(out)
        assert theoremB_claim3(out, e)
        dec = theoremB_decode(out.module, X, Y)
        assert endo_isomorphic(endo_pullback(R8, ideal, e), dec)


def test_code_distinguishes_t():
    ideal, s = s_ring()
    vs = ring_as_module(s)
    out_id = theoremB_code(R8, X, Y, endo_structure(vs, [0, 1]))
    out_zero = theoremB_code(R8, X, Y, endo_structure(vs, [0, 0]))
    assert brute_force_isomorphic(
        TaggedModule(out_id.module, ()),
        TaggedModule(out_zero.module, ())) is None


def test_code_zero_module():
    ideal, s = s_ring()
    zero = ring_as_module(s)
    one, _ = submodule_as_module(zero, (0,))
    out = theoremB_code(R8, X, Y, endo_structure(one, [0]))
    dec = theoremB_decode(out.module, X, Y)
    assert dec.module.size == 1 and dec.T == (0,)


def test_code_guard():
    ideal, s = s_ring()
    vs = ring_as_module(s)
    with pytest.raises(GuardError):
        theoremB_code(R8, X, Y, endo_structure(vs, [0, 1]), guard=100)


def test_decode_rejects_free_module():
    with pytest.raises(DecodeError):
        theoremB_decode(ring_as_module(R8), X, Y)


def test_code_rejects_module_over_wrong_ring():
    with pytest.raises(ShapeError, match="R/"):
        theoremB_code(R8, X, Y,
                      endo_structure(ring_as_module(Z4), [0, 1, 2, 3]))
