import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ringdichotomy.modules import (
    FiniteModule,
    Phi0Error,
    TaggedModule,
    brute_force_isomorphic,
    check_module_axioms,
    check_phi1,
    delta_set,
    element_annihilator,
    free_module,
    is_I_independent,
    product_module,
    quotient_module,
    r_star,
    ring_as_module,
    sim_classes,
    submodule_generated,
)
from ringdichotomy.rings import GuardError, zmod

Z2 = zmod(2)
Z4 = zmod(4)


def f2_squared_over_z4():
    """F2 x F2 with Z/4 acting through reduction mod 2."""
    base, basis = free_module(Z2, 2)
    act = [[base.act(r % 2, a) for a in base.elements()]
           for r in Z4.elements()]
    return FiniteModule(Z4, base.size, base.add_table, act), basis


# ---------------------------------------------------------------------------
# oracles


def oracle_is_submodule(mod, subset):
    s = set(subset)
    if mod.zero not in s:
        return False
    return all(mod.add(a, b) in s for a in s for b in s) and \
        all(mod.act(r, a) in s for r in mod.ring.elements() for a in s)


def oracle_combo(mod, coeffs, xs):
    acc = mod.zero
    for r, x in zip(coeffs, xs):
        acc = mod.add(acc, mod.act(r, x))
    return acc


# ---------------------------------------------------------------------------
# axioms and constructors


def test_constructors_pass_axioms():
    for mod in (ring_as_module(Z4),
                free_module(Z2, 3)[0],
                free_module(Z4, 2)[0],
                f2_squared_over_z4()[0]):
        ok, failure = check_module_axioms(mod)
        assert ok, failure


def test_tampered_action_reports_witness():
    mod = ring_as_module(Z4)
    mod.act_table[2][3] = 1  # 2*3 = 2 in Z/4
    ok, failure = check_module_axioms(mod)
    assert not ok and failure is not None


def test_product_module_axioms_and_shape():
    m0 = ring_as_module(Z4)
    m1, _ = f2_squared_over_z4()
    prod, pack, unpack = product_module(m0, m1)
    ok, failure = check_module_axioms(prod)
    assert ok, failure
    assert prod.size == 16
    for a in m0.elements():
        for b in m1.elements():
            assert unpack(pack(a, b)) == (a, b)


def test_quotient_module():
    mod, basis = free_module(Z2, 3)
    evens = submodule_generated(
        mod, [mod.add(basis[0], basis[1]), mod.add(basis[1], basis[2])])
    q, proj = quotient_module(mod, evens)
    assert q.size == 2
    for a in mod.elements():
        for b in mod.elements():
            assert proj[mod.add(a, b)] == q.add(proj[a], proj[b])


# ---------------------------------------------------------------------------
# independence


def test_basis_independence_over_field():
    mod, basis = free_module(Z2, 3)
    ok, witness = is_I_independent(mod, [0], basis)
    assert ok and witness is None


def test_independence_relative_to_ideal():
    mod, basis = f2_squared_over_z4()
    # coefficients in (2) kill everything, so the basis is (2)-independent
    ok, _ = is_I_independent(mod, [0, 2], basis)
    assert ok
    # but not 0-independent: 2*x0 = 0 with 2 not in {0}
    ok, witness = is_I_independent(mod, [0], basis)
    assert not ok
    assert oracle_combo(mod, witness, basis) == mod.zero
    assert any(r not in (0,) for r in witness)


def test_dependent_set_detected():
    mod, basis = free_module(Z2, 2)
    xs = basis + [mod.add(basis[0], basis[1])]
    ok, witness = is_I_independent(mod, [0], xs)
    assert not ok
    assert oracle_combo(mod, witness, xs) == mod.zero


def test_independence_guard_refuses():
    mod, basis = free_module(Z2, 2)
    with pytest.raises(GuardError):
        is_I_independent(mod, [0], basis * 4, guard=10)


def test_iso_to_direct_sum_of_quotients():
    # V with a (2)-basis of size 2 over Z/4 is (Z/4 / (2))^2 elementwise:
    # the coefficient map coeffs -> sum coeffs[i] x_i is 4-to-1 per vector
    # with fibers exactly the (2)-translates.
    mod, basis = f2_squared_over_z4()
    fibers = {}
    for coeffs in itertools.product(Z4.elements(), repeat=2):
        fibers.setdefault(oracle_combo(mod, coeffs, basis),
                          set()).add(coeffs)
    assert len(fibers) == mod.size
    for v, fib in fibers.items():
        base = next(iter(fib))
        assert fib == {tuple(Z4.add(c, d) for c, d in zip(base, ds))
                       for ds in itertools.product((0, 2), repeat=2)}


# ---------------------------------------------------------------------------
# delta, r_star, sim


def test_delta_set_z4():
    mod = ring_as_module(Z4)
    assert delta_set(mod, (0,)) == (1, 3)
    assert delta_set(mod, (0, 2)) == (2,)
    assert delta_set(mod, (0, 1, 2, 3)) == ()


def test_delta_set_excludes_zero():
    mod, _ = free_module(Z2, 2)
    assert 0 not in delta_set(mod, (0,))
    assert delta_set(mod, (0,)) == (1, 2, 3)


def test_annihilator_matches_ring_annihilator_on_ring_module():
    from ringdichotomy.rings import annihilator
    mod = ring_as_module(Z4)
    for a in mod.elements():
        assert element_annihilator(mod, a) == annihilator(Z4, [a]).elements


def test_r_star():
    mod = ring_as_module(Z4)
    assert r_star(mod, [1]) == (1, 2, 3)
    assert r_star(mod, [2]) == (2,)
    assert r_star(mod, []) == ()


def test_r_star_intersection_lemma():
    # (R*X) intersect RY == R*Y for every Y inside X
    cases = [free_module(Z2, 3), f2_squared_over_z4()]
    for mod, basis in cases:
        rx = set(r_star(mod, basis))
        for k in range(len(basis) + 1):
            for ys in itertools.combinations(basis, k):
                ry = set(submodule_generated(mod, ys))
                assert rx & ry == set(r_star(mod, ys))


def test_r_star_is_sim_saturation_of_basis():
    mod, basis = free_module(Z2, 3)
    rx = set(r_star(mod, basis))
    classes = sim_classes(mod, rx)
    # every class meets the basis, and the union is exactly R*X
    for cls in classes:
        assert any(b in cls for b in basis)
    assert set().union(*map(set, classes)) == rx


def test_sim_classes_z4():
    mod = ring_as_module(Z4)
    assert sim_classes(mod, [1, 2, 3]) == [(2,), (1, 3)]


def test_cyclic_submodules_of_delta_simple_or_equal():
    # for a, b with annihilator exactly I: Ra has no proper nonzero
    # submodule over R/I, and Ra == Rb or they meet only at 0
    for mod, _ in (free_module(Z2, 2), f2_squared_over_z4()):
        ideal = element_annihilator(mod, 1)
        delta = delta_set(mod, ideal)
        for a in delta:
            ra = set(submodule_generated(mod, [a]))
            for sub in (set(submodule_generated(mod, [c]))
                        for c in ra if c != mod.zero):
                assert sub == ra
            for b in delta:
                rb = set(submodule_generated(mod, [b]))
                assert ra == rb or ra & rb == {mod.zero}


# ---------------------------------------------------------------------------
# phi conditions


def evens_and_ones_tags(mod, basis):
    evens = submodule_generated(
        mod, [mod.add(basis[i], basis[i + 1]) for i in range(len(basis) - 1)])
    ones = mod.zero
    for b in basis:
        ones = mod.add(ones, b)
    return evens, submodule_generated(mod, [ones])


def test_phi1_holds_for_covered_cube():
    mod, basis = free_module(Z2, 3)
    evens, ones = evens_and_ones_tags(mod, basis)
    tagged = TaggedModule(mod, (evens, ones))
    assert check_phi1(tagged, basis, [0])


def test_phi1_fails_when_uncovered():
    mod, basis = free_module(Z2, 3)
    tagged = TaggedModule(mod, ())
    assert not check_phi1(tagged, basis, [0])


def test_phi1_fails_when_tag_hits_basis_multiple():
    mod, basis = free_module(Z2, 2)
    line = submodule_generated(mod, [basis[0]])
    tagged = TaggedModule(mod, (line,))
    assert not check_phi1(tagged, basis, [0])


def test_phi0_errors_are_distinct():
    mod, basis = free_module(Z2, 2)
    with pytest.raises(Phi0Error, match="span"):
        check_phi1(TaggedModule(mod, ()), basis[:1], [0])
    with pytest.raises(Phi0Error, match="submodule"):
        check_phi1(TaggedModule(mod, ((basis[0], basis[1]),)), basis, [0])
    xs = basis + [mod.add(basis[0], basis[1])]
    with pytest.raises(Phi0Error, match="independent"):
        check_phi1(TaggedModule(mod, ()), xs, [0])


def test_phi1_over_z4_ideal_two():
    mod, basis = f2_squared_over_z4()
    # delta = all nonzero elements; x0+x1 needs a tag
    diag = submodule_generated(mod, [mod.add(basis[0], basis[1])])
    assert check_phi1(TaggedModule(mod, (diag,)), basis, [0, 2])
    assert not check_phi1(TaggedModule(mod, ()), basis, [0, 2])


# ---------------------------------------------------------------------------
# brute-force isomorphism


def test_iso_identity_and_tag_relabelling():
    mod, basis = free_module(Z2, 2)
    a = TaggedModule(mod, (submodule_generated(mod, [basis[0]]),))
    b = TaggedModule(mod, (submodule_generated(mod, [basis[1]]),))
    iso = brute_force_isomorphic(a, b)
    assert iso is not None
    assert iso[basis[0]] in b.tags[0]
    assert brute_force_isomorphic(a, a) is not None


def test_iso_respects_tag_indices():
    mod, basis = free_module(Z2, 2)
    t_line = submodule_generated(mod, [basis[0]])
    t_all = tuple(mod.elements())
    a = TaggedModule(mod, (t_line, t_all))
    b = TaggedModule(mod, (t_all, t_line))
    assert brute_force_isomorphic(a, b) is None


def test_iso_distinguishes_module_structure():
    z4mod = TaggedModule(ring_as_module(Z4), ())
    f2sq = TaggedModule(f2_squared_over_z4()[0], ())
    assert brute_force_isomorphic(z4mod, f2sq) is None


def test_iso_zero_tag_tail_is_implicit():
    mod, basis = free_module(Z2, 2)
    line = submodule_generated(mod, [basis[0]])
    a = TaggedModule(mod, (line,))
    b = TaggedModule(mod, (line, (mod.zero,), (mod.zero,)))
    assert b.tags == a.tags
    assert brute_force_isomorphic(a, b) is not None


def test_iso_found_map_is_isomorphism():
    mod, basis = f2_squared_over_z4()
    diag = submodule_generated(mod, [mod.add(basis[0], basis[1])])
    a = TaggedModule(mod, (diag,))
    b = TaggedModule(mod, (submodule_generated(mod, [basis[0]]),))
    iso = brute_force_isomorphic(a, b)
    assert iso is not None
    for x in mod.elements():
        for y in mod.elements():
            assert iso[mod.add(x, y)] == mod.add(iso[x], iso[y])
        for r in Z4.elements():
            assert iso[mod.act(r, x)] == mod.act(r, iso[x])
        assert (x in a.tags[0]) == (iso[x] in b.tags[0])


def test_iso_guard_refuses():
    mod, _ = free_module(Z2, 3)
    a = TaggedModule(mod, ())
    with pytest.raises(GuardError):
        brute_force_isomorphic(a, a, guard=1)


# ---------------------------------------------------------------------------
# properties

MODULES = {
    "Z4": ring_as_module(Z4),
    "F2^2": free_module(Z2, 2)[0],
    "F2^3": free_module(Z2, 3)[0],
    "F2^2/Z4": f2_squared_over_z4()[0],
}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(MODULES)), st.data())
def test_submodule_generated_is_closed(name, data):
    mod = MODULES[name]
    gens = data.draw(st.lists(
        st.integers(min_value=0, max_value=mod.size - 1), max_size=3))
    sub = submodule_generated(mod, gens)
    assert oracle_is_submodule(mod, sub)
    assert all(g in sub for g in gens)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(MODULES)), st.data())
def test_r_star_saturated(name, data):
    mod = MODULES[name]
    ys = data.draw(st.lists(
        st.integers(min_value=0, max_value=mod.size - 1), max_size=3))
    once = r_star(mod, ys)
    assert r_star(mod, once) == once
