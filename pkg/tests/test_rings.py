import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ringdichotomy.catalog import catalog_rings
from ringdichotomy.rings import (
    GuardError,
    Ideal,
    all_ideals,
    annihilator,
    check_ring_axioms,
    crt_split,
    f2_xy_square_zero,
    ideal_generated,
    poly_quot,
    product_ring,
    quotient_ring,
    ring_isomorphism,
    spectrum,
    zmod,
)

CATALOG = catalog_rings()


# ---------------------------------------------------------------------------
# independent subset-scan oracles (kept deliberately dumb)


def oracle_is_ideal(ring, subset):
    s = set(subset)
    if ring.zero not in s:
        return False
    for a in s:
        for b in s:
            if ring.add(a, b) not in s:
                return False
        for r in ring.elements():
            if ring.mul(r, a) not in s:
                return False
    return True


def oracle_all_ideals(ring):
    nz = [a for a in ring.elements() if a != ring.zero]
    found = []
    for mask in range(1 << len(nz)):
        subset = {ring.zero}
        for i, a in enumerate(nz):
            if mask >> i & 1:
                subset.add(a)
        if oracle_is_ideal(ring, subset):
            found.append(tuple(sorted(subset)))
    found.sort(key=lambda t: (len(t), t))
    return found


def oracle_maximal(ring, ideals):
    proper = [set(i) for i in ideals if ring.one not in i]
    return sorted(tuple(sorted(p)) for p in proper
                  if not any(p < q for q in proper))


def oracle_primes(ring, ideals):
    out = []
    for i in ideals:
        s = set(i)
        if ring.one in s:
            continue
        if all(ring.mul(a, b) not in s or a in s or b in s
               for a in ring.elements() for b in ring.elements()):
            out.append(i)
    return out


def oracle_nilpotents(ring):
    out = []
    for a in ring.elements():
        x = a
        for _ in range(ring.size + 1):
            if x == ring.zero:
                out.append(a)
                break
            x = ring.mul(x, a)
    return sorted(out)


# ---------------------------------------------------------------------------
# axioms


def test_catalog_rings_pass_axioms():
    for name, ring in CATALOG.items():
        assert check_ring_axioms(ring).ok, name


def test_tampered_table_reports_witness():
    r = zmod(4)
    r.mul_table[3][3] = 0  # 3*3 should be 1
    report = check_ring_axioms(r)
    assert not report.ok
    axiom, witness = report.failure
    assert axiom in ("mul-associative", "distributive", "mul-commutative")
    assert len(witness) in (2, 3)


# ---------------------------------------------------------------------------
# ideals


def test_ideal_generated_examples():
    z4 = CATALOG["Z/4"]
    assert ideal_generated(z4, [2]).elements == (0, 2)
    assert ideal_generated(z4, []).elements == (0,)
    r8 = CATALOG["F2[x,y]/(x2,xy,y2)"]
    x = 2  # coefficient vector (0,1,0) packed little-endian base 2
    assert r8.elem_name(x) == "x"
    assert ideal_generated(r8, [x]).elements == (0, x)


def test_all_ideals_matches_subset_scan_oracle():
    for name, ring in CATALOG.items():
        got = [i.elements for i in all_ideals(ring)]
        assert got == oracle_all_ideals(ring), name


def test_all_ideals_known_shapes():
    assert [i.elements for i in all_ideals(CATALOG["Z/4"])] == \
        [(0,), (0, 2), (0, 1, 2, 3)]
    assert len(all_ideals(CATALOG["Z/6"])) == 4
    assert len(all_ideals(CATALOG["F4"])) == 2


def test_all_ideals_guard():
    with pytest.raises(GuardError):
        all_ideals(zmod(65))


def test_annihilator_examples():
    z4 = CATALOG["Z/4"]
    assert annihilator(z4, [2]).elements == (0, 2)
    assert annihilator(z4, [z4.one]).elements == (0,)
    r8 = CATALOG["F2[x,y]/(x2,xy,y2)"]
    ann_x = annihilator(r8, [2])
    assert len(ann_x) == 4 and r8.one not in ann_x


def test_annihilator_triple_idempotence():
    # Ann(Ann(Ann(X))) == Ann(X) for every subset of a couple of rings
    for ring in (CATALOG["Z/6"], CATALOG["F2[x]/(x2)"]):
        for k in range(ring.size + 1):
            for xs in itertools.combinations(range(ring.size), k):
                a1 = annihilator(ring, xs).elements
                a3 = annihilator(
                    ring, annihilator(ring, a1).elements).elements
                assert a3 == a1


# ---------------------------------------------------------------------------
# quotients and products


def test_quotient_z4_by_two_is_f2():
    z4 = CATALOG["Z/4"]
    q, proj = quotient_ring(z4, ideal_generated(z4, [2]))
    assert q.size == 2
    assert ring_isomorphism(q, zmod(2)) is not None
    # kernel is exactly the ideal
    assert sorted(a for a in z4.elements() if proj[a] == q.zero) == [0, 2]


def test_quotient_by_zero_is_identity():
    z6 = CATALOG["Z/6"]
    q, proj = quotient_ring(z6, Ideal(z6, (0,)))
    assert q.size == 6 and sorted(proj) == list(range(6))


def test_quotient_z6_by_three():
    z6 = CATALOG["Z/6"]
    q, _ = quotient_ring(z6, ideal_generated(z6, [3]))
    assert ring_isomorphism(q, zmod(3)) is not None


def test_quotient_projection_is_homomorphism():
    r8 = CATALOG["F2[x,y]/(x2,xy,y2)"]
    ideal = ideal_generated(r8, [2])
    q, proj = quotient_ring(r8, ideal)
    for a in r8.elements():
        for b in r8.elements():
            assert proj[r8.add(a, b)] == q.add(proj[a], proj[b])
            assert proj[r8.mul(a, b)] == q.mul(proj[a], proj[b])


def test_product_crt_and_idempotents():
    p = product_ring([zmod(2), zmod(3)])
    assert ring_isomorphism(p, zmod(6)) is not None
    assert product_ring([zmod(4)]).same_tables(zmod(4))
    assert len(product_ring([zmod(2), zmod(2)]).idempotents()) == 4
    assert product_ring([]).size == 1


# ---------------------------------------------------------------------------
# spectrum


def test_spectrum_matches_oracle():
    for name, ring in CATALOG.items():
        sp = spectrum(ring)
        ideals = oracle_all_ideals(ring)
        assert sorted(m.elements for m in sp.maximal_ideals) == \
            oracle_maximal(ring, ideals), name
        assert sorted(p.elements for p in sp.prime_ideals) == \
            sorted(oracle_primes(ring, ideals)), name
        assert list(sp.nilradical.elements) == oracle_nilpotents(ring), name
        assert sp.idempotents == [e for e in ring.elements()
                                  if ring.mul(e, e) == e], name


def test_spectrum_z6():
    sp = spectrum(CATALOG["Z/6"])
    assert sorted(m.elements for m in sp.maximal_ideals) == \
        [(0, 2, 4), (0, 3)]
    assert sp.nilradical.elements == (0,)
    assert sp.idempotents == [0, 1, 3, 4]


def test_spectrum_z4():
    sp = spectrum(CATALOG["Z/4"])
    assert sp.nilradical.elements == (0, 2)
    assert sp.jacobson_radical.elements == (0, 2)
    assert sp.jacobson_equals_nilradical
    assert sp.idempotents == [0, 1]


def test_unit_or_zero_divisor_dichotomy():
    for ring in CATALOG.values():
        for a in ring.elements():
            assert ring.is_unit(a) != ring.is_zero_divisor(a) or ring.size == 1


# ---------------------------------------------------------------------------
# crt


def test_crt_split_z12():
    split = crt_split(CATALOG["Z/12"])
    assert sorted(f.size for f in split.factors) == [3, 4]


def test_crt_split_local_is_identity_shaped():
    split = crt_split(CATALOG["Z/4"])
    assert len(split.factors) == 1
    assert split.idempotents == [1]


def test_crt_split_z6_two_fields():
    split = crt_split(CATALOG["Z/6"])
    assert sorted(f.size for f in split.factors) == [2, 3]
    for f in split.factors:
        assert len(all_ideals(f)) == 2  # fields


def test_crt_split_is_ring_isomorphism():
    for name, ring in CATALOG.items():
        split = crt_split(ring)
        # orthogonal idempotents summing to one
        total = ring.zero
        for e in split.idempotents:
            assert ring.mul(e, e) == e
            total = ring.add(total, e)
        assert total == ring.one
        for e, f in itertools.combinations(split.idempotents, 2):
            assert ring.mul(e, f) == ring.zero
        # to_factors is a bijective homomorphism onto the product
        images = {split.to_factors(a) for a in ring.elements()}
        assert len(images) == ring.size
        for a in ring.elements():
            for b in ring.elements():
                fa, fb = split.to_factors(a), split.to_factors(b)
                assert split.to_factors(ring.add(a, b)) == tuple(
                    fac.add(x, y) for fac, x, y in
                    zip(split.factors, fa, fb))
                assert split.to_factors(ring.mul(a, b)) == tuple(
                    fac.mul(x, y) for fac, x, y in
                    zip(split.factors, fa, fb))
            assert split.from_factors(split.to_factors(a)) == a
        # every factor is local
        for f in split.factors:
            assert len(spectrum(f).maximal_ideals) == 1, name


# ---------------------------------------------------------------------------
# isomorphism oracle


def test_ring_isomorphism_distinguishes():
    assert ring_isomorphism(zmod(4), poly_quot(2, [0, 0, 1])) is None
    assert ring_isomorphism(CATALOG["F4"],
                            product_ring([zmod(2), zmod(2)])) is None
    assert ring_isomorphism(CATALOG["F2[x]/(x3)"], zmod(8)) is None


def test_ring_isomorphism_identity_and_symmetry():
    for ring in (CATALOG["Z/6"], CATALOG["F4"]):
        iso = ring_isomorphism(ring, ring)
        assert iso is not None
        for a in ring.elements():
            for b in ring.elements():
                assert iso[ring.add(a, b)] == ring.add(iso[a], iso[b])
                assert iso[ring.mul(a, b)] == ring.mul(iso[a], iso[b])


# ---------------------------------------------------------------------------
# properties

ring_names = st.sampled_from(sorted(CATALOG))


@settings(max_examples=60, deadline=None)
@given(ring_names, st.data())
def test_ideal_generated_output_is_ideal(name, data):
    ring = CATALOG[name]
    gens = data.draw(st.lists(
        st.integers(min_value=0, max_value=ring.size - 1), max_size=3))
    ideal = ideal_generated(ring, gens)
    assert oracle_is_ideal(ring, ideal.elements)
    assert all(g in ideal for g in gens)


@settings(max_examples=40, deadline=None)
@given(ring_names, st.data())
def test_annihilator_is_ideal(name, data):
    ring = CATALOG[name]
    xs = data.draw(st.lists(
        st.integers(min_value=0, max_value=ring.size - 1), max_size=3))
    assert oracle_is_ideal(ring, annihilator(ring, xs).elements)
