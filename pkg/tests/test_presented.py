import pytest

from ringdichotomy.presented import (
    PolyQuotRing,
    ZRing,
    ZmodRing,
    presented_from_json,
)
from ringdichotomy.rings import ShapeError, ring_isomorphism, zmod


def test_z_basics():
    z = ZRing()
    assert z.add(2, 3) == 5 and z.mul(-2, 3) == -6
    assert z.is_unit(1) and z.is_unit(-1) and not z.is_unit(2)
    assert z.is_zero_divisor(0) and not z.is_zero_divisor(5)
    assert z.to_finite() is None
    assert z.parse_element("-7") == -7


def test_zmod_matches_table_ring():
    zm = ZmodRing(12)
    fin = zm.to_finite()
    for a in range(12):
        assert zm.is_unit(a) == fin.is_unit(a)
        assert zm.is_zero_divisor(a) == fin.is_zero_divisor(a)
        for b in range(12):
            assert zm.add(a, b) == fin.add(a, b)
            assert zm.mul(a, b) == fin.mul(a, b)


def test_polyquot_normal_forms_idempotent():
    pq = PolyQuotRing(2, [1, 1, 1])  # F4
    for a in ((0, 0), (1, 0), (0, 1), (1, 1)):
        assert pq.normalize(list(a)) == a
    # x * x = x + 1 mod x^2+x+1
    assert pq.mul((0, 1), (0, 1)) == (1, 1)
    # reduction of a degree-3 input terminates at a normal form
    long = pq.normalize([1, 0, 1, 1])
    assert pq.normalize(list(long)) == long


def test_polyquot_finite_is_f4():
    pq = PolyQuotRing(2, [1, 1, 1])
    from ringdichotomy.rings import poly_quot
    assert ring_isomorphism(pq.to_finite(), poly_quot(2, [1, 1, 1]))


def test_polyquot_units():
    pq = PolyQuotRing(2, [0, 0, 1])  # F2[x]/(x^2)
    assert pq.is_unit((1, 0)) and pq.is_unit((1, 1))
    assert pq.is_zero_divisor((0, 1))
    assert pq.parse_element("1,1") == (1, 1)
    assert pq.format_element((1, 1)) == "1,1"


def test_polyquot_requires_monic():
    with pytest.raises(ShapeError):
        PolyQuotRing(4, [1, 2])


def test_json_round_trip():
    for ring in (ZRing(), ZmodRing(9), PolyQuotRing(2, [1, 1, 1])):
        back = presented_from_json(ring.to_json())
        assert back.to_json() == ring.to_json()
    with pytest.raises(ShapeError):
        presented_from_json({"kind": "mystery"})
