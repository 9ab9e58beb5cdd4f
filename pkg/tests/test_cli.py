import json

import pytest

from ringdichotomy.cli import run, _endo_from_json
from ringdichotomy.reductions import (
    doubled_annihilator_ideal,
    endo_isomorphic,
    endo_pullback,
)
from ringdichotomy.modules import free_module, ring_as_module
from ringdichotomy.rings import f2_xy_square_zero, zmod


def cli(capsys, *argv):
    rc = run(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out


def write(tmp_path, name, data):
    path = tmp_path / name
    if isinstance(data, str):
        path.write_text(data)
    else:
        path.write_text(json.dumps(data))
    return str(path)


def module_json(mod, tags=()):
    return {"ring": mod.ring.to_json(), "size": mod.size,
            "add": mod.add_table, "act": mod.act_table,
            "tags": [list(t) for t in tags]}


@pytest.fixture
def z4_ring(tmp_path):
    return write(tmp_path, "z4.ring", {"kind": "Zmod", "n": 4})


@pytest.fixture
def wild_ring(tmp_path):
    return write(tmp_path, "wild.ring",
                 {"catalog": "F2[x,y]/(x2,xy,y2)"})


@pytest.fixture
def path3(tmp_path):
    return write(tmp_path, "path3.graph", "3\n0 1\n1 2\n")


# ---------------------------------------------------------------------------
# classify / census / verify-witness


def test_classify_pir(capsys, z4_ring):
    rc, out = cli(capsys, "classify", z4_ring)
    assert rc == 0
    verdict = json.loads(out)
    assert verdict["verdict"] == "PIR"
    assert verdict["factors"][0]["chain_sizes"] == [4, 2, 1]


def test_classify_wild_exit_10(capsys, wild_ring):
    rc, out = cli(capsys, "classify", wild_ring)
    assert rc == 10
    verdict = json.loads(out)
    assert verdict["verdict"] == "BorelComplete"
    assert verdict["reverified"] is True
    assert verdict["witness"]["kind"] == "thmB"


def test_classify_parse_error(capsys, tmp_path):
    bad = write(tmp_path, "bad.ring", "not json")
    rc, _ = cli(capsys, "classify", bad)
    assert rc == 2


def test_census_table(capsys, z4_ring):
    rc, out = cli(capsys, "census", z4_ring, "--max-order", "4")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "order\tclasses"
    assert lines[1:] == ["1\t1", "2\t1", "3\t0", "4\t2"]


def test_census_guard_exit_3(capsys, z4_ring):
    rc, _ = cli(capsys, "census", z4_ring, "--max-order", "32")
    assert rc == 3


def test_verify_witness_variants(capsys, tmp_path, z4_ring):
    z = write(tmp_path, "z.ring", {"kind": "Z"})
    rc, out = cli(capsys, "verify-witness", z, "--thmA", "2")
    assert rc == 0 and json.loads(out)["verdict"] is True
    rc, out = cli(capsys, "verify-witness", z4_ring, "--thmA", "2")
    assert json.loads(out)["verdict"] is False
    rc, out = cli(capsys, "verify-witness", z, "--thmC", "1;2")
    assert json.loads(out)["verdict"] is False
    rc, out = cli(capsys, "verify-witness", z, "--nonmax-prime", "0")
    assert json.loads(out)["verdict"] is True
    rc, out = cli(capsys, "verify-witness", z4_ring, "--inf-orth", "fam")
    assert json.loads(out)["verdict"] is False
    rc, _ = cli(capsys, "verify-witness", z)
    assert rc == 2  # no variant flag


# ---------------------------------------------------------------------------
# graph coding


def test_code_decode_round_trip(capsys, tmp_path, path3):
    rc, out = cli(capsys, "code-graph", path3)
    assert rc == 0
    coded = write(tmp_path, "coded.json", out)
    rc, decoded = cli(capsys, "decode-module", coded)
    assert rc == 0
    assert decoded == "3\n0 1\n1 2\n"


def test_code_graph_deterministic(capsys, path3):
    _, out1 = cli(capsys, "code-graph", path3)
    _, out2 = cli(capsys, "code-graph", path3)
    assert out1 == out2


def test_decode_needs_roles(capsys, tmp_path, path3):
    _, out = cli(capsys, "code-graph", path3)
    obj = json.loads(out)
    del obj["roles"]
    rc, _ = cli(capsys, "decode-module", write(tmp_path, "x.json", obj))
    assert rc == 2


def test_decode_error_exit_4(capsys, tmp_path, path3):
    _, out = cli(capsys, "code-graph", path3)
    obj = json.loads(out)
    obj["roles"][1] = "mystery"  # drop a sort the decoder needs
    rc, _ = cli(capsys, "decode-module", write(tmp_path, "x.json", obj))
    assert rc == 4


def test_lift_iso(capsys, tmp_path, path3):
    other = write(tmp_path, "other.graph", "3\n1 2\n0 2\n")
    rc, out = cli(capsys, "lift-iso", path3, other)
    assert rc == 0
    sigma = json.loads(out)["sigma"]
    assert sorted(sigma) == list(range(len(sigma)))
    tri = write(tmp_path, "tri.graph", "3\n0 1\n1 2\n0 2\n")
    rc, _ = cli(capsys, "lift-iso", path3, tri)
    assert rc == 2


# ---------------------------------------------------------------------------
# reductions


def swap_endo_file(tmp_path):
    mod, _ = free_module(zmod(2), 2)
    return write(tmp_path, "swap.endo",
                 {"module": module_json(mod), "T": [0, 2, 1, 3]})


def test_reduce_endo_4sub_round_trip(capsys, tmp_path):
    endo = swap_endo_file(tmp_path)
    rc, out = cli(capsys, "reduce", "endo-to-4sub", endo)
    assert rc == 0
    four = write(tmp_path, "four.json", out)
    rc, out = cli(capsys, "reduce", "4sub-to-endo", four)
    assert rc == 0
    assert json.loads(out)["T"] == [0, 2, 1, 3]


def test_reduce_thmB_round_trip(capsys, tmp_path):
    endo = swap_endo_file(tmp_path)
    rc, out = cli(capsys, "reduce", "thmB-code", endo)
    assert rc == 0
    coded = write(tmp_path, "tb.json", out)
    rc, out = cli(capsys, "reduce", "thmB-decode", coded)
    assert rc == 0
    decoded = _endo_from_json(json.loads(out))
    ring = f2_xy_square_zero()
    ideal = doubled_annihilator_ideal(ring, 2, 4)
    original = _endo_from_json(json.loads(
        (tmp_path / "swap.endo").read_text()))
    lifted = endo_pullback(ring, ideal, original)
    assert endo_isomorphic(lifted, decoded) is not None


def test_reduce_freelike_round_trip(capsys, tmp_path):
    mod = ring_as_module(zmod(4))
    src = write(tmp_path, "z4t.module", module_json(mod, ((0, 2),)))
    rc, out = cli(capsys, "reduce", "freelike", src)
    assert rc == 0
    fl = write(tmp_path, "fl.json", out)
    rc, out = cli(capsys, "reduce", "freelike-decode", fl)
    assert rc == 0
    back = json.loads(out)
    assert back["add"] == mod.add_table
    assert back["tags"] == [[0, 2]]


def test_reduce_polymod_to_endo(capsys, tmp_path):
    from ringdichotomy.presented import PolyQuotRing
    p = PolyQuotRing(2, [0, 0, 1])
    mod = ring_as_module(p.to_finite())
    obj = module_json(mod)
    obj["ring"] = p.to_json()
    src = write(tmp_path, "poly.module", obj)
    rc, out = cli(capsys, "reduce", "polymod-to-endo", src)
    assert rc == 0
    endo = json.loads(out)
    assert endo["T"] == [0, 2, 0, 2]  # multiply by x, x^2 = 0
    assert endo["module"]["ring"]["size"] == 2


# ---------------------------------------------------------------------------
# tfab and chains


def test_tfab_code_output(capsys, path3):
    rc, out = cli(capsys, "tfab-code", path3)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "rank 3 depth 16 generators 8"
    assert lines[1:4] == ["1 0 0", "0 1 0", "0 0 1"]
    assert lines[7] == "4233 4233 0"
    _, again = cli(capsys, "tfab-code", path3)
    assert out == again


def test_tfab_code_edgeless(capsys, tmp_path):
    lone = write(tmp_path, "k2.graph", "2\n")
    rc, out = cli(capsys, "tfab-code", lone)
    assert rc == 0
    assert out.splitlines()[0] == "rank 2 depth 16 generators 4"


def test_chain_build_and_inspect(capsys, tmp_path):
    rc, out = cli(capsys, "chain", "build", "--length", "3")
    assert rc == 0
    obj = json.loads(out)
    assert obj["verified"] is True
    assert len(obj["stages"]) == 3
    assert len(obj["certs"]) == 2
    assert obj["stages"][1]["module"]["size"] == 8
    dump = write(tmp_path, "chain.json", out)
    rc, table = cli(capsys, "chain", "inspect", dump)
    assert rc == 0
    assert table.splitlines()[0] == "stage\tclasses\tsupport\tcarrier\ttags"
