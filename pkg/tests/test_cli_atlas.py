import json
import multiprocessing
import os

import pytest

from tourclique.atlas import Atlas, AtlasRecord
from tourclique.cli import run
from tourclique.constructions import build_d
from tourclique.core import canonical_code, format_trn, parse_trn


def write_trn(tmp_path, name, T):
    p = tmp_path / name
    p.write_text(format_trn(T))
    return str(p)


def test_gen_and_omega_roundtrip(tmp_path, capsys):
    out = str(tmp_path / "d3.trn")
    assert run(["gen", "--family", "D", "--n", "3", "-o", out]) == 0
    T = parse_trn(open(out).read())
    assert T == build_d(3)
    labels = open(out + ".labels").read().splitlines()
    assert len(labels) == 7 and labels[-1].endswith("3.d")
    assert run(["omega", out]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert run(["chi", out, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == 3 and payload["schema"] == 1


def test_omega_budget_exit_code(tmp_path, capsys):
    p = write_trn(tmp_path, "d3.trn", build_d(3))
    assert run(["omega", p, "--budget", "0"]) == 3
    capsys.readouterr()
    # beyond the exact range the command reports certified bounds instead,
    # and the randomized fallback insists on an explicit seed
    p4 = write_trn(tmp_path, "d4.trn", build_d(4))
    assert run(["omega", p4]) == 2
    capsys.readouterr()
    assert run(["omega", p4, "--seed", "1"]) == 0
    assert capsys.readouterr().out.startswith("bounds [")


def test_contains_exit_codes(tmp_path, capsys):
    a3 = str(tmp_path / "a3.trn")
    d3 = str(tmp_path / "d3.trn")
    u3 = str(tmp_path / "u3.trn")
    run(["gen", "--family", "A", "--n", "3", "-o", a3])
    run(["gen", "--family", "D", "--n", "3", "-o", d3])
    run(["gen", "--family", "U", "--n", "3", "-o", u3])
    assert run(["contains", "--host", a3, "--pattern", d3]) == 1
    assert capsys.readouterr().out.strip() == "not found"
    assert run(["contains", "--host", a3, "--pattern", u3]) == 0
    capsys.readouterr()


def test_mountain_and_bounds_commands(tmp_path, capsys):
    d3 = write_trn(tmp_path, "d3.trn", build_d(3))
    assert run(["mountain", d3, "--r", "1", "--s", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mountain"]["s"] == 2
    assert run(["bounds", "ramsey", "--s", "3", "--t", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("6")
    assert run(["bounds", "ladder", "--b", "1"]) == 0
    assert "c_3 = 53" in capsys.readouterr().out
    assert run(["bounds", "f", "--t", "1"]) == 0
    capsys.readouterr()


def test_chain_commands(tmp_path, capsys):
    from conftest import cyclic_triangle, forward_layers, quad_backward_instance
    T = forward_layers([cyclic_triangle()] * 3)
    trn = write_trn(tmp_path, "layers.trn", T)
    bags = tmp_path / "bags.txt"
    bags.write_text("0 1 2\n3 4 5\n6 7 8\n")
    assert run(["chain", "verify", trn, "--bags", str(bags),
                "--c", "2", "--a", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["valid"]
    assert run(["chain", "merge", trn, "--bags", str(bags),
                "--c", "2", "--a", "0"]) == 0
    merged = json.loads(capsys.readouterr().out)
    assert merged["bags"] == [[0, 1, 2, 3, 4, 5, 6, 7, 8]]
    quad = write_trn(tmp_path, "quad.trn", quad_backward_instance())
    qbags = tmp_path / "qbags.txt"
    qbags.write_text("\n".join(str(i) for i in range(12)))
    assert run(["chain", "dichotomy", quad, "--bags", str(qbags),
                "--c", "1", "--a", "1", "--c-small", "1", "--m", "2",
                "--relax"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "embedding" and len(payload["embedding"]) == 3


def test_usage_errors(capsys):
    assert run(["omega"]) == 2
    assert run(["no-such-command"]) == 2
    capsys.readouterr()


def test_lemma_suite_and_audit(capsys):
    assert run(["mountain-audit", "--seed", "5", "--cases", "8"]) == 0
    assert run(["lemma-suite", "--seed", "5", "--count", "8"]) == 0
    capsys.readouterr()


# ---------------------------------------------------------------------------
# atlas


def test_atlas_roundtrip(tmp_path):
    db = str(tmp_path / "atlas.bin")
    atlas = Atlas(db)
    rec = AtlasRecord(code="ab", n=3, omega=2, omega_mode="exact", chi=2,
                      chi_mode="exact", omega_a=2, omega_d=2)
    atlas.upsert(rec)
    got = atlas.get("ab")
    assert got == rec
    assert atlas.get("zz") is None
    rec2 = AtlasRecord(code="ab", n=3, omega=2, omega_mode="exact", chi=3,
                       chi_mode="exact", omega_a=2, omega_d=2)
    atlas.upsert(rec2)
    assert atlas.get("ab").chi == 3  # last write wins
    assert atlas.compact() == 1
    assert atlas.get("ab").chi == 3


def test_atlas_validation():
    with pytest.raises(ValueError):
        AtlasRecord(code="x", n=3, omega=4, omega_mode="exact", chi=2,
                    chi_mode="exact", omega_a=1, omega_d=1).validate()
    with pytest.raises(ValueError):
        AtlasRecord(code="x", n=3, omega=2, omega_mode="exact", chi=2,
                    chi_mode="exact", omega_a=0, omega_d=1).validate()


def test_atlas_quarantines_corruption(tmp_path):
    db = str(tmp_path / "atlas.bin")
    atlas = Atlas(db)
    for i in range(3):
        atlas.upsert(AtlasRecord(code=f"c{i}", n=1, omega=1,
                                 omega_mode="exact", chi=1, chi_mode="exact",
                                 omega_a=1, omega_d=1))
    data = bytearray(open(db, "rb").read())
    data[10] ^= 0xFF  # flip a payload byte of the first record
    open(db, "wb").write(bytes(data))
    recs = atlas.records()
    assert len(recs) == 2 and len(atlas.quarantined) == 1
    assert atlas.quarantined[0][1] == "checksum mismatch"


def _atlas_worker(args):
    db, code = args
    Atlas(db).upsert(AtlasRecord(code=code, n=1, omega=1, omega_mode="exact",
                                 chi=1, chi_mode="exact", omega_a=1,
                                 omega_d=1))


def test_atlas_two_processes(tmp_path):
    db = str(tmp_path / "atlas.bin")
    codes = [f"p{i}" for i in range(8)]
    with multiprocessing.Pool(2) as pool:
        pool.map(_atlas_worker, [(db, c) for c in codes])
    recs = Atlas(db).records()
    assert set(recs) == set(codes)


def test_atlas_cli(tmp_path, capsys):
    d3 = write_trn(tmp_path, "d3.trn", build_d(3))
    db = str(tmp_path / "atlas.bin")
    assert run(["atlas", "add", d3, "--db", db]) == 0
    code = capsys.readouterr().out.strip()
    assert code == canonical_code(build_d(3)).hex()
    assert run(["atlas", "get", "--code", code, "--db", db]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["omega"] == 2 and rec["chi"] == 3
    assert rec["omega_a"] == 2 and rec["omega_d"] == 3
    assert run(["atlas", "get", "--code", "ffff", "--db", db]) == 1
    capsys.readouterr()
    assert run(["atlas", "compact", "--db", db]) == 0
    capsys.readouterr()
    assert run(["atlas", "list", "--db", db]) == 0
    assert code in capsys.readouterr().out
