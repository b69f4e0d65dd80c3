import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import F, rank1_pencil, skew_pencil
from degdet import io
from degdet.apps import MatchingInstance
from degdet.cli import main
from degdet.errors import ParseError
from degdet.fields import QQ

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


# ------------------------------------------------------------ documents


def test_parse_errors_carry_location():
    with pytest.raises(io.DocumentError, match="line 1, column 2") as e:
        io.loads("{,}")
    assert e.value.position == 1
    with pytest.raises(io.DocumentError, match="missing key 'kind'"):
        io.loads("{}")
    with pytest.raises(io.DocumentError, match="unknown kind"):
        io.loads('{"kind": "graph"}')
    with pytest.raises(io.DocumentError, match="unsupported version"):
        io.loads('{"kind": "pencil", "version": 2}')
    doc = {"kind": "pencil", "n": 1, "terms": [{"var": 1, "entries": [["t^"]]}]}
    with pytest.raises(io.DocumentError) as e:
        io.parse_document(doc)
    assert "terms[0].entries[0][0]" in str(e.value) and e.value.position is not None


def test_entries_and_fields():
    kind, A = io.parse_document(
        {"kind": "pencil", "field": {"kind": "rational"}, "n": 2, "terms": [{"var": 0, "entries": [[1, "1/2*t"], [0, "t^-1"]]}]}
    )
    assert kind == "pencil" and A.field == QQ and A.terms[0].degree == 1


def test_matrix_text_round_trip():
    text = "# a comment\nt^2, 1\n0, t + 1\n"
    M = io.parse_matrix_text(text, F)
    assert io.parse_matrix_text(io.format_matrix_text(F, M), F).tolist() == M.tolist()
    with pytest.raises(ParseError):
        io.parse_matrix_text("1, 2\n3\n", F)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_pencil_round_trip(seed):
    rng = np.random.default_rng(seed)
    A = rank1_pencil(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)), 2)
    kind, B = io.loads(io.dumps(io.dump_pencil(A)))
    assert kind == "pencil" and len(B.terms) == len(A.terms)
    assert all(M == N for M, N in zip(A.terms, B.terms))


def test_matching_round_trip_is_one_based():
    inst = MatchingInstance(2, ((0, 1, 3), (1, 0, -2)))
    doc = io.dump_matching(inst)
    assert [1, 2, 3] in doc["edges"]
    assert io.parse_document(doc)[1] == inst
    bad = dict(doc, edges=[[1, 2, 3], [1, 2, 4]])
    with pytest.raises(io.DocumentError, match="duplicate"):
        io.parse_document(bad)


# ------------------------------------------------------------ command line


def test_solve_routes_agree(capsys):
    for algo in ("sda", "sda-kappa", "relax"):
        code, out, err = run(capsys, "solve", DATA / "skew3.json", "--mvsp", "brute", "--algorithm", algo)
        assert code == 0 and out[0] == "6" and "seed: 0" in err


def test_solve_with_oracle_trials(capsys, tmp_path):
    doc = tmp_path / "p.json"
    doc.write_text(io.dumps(io.dump_pencil(skew_pencil(F, (1, 2, 3)))))
    code, out, _ = run(capsys, "solve", doc, "--trials", "3")
    assert out[0] == "6" and out[1].startswith("commutative deg det: -inf")


def test_report_is_reproducible(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(capsys, "solve", DATA / "skew3.json", "--seed", 5, "--report", p)[0] == 0
    a, b = (json.loads(p.read_text()) for p in paths)
    assert a == b and a["seed"] == 5 and a["value"] == 6


def test_application_commands(capsys):
    assert run(capsys, "matching", DATA / "matching.json")[1][0] == "5"
    code, out, _ = run(capsys, "matroid-base", DATA / "matroid_base.json")
    assert code == 0 and out[1].startswith("base:")
    assert run(capsys, "matroid-intersection", DATA / "intersection.json")[0] == 0
    assert run(capsys, "mixed", DATA / "mixed.json")[1][0] == "2"
    assert run(capsys, "dae-index", DATA / "mixed.json", "--delta", 2)[1][0] == "0"
    assert run(capsys, "smith", DATA / "smith.txt")[0] == 0
    assert run(capsys, "subdet", DATA / "skew3.json", "--mvsp", "brute")[1][0] == "6"
    assert run(capsys, "ncrank", DATA / "skew3_flat.json")[1][0] == "3"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 1
    assert run(capsys, "dae-index", DATA / "mixed.json")[0] == 1
    assert run(capsys, "matching", DATA / "skew3.json")[0] == 1
    assert run(capsys, "ncrank", DATA / "skew3.json")[0] == 1
    assert run(capsys, "solve", DATA / "skew3.json", "--mvsp", "bipartite")[0] == 1
    big = tmp_path / "big.json"
    big.write_text(io.dumps(io.dump_pencil(skew_pencil(F, (1, 2, 3)))))
    code, _, err = run(capsys, "solve", big, "--mvsp", "brute")
    assert code == 2 and "CapExceeded" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "solve", bad)
    assert code == 1 and "line 1" in err
