from __future__ import annotations

import json
import subprocess
import sys

import pytest

from topfullgroup.cli import KINDS, main

ARGS = {
    "glasner-weiss": ["--B", '{"level":2,"residues":[1]}', "--A", '{"level":1,"residues":[0]}'],
    "small-generators": ["--delta", "1/8"],
    "periodic-commutator": ["--element", '{"level":2,"cocycle":[1,1,1,-3]}'],
    "two-involutions": ["--element", '{"level":2,"cocycle":[1,1,1,-3]}'],
    "many-involutions": ["--A", '{"level":2,"residues":[0]}', "--n", "3"],
    "minimal-first-step": ["--delta", "1/16"],
    "commutator-expansion": ["--steps", "4"],
    "tower": ["--n", "18"],
    "eighteen-cycle": [],
    "induced-times-involutions": ["--A", '{"level":2,"residues":[0]}'],
    "finite-three-involutions": ["--level", "6"],
}


def test_every_kind_has_a_case():
    assert set(ARGS) == set(KINDS)


@pytest.mark.parametrize("kind", KINDS)
def test_decompose_then_verify(kind, tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["decompose", kind, *ARGS[kind], "--out", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    assert "checks passed" in capsys.readouterr().out


def test_decompose_to_stdout(capsys):
    assert main(["decompose", "tower", "--n", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "TowerLemma"


def test_precondition_exit_code(capsys):
    assert main(["decompose", "two-involutions", "--element", '{"level":0,"cocycle":[1]}']) == 3
    assert "NotPeriodic" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert main(["decompose", "no-such-kind"]) == 2
    assert main(["decompose", "tower", "--spec", "{bad"]) == 2
    assert main(["decompose", "glasner-weiss"]) == 2
    assert main([]) == 2


def test_other_odometer(tmp_path):
    out = tmp_path / "c.json"
    assert main(["decompose", "tower", "--n", "4", "--spec", '{"head":[3],"tail":[2]}', "--out", str(out)]) == 0
    assert json.loads(out.read_text())["odometer"] == {"head": [3], "tail": [2]}
    assert main(["verify", str(out)]) == 0


def test_verify_rejects_non_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("not json at all")
    assert main(["verify", str(bad)]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2
    bad.write_text('{"kind": "TowerLemma"}')
    assert main(["verify", str(bad)]) == 2


def _mutate(path, index, delta):
    data = json.loads(path.read_text())
    elems = [f["element"] for f in data["factors"]]
    e = elems[index % len(elems)]
    e["cocycle"][index % len(e["cocycle"])] += delta
    path.write_text(json.dumps(data))


@pytest.mark.parametrize("delta", [1, 2**6])
def test_verify_detects_mutation(tmp_path, delta):
    out = tmp_path / "c.json"
    assert main(["decompose", "commutator-expansion", "--steps", "3", "--out", str(out)]) == 0
    _mutate(out, 3, delta)
    assert main(["verify", str(out)]) == 1


def test_selftest_vacuous_and_deterministic(tmp_path):
    assert main(["selftest", "--cases", "0"]) == 0
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["selftest", "--cases", "5", "--seed", "7", "--out", str(a)]) == 0
    assert main(["selftest", "--cases", "5", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_decompose_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["decompose", "minimal-first-step", "--delta", "1/8", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_fresh_process_round_trip(tmp_path):
    out = tmp_path / "c.json"
    run = [sys.executable, "-m", "topfullgroup"]
    r = subprocess.run(run + ["decompose", "eighteen-cycle", "--out", str(out)], capture_output=True)
    assert r.returncode == 0, r.stderr
    r = subprocess.run(run + ["verify", str(out)], capture_output=True, text=True)
    assert r.returncode == 0 and "EighteenCycle" in r.stdout
