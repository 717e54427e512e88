import csv
import io
import json
import math

import numpy as np
import pytest

from golden import ex4_state
from symstars import cli, entanglement
from symstars.stateio import state_from_dict, write_state
from symstars.sympower import SymState


def run(argv):
    buf = io.StringIO()
    code = cli.main(argv, out=buf)
    return code, buf.getvalue()


@pytest.fixture
def ex4_file(tmp_path):
    p = tmp_path / "ex4.json"
    write_state(ex4_state(), str(p))
    return str(p)


@pytest.fixture
def ghz_file(tmp_path):
    p = tmp_path / "ghz.json"
    write_state(SymState(1, 2, np.array([1, 0, 0, 0, 0, 1]) / math.sqrt(2)), str(p))
    return str(p)


def test_decompose_text_and_json():
    code, out = run(["decompose", "--spin", "1", "--parties", "3"])
    assert code == 0
    assert "3\t1" in out and "1\t1" in out and "agree" in out
    code, out = run(["decompose", "--spin", "3/2", "--parties", "6", "--json"])
    d = json.loads(out)
    assert d["spin2"] == 3 and d["methods_agree"] and [6, 2] in d["multiplicities"]
    code, out = run(["decompose", "--spin", "1.5", "--parties", "6", "--json"])
    assert json.loads(out)["spin2"] == 3


def test_decompose_spin_zero():
    code, out = run(["decompose", "--spin", "0", "--parties", "2", "--json"])
    assert code == 0 and json.loads(out)["multiplicities"] == [[0, 1]]


def test_input_errors_exit_two(capsys, tmp_path):
    assert run(["decompose", "--spin", "1/3", "--parties", "2"])[0] == 2
    assert run(["decompose", "--spin", "1", "--parties", "-1"])[0] == 2
    assert run(["bogus"])[0] == 2
    assert run(["decompose", "--spin", "1", "--parties", "2", "--frobnicate"])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"spin2": 2, "parties": 2, "amplitudes": [[1, 0]] * 5}))
    capsys.readouterr()
    assert run(["stars", "--state", str(bad)])[0] == 2
    assert "amplitudes" in capsys.readouterr().err
    assert run(["rotosensor", "--state", str(bad), "--mode", "axis"])[0] == 2
    assert run(["stars", "--state", str(tmp_path / "none.json")])[0] == 2


def test_blockdiag():
    code, out = run(["blockdiag", "--spin", "1", "--parties", "2"])
    d = json.loads(out)
    U = np.array(d["U"])[..., 0] + 1j * np.array(d["U"])[..., 1]
    assert code == 0 and U.shape == (6, 6) and np.allclose(U @ U.conj().T, np.eye(6))
    assert d["layout"][0][0] == 4
    d = json.loads(run(["blockdiag", "--spin", "3/2", "--parties", "2", "--antisym"])[1])
    assert d["kind"] == "antisym" and len(d["U"]) == 6


def test_stars_canonical(ex4_file):
    code, out = run(["stars", "--state", ex4_file, "--canonical"])
    assert code == 0
    d = json.loads(out)
    z = [complex(*b["z"]) for b in d["blocks"]]
    assert abs(z[0] - math.sqrt(2 / 3) * np.exp(-3j * math.pi / 4)) < 1e-8
    assert abs(z[1] - np.exp(3j * math.pi / 4) / math.sqrt(3)) < 1e-8
    code, out = run(["stars", "--state", ex4_file])
    d = json.loads(out)
    assert "spectator" not in d and [len(b["stars"]) for b in d["blocks"]] == [6, 2]


def test_stars_csv(ex4_file):
    code, out = run(["stars", "--state", ex4_file, "--canonical", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kind", "j2", "alpha", "x", "y", "z"]
    kinds = [r[0] for r in rows[1:]]
    assert kinds.count("block") == 8 and kinds.count("spectator") == 1


def test_hermite_and_murnaghan(ex4_file):
    code, out = run(["hermite", "--state", ex4_file])
    st_ = state_from_dict(json.loads(out))
    assert code == 0 and (st_.s2, st_.k) == (3, 2)
    code, out = run(["murnaghan", "--state", ex4_file])
    s2, k, w = state_from_dict(json.loads(out))
    assert (s2, k, w.size) == (4, 3, 10) and abs(np.linalg.norm(w) - 1) < 1e-12


def test_entangle(ghz_file):
    code, out = run(["entangle", "--state", ghz_file, "--restarts", "8"])
    d = json.loads(out)
    assert code == 0 and abs(d["E_tilde"] - 0.5) < 1e-9 and d["path"] == "gram"
    assert len(d["gram_spectrum"]) == 2


def test_entangle_nonconvergence_exit_three(ghz_file, monkeypatch):
    real = entanglement.geometric_entanglement

    def stalled(*args, **kw):
        res = real(*args, **kw)
        res.converged = False
        return res

    monkeypatch.setattr(entanglement, "geometric_entanglement", stalled)
    code, out = run(["entangle", "--state", ghz_file, "--restarts", "2"])
    assert code == 3 and "E_tilde" in json.loads(out)


def test_scan_csv(tmp_path):
    p = tmp_path / "scan.csv"
    code, out = run(["scan", "--spin", "1/2", "--parties", "3", "--samples", "50", "--seed", "4",
                     "--out", str(p)])
    assert code == 0
    rows = list(csv.reader(open(p)))
    assert rows[0] == ["sample_index", "lambda_1", "E_tilde", "measure", "seed"]
    assert len(rows) == 51 and rows[1][0] == "0" and rows[1][3:] == ["haar", "4"]
    # deterministic given the seed
    again = run(["scan", "--spin", "0.5", "--parties", "3", "--samples", "50", "--seed", "4"])[1]
    assert list(csv.reader(io.StringIO(again))) == rows


def test_rotosensor_modes(ghz_file):
    d = json.loads(run(["rotosensor", "--state", ghz_file, "--mode", "axis"])[1])
    assert abs(d["variance"] - 4) < 1e-12 and abs(d["variance_block"] - 4) < 1e-12
    d = json.loads(run(["rotosensor", "--state", ghz_file, "--mode", "averaged"])[1])
    assert abs(d["I"] - d["I_block"]) < 1e-12
    code, out = run(["rotosensor", "--state", ghz_file, "--mode", "fidelity", "--eta", "0.3",
                     "--axis", "0,0,1"])
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and abs(float(rows[1][1]) - math.cos(0.6) ** 2) < 1e-12
    rows = list(csv.reader(io.StringIO(run(["rotosensor", "--state", ghz_file, "--mode", "fidelity",
                                            "--eta", "0.5,1.0"])[1])))
    for r in rows[1:]:
        assert abs(float(r[1]) - float(r[2])) < 1e-8
    assert run(["rotosensor", "--state", ghz_file, "--mode", "axis", "--axis", "0,0"])[0] == 2
