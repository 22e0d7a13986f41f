import json
import os
import subprocess
import sys

import numpy as np
import pytest

from complexforge import cli
from complexforge.exact_poly import (
    PolyTensorField as Tn, PolyVectorField as V, dumps, field_from_dict, loads,
)
from complexforge.fa_toolbox import write_matrix
from complexforge.grid_complex import VoxelDomain, solid_cube, tunnel_cube

X = V.position()
I = Tn.identity()


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def field_file(tmp_path, f, name="f.json"):
    p = tmp_path / name
    p.write_text(dumps(f))
    return str(p)


def test_verify_identities(capsys):
    code, rep = run(capsys, "verify", "identities", "--degree", "3", "--trials", "5",
                    "--seed", "7", "--no-timestamp")
    assert code == 0 and rep["status"] == "pass"
    assert len(rep["checks"]) == 13
    assert all(c["trials"] == 5 and c["exact_zero"] for c in rep["checks"])
    assert "timestamp" not in rep


def test_verify_degree_zero(capsys):
    code, rep = run(capsys, "verify", "identities", "--degree", "0", "--trials", "3")
    assert code == 0 and "timestamp" in rep


@pytest.mark.parametrize("suite", ["complex", "potentials"])
def test_verify_other_suites(capsys, suite):
    code, rep = run(capsys, "verify", suite, "--degree", "3", "--trials", "4")
    assert code == 0 and rep["suite"] == suite


def test_failed_check_exit_two(capsys, monkeypatch):
    monkeypatch.setattr(cli, "residual_is_zero", lambda res: False)
    code, rep = run(capsys, "verify", "identities", "--degree", "1", "--trials", "1")
    assert code == 2 and rep["status"] == "fail"


def test_corrupted_json_exit_one(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "tensor", "entries": [')
    code, rep = run(capsys, "potential", "--op", "rotrot", "--in", str(p))
    assert code == 1 and rep is None
    code, _ = run(capsys, "verify", "identities", "--in", str(p))
    assert code == 1


def test_missing_file_exit_one(tmp_path, capsys):
    code, _ = run(capsys, "grid", "--in", str(tmp_path / "missing.txt"))
    assert code == 1


def test_potential_rotrot_landmark(tmp_path, capsys):
    code, rep = run(capsys, "potential", "--op", "rotrot", "--in", field_file(tmp_path, I),
                    "--no-timestamp")
    assert code == 0
    assert field_from_dict(rep["output"]) == (X.dot(X) * I - X.outer(X)) / 6


def test_potential_div_zero(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, rep = run(capsys, "potential", "--op", "div", "--in", field_file(tmp_path, V.zero()),
                    "--out", str(out))
    assert code == 0 and loads(out.read_text()).is_zero()


def test_potential_symgrad_precondition(tmp_path, capsys):
    code, rep = run(capsys, "potential", "--op", "symgrad", "--in", field_file(tmp_path, I * X[0] * X[0]))
    assert code == 3 and rep["status"] == "fail"
    assert "residual" in rep


def test_potential_wrong_kind(tmp_path, capsys):
    code, _ = run(capsys, "potential", "--op", "div", "--in", field_file(tmp_path, I))
    assert code == 3


def test_decompose(tmp_path, capsys):
    code, rep = run(capsys, "decompose", "--op", "div", "--in", field_file(tmp_path, X[0] * I))
    assert code == 0 and rep["decomposition"]["residual_zero"]
    code, _ = run(capsys, "decompose", "--op", "rotrot",
                  "--in", field_file(tmp_path, V.unit(0).outer(V.unit(1))))
    assert code == 3


def test_grid_tunnel(tmp_path, capsys):
    p = tmp_path / "t.txt"
    p.write_text(tunnel_cube().to_text())
    code, rep = run(capsys, "grid", "--in", str(p))
    topo = rep["grid"]["topology"]
    assert code == 0 and topo["neumann_dim"] == 1 and topo["elasticity_neumann_dim"] == 6


def test_grid_solid(tmp_path, capsys):
    p = tmp_path / "s.txt"
    p.write_text(solid_cube().to_text())
    code, rep = run(capsys, "grid", "--in", str(p), "--bc", "dirichlet")
    assert code == 0 and rep["grid"]["topology"]["topologically_trivial"] is True
    assert rep["grid"]["topology"]["dirichlet_dim"] == rep["grid"]["topology"]["neumann_dim"] == 0


def test_grid_empty_occupancy(tmp_path, capsys):
    p = tmp_path / "e.txt"
    p.write_text("1 1 1\n0\n")
    assert run(capsys, "grid", "--in", str(p))[0] == 1


def test_helmholtz_matrices(tmp_path, capsys):
    write_matrix(tmp_path / "a0.mtx", np.array([[1.0], [0.0]]))
    write_matrix(tmp_path / "a1.mtx", np.array([[0.0, 1.0]]))
    code, rep = run(capsys, "helmholtz", "--a0", str(tmp_path / "a0.mtx"),
                    "--a1", str(tmp_path / "a1.mtx"), "--trials", "10")
    assert code == 0 and rep["pairs"]["pair"]["harmonic_dim"] == 0


def test_helmholtz_non_complex(tmp_path, capsys):
    write_matrix(tmp_path / "a0.mtx", np.array([[1.0], [0.0]]))
    write_matrix(tmp_path / "a1.mtx", np.array([[1.0, 0.0]]))
    code, _ = run(capsys, "helmholtz", "--a0", str(tmp_path / "a0.mtx"), "--a1", str(tmp_path / "a1.mtx"))
    assert code == 1


def test_thread_count_does_not_change_report(capsys, monkeypatch):
    argv = ["verify", "potentials", "--degree", "2", "--trials", "6", "--seed", "3", "--no-timestamp"]
    cli.main(argv)
    single = capsys.readouterr().out
    monkeypatch.setenv("COMPLEXFORGE_THREADS", "3")
    cli.main(argv)
    assert capsys.readouterr().out == single


def test_console_script_stdout_is_json(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text(VoxelDomain(2, 1, 1).to_text())
    proc = subprocess.run([sys.executable, "-m", "complexforge", "grid", "--in", str(p), "--no-timestamp"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    json.loads(proc.stdout)
