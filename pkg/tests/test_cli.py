"""Command-line contract: output lines, exit codes, export round trips.

Commands run in process through main(argv) so coverage and monkeypatching
work; stdout/stderr go through capsys.
"""

import json
import math

import numpy as np
import pytest

from mannheim import cli
from mannheim import surface_io as sio
from mannheim import theorems as th
from mannheim.theorems import TheoremReport

HELICOID_SRC = """\
# sample surface: screw motion of a spacelike line around a timelike axis
k = (0, 0, s)
q = (cosh(s), sinh(s), 0)
domain = [0, 2]
samples = 128
"""

CONE_SRC = """\
k = ({c}*s, {sh}*sin(s), -{sh}*cos(s))
q = ({c}, {sh}*cos(s), {sh}*sin(s))
domain = [0, 2]
""".format(c=repr(math.cosh(1.0)), sh=repr(math.sinh(1.0)))


@pytest.fixture
def helicoid_file(tmp_path):
    p = tmp_path / "helicoid.msrf"
    p.write_text(HELICOID_SRC)
    return str(p)


@pytest.fixture
def cone_file(tmp_path):
    p = tmp_path / "cone.msrf"
    p.write_text(CONE_SRC)
    return str(p)


def test_classify_exact_line(helicoid_file, capsys):
    assert cli.main(["classify", helicoid_file]) == 0
    out = capsys.readouterr().out
    assert out == "type=M1- eps1=+1 eps2=-1 developable=false kappa=[0,0]\n"


def test_classify_cone(cone_file, capsys):
    assert cli.main(["classify", cone_file]) == 0
    out = capsys.readouterr().out
    assert "type=M1-" in out
    assert "developable=true" in out
    coth1 = math.cosh(1.0) / math.sinh(1.0)
    assert f"kappa=[{coth1:g},{coth1:g}]" in out


def test_classify_degenerate(tmp_path, capsys):
    p = tmp_path / "cyl.msrf"
    p.write_text("k = (0, s, 0)\nq = (0, 0, 1)\ndomain = [0, 1]\n")
    assert cli.main(["classify", str(p)]) == 2
    assert "type=degenerate" in capsys.readouterr().out


def test_classify_missing_key(tmp_path, capsys):
    p = tmp_path / "bad.msrf"
    p.write_text("k = (0, 0, s)\ndomain = [0, 1]\n")
    assert cli.main(["classify", str(p)]) == 1
    assert "missing 'q =' line" in capsys.readouterr().err


def test_classify_parse_error_position(tmp_path, capsys):
    p = tmp_path / "bad.msrf"
    p.write_text("k = (0, 0, s)\nq = (cosh(s), sinh(s)\ndomain = [0, 1]\n")
    assert cli.main(["classify", str(p)]) == 1
    err = capsys.readouterr().err
    assert "line 2" in err


def test_classify_missing_file(capsys):
    assert cli.main(["classify", "/no/such/file.msrf"]) == 1
    assert "error" in capsys.readouterr().err


def test_frame_csv_stdout(helicoid_file, capsys):
    assert cli.main(["frame", helicoid_file, "--grid", "8"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "s,q1,q2,q3,h1,h2,h3,a1,a2,a3,ds1_ds,kappa,drall"
    assert len(lines) == 9
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 1.0  # q1 = cosh(0)


def test_frame_json_stdout(helicoid_file, capsys):
    assert cli.main(["frame", helicoid_file, "--grid", "4", "--out", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4
    assert set(rows[0]) == set(sio.FRAME_COLUMNS)
    assert rows[0]["drall"] == -1.0


def test_frame_csv_round_trip_bit_exact(helicoid_file, tmp_path, capsys):
    out = tmp_path / "frame.csv"
    assert cli.main(["frame", helicoid_file, "--grid", "64",
                     "--out", str(out)]) == 0
    rows = sio.read_frame_csv(str(out))
    surf = sio.load_surface(helicoid_file)
    want = sio.frame_table(surf, 64)
    assert len(rows) == 64
    for got, exp in zip(rows, want):
        for c in sio.FRAME_COLUMNS:
            # repr round trip is exact for binary doubles
            assert got[c] == exp[c] or (math.isnan(got[c]) and math.isnan(exp[c]))


def test_frame_json_round_trip_bit_exact(helicoid_file, tmp_path):
    out = tmp_path / "frame.json"
    assert cli.main(["frame", helicoid_file, "--grid", "16",
                     "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    surf = sio.load_surface(helicoid_file)
    want = sio.frame_table(surf, 16)
    for got, exp in zip(rows, want):
        for c in sio.FRAME_COLUMNS:
            assert got[c] == exp[c]


def test_frame_bad_grid_is_usage_error(helicoid_file, capsys):
    assert cli.main(["frame", helicoid_file, "--grid", "0"]) == 64
    assert "usage error" in capsys.readouterr().err


def test_frame_unknown_extension(helicoid_file, tmp_path, capsys):
    assert cli.main(["frame", helicoid_file, "--out",
                     str(tmp_path / "frame.xml")]) == 64


def test_no_command_is_usage_error(capsys):
    assert cli.main([]) == 64
    assert cli.main(["bogus"]) == 64


def test_offset_summary_and_file(cone_file, tmp_path, capsys):
    out = tmp_path / "off.csv"
    sinh1 = repr(math.sinh(1.0))
    rc = cli.main(["offset", cone_file, "--R", "1",
                   "--theta", f"3 - {sinh1}*s", "--pairing", "eq11",
                   "--out", str(out), "--grid", "32"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert "mannheim=true" in lines
    assert "type=M1+" in lines
    drall_line = [l for l in lines if l.startswith("max_drall=")][0]
    # a Mannheim angle profile on a constant-curvature base is a valid
    # offset but not a developable one; the drall is reported as is
    assert float(drall_line.split("=")[1]) > 0.1
    body = out.read_text().splitlines()
    assert body[0] == "s,c1,c2,c3,q1,q2,q3"
    assert len(body) == 33


def test_offset_solve_theta(cone_file, tmp_path, capsys):
    out = tmp_path / "off.csv"
    rc = cli.main(["offset", cone_file, "--R", "1", "--theta", "solve",
                   "--pairing", "eq11", "--out", str(out)])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    theta_line = [l for l in lines if l.startswith("theta=")][0]
    # artanh(-1/cosh(1)), computed independently
    want = math.atanh(-1.0 / math.cosh(1.0))
    assert float(theta_line.split("=")[1]) == pytest.approx(want, abs=1e-12)
    drall_line = [l for l in lines if l.startswith("max_drall=")][0]
    assert float(drall_line.split("=")[1]) <= 1e-10


def test_offset_no_real_solution(cone_file, tmp_path, capsys):
    rc = cli.main(["offset", cone_file, "--R", "0.1", "--theta", "solve",
                   "--pairing", "eq11", "--out", str(tmp_path / "x.csv")])
    assert rc == 2
    assert "no real angle" in capsys.readouterr().err


def test_offset_pairing_mismatch(cone_file, tmp_path, capsys):
    rc = cli.main(["offset", cone_file, "--R", "1", "--theta", "0.3",
                   "--pairing", "eq13", "--out", str(tmp_path / "x.csv")])
    assert rc == 2
    assert "pairing" in capsys.readouterr().err


def test_offset_bad_pairing_is_usage_error(cone_file, tmp_path):
    rc = cli.main(["offset", cone_file, "--R", "1", "--theta", "0.3",
                   "--pairing", "eq99", "--out", str(tmp_path / "x.csv")])
    assert rc == 64


def test_theorems_default_passes(tmp_path, capsys):
    report = tmp_path / "report.json"
    rc = cli.main(["theorems", "--report", str(report)])
    assert rc == 0
    doc = json.loads(report.read_text())
    assert doc["suite_version"] == th.SUITE_VERSION
    assert len(doc["cases"]) == 13
    assert all(c["verdict"] == "pass" for c in doc["cases"])
    err = capsys.readouterr().err
    assert err.count(": pass") == 13


def test_theorems_stdout_json(capsys):
    rc = cli.main(["theorems", "--filter", "thm-3.1"])
    assert rc == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert [c["id"] for c in doc["cases"]] == ["thm-3.1"]


def test_theorems_env_seed_overrides(monkeypatch, capsys):
    monkeypatch.setenv("MANNHEIM_SEED", "7")
    rc = cli.main(["theorems", "--filter", "lemma", "--seed", "3"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 7


def test_theorems_bad_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("MANNHEIM_SEED", "not-a-number")
    assert cli.main(["theorems", "--filter", "lemma"]) == 1


def test_theorems_failure_exit_code(monkeypatch, capsys):
    def fake_suite(filter=None, seed=0):
        return [TheoremReport(id="thm-3.1", verdict="fail", max_residual=1.0,
                              argmax_s=0.0)]
    monkeypatch.setattr(th, "run_suite", fake_suite)
    monkeypatch.setattr(cli.th, "run_suite", fake_suite)
    assert cli.main(["theorems"]) == 3


def test_theorems_unwritable_report(capsys):
    rc = cli.main(["theorems", "--filter", "lemma",
                   "--report", "/no/such/dir/report.json"])
    assert rc == 1


def test_reparam_uniform_arclength(cone_file, capsys):
    # the cone base curve is unit speed, so t and s coincide
    assert cli.main(["reparam", cone_file, "--grid", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,s,k1,k2,k3"
    for row in lines[1:]:
        vals = [float(v) for v in row.split(",")]
        assert vals[0] == pytest.approx(vals[1], abs=1e-9)
    assert float(lines[-1].split(",")[0]) == pytest.approx(2.0, abs=1e-9)


def test_reparam_nonuniform(tmp_path, capsys):
    p = tmp_path / "curve.msrf"
    p.write_text("k = (0, s^2, s)\nq = (0, 0, 1)\ndomain = [0, 2]\n")
    assert cli.main(["reparam", str(p), "--grid", "9"]) == 0
    lines = capsys.readouterr().out.splitlines()
    rows = [[float(v) for v in l.split(",")] for l in lines[1:]]
    t = [r[0] for r in rows]
    s = [r[1] for r in rows]
    assert t == sorted(t)
    assert s == sorted(s)
    # uniform arclength spacing means non-uniform parameter spacing here
    assert not np.allclose(np.diff(s), np.diff(s)[0])


def test_reparam_null_tangent(tmp_path, capsys):
    p = tmp_path / "null.msrf"
    p.write_text("k = (s, s, 0)\nq = (cosh(s), sinh(s), 0)\ndomain = [0, 1]\n")
    assert cli.main(["reparam", str(p)]) == 2


def test_surface_file_parser_details():
    fields = sio.parse_surface_text(HELICOID_SRC)
    assert fields["samples"] == 128
    assert fields["domain"] == (0.0, 2.0)
    with pytest.raises(ValueError, match="line 1"):
        sio.parse_surface_text("k (0,0,s)\n")
    with pytest.raises(ValueError, match="duplicate"):
        sio.parse_surface_text("k = (0,0,s)\nk = (0,0,s)\n"
                               "q = (1,0,0)\ndomain = [0,1]\n")
    with pytest.raises(ValueError, match="unknown key"):
        sio.parse_surface_text("z = (0,0,s)\n")
    with pytest.raises(ValueError, match="domain"):
        sio.parse_surface_text("k = (0,0,s)\nq = (1,0,0)\ndomain = [2, 1]\n")
    with pytest.raises(ValueError, match="samples"):
        sio.parse_surface_text("k = (0,0,s)\nq = (1,0,0)\ndomain = [0,1]\n"
                               "samples = 1\n")
